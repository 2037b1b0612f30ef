"""Second-stage assigners plus an exact optimal-assignment oracle.

Two greedy assigners mirror the two accounting schemes used by the bag
builders: capacity-based (speed times the target factor) and coin-based
(integral speed reserves).  The oracle finds the true optimal makespan by
exhaustive search with symmetry and bound pruning; it is deliberately capped
at desk scale because verification needs ground truth, not throughput.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .model import Assignment, BagProfile, Infeasible, SizeLimit, SpeedProfile
from .numerics import ceil_div

MAX_ORACLE_BAGS = 16
MAX_ORACLE_MACHINES = 8


def _first_positive(speeds: Sequence[Fraction | int]) -> int:
    for i, s in enumerate(speeds):
        if s > 0:
            return i
    raise Infeasible("all machine speeds are zero")


def greedy_assignment(
    bags: BagProfile,
    speeds: SpeedProfile,
    rho: Fraction,
    trace: list | None = None,
) -> Assignment | None:
    """Assign bags largest-first to the machine with most remaining capacity.

    Capacities start at ``rho`` times each speed.  Returns None as soon as a
    positive-size bag does not fit on the best machine, which signals that
    ``rho`` is too small for this profile pair.  On success every capacity
    stays non-negative, so the makespan is at most ``rho``.
    """
    rho = Fraction(rho)
    caps = [rho * s for s in speeds.speeds]
    owners = [0] * len(bags.sizes)
    resting = _first_positive(speeds.speeds)
    for k, size in enumerate(bags.sizes):
        if size == 0:
            owners[k] = resting
            if trace is not None:
                trace.append({"bag": k, "size": size, "machine": resting,
                              "before": caps[resting], "after": caps[resting]})
            continue
        i = max(range(len(caps)), key=caps.__getitem__)
        if trace is not None:
            trace.append({"bag": k, "size": size, "machine": i,
                          "before": caps[i], "after": caps[i] - size})
        if caps[i] < size:
            return None
        caps[i] -= size
        owners[k] = i
    return Assignment(owners)


def integral_assignment(
    bag_sizes: Sequence[int],
    speeds: Sequence[int],
    rho: Fraction,
    trace: list | None = None,
) -> Assignment | None:
    """Assign integer bags largest-first, paying whole coins out of integral speeds.

    Machine i starts with ``speeds[i]`` coins; a bag of size a costs
    ceil(a / rho) coins and goes to the machine holding the most.  Coins stay
    integral throughout.  Returns None if the richest machine cannot pay,
    which never happens when the bags came from a successful coin-accounting
    build against speeds of that total.
    """
    rho = Fraction(rho)
    sizes = [int(a) for a in bag_sizes]
    if any(sizes[i] < sizes[i + 1] for i in range(len(sizes) - 1)):
        raise ValueError("bag sizes must be non-increasing")
    coins = [int(s) for s in speeds]
    if any(c < 0 for c in coins):
        raise ValueError("speeds must be non-negative integers")
    owners = [0] * len(sizes)
    resting = _first_positive(coins)
    for k, size in enumerate(sizes):
        if size == 0:
            owners[k] = resting
            if trace is not None:
                trace.append({"bag": k, "size": size, "machine": resting,
                              "before": coins[resting], "after": coins[resting]})
            continue
        pay = ceil_div(size * rho.denominator, rho.numerator)
        i = max(range(len(coins)), key=coins.__getitem__)
        if trace is not None:
            trace.append({"bag": k, "size": size, "machine": i,
                          "before": coins[i], "after": coins[i] - pay})
        if coins[i] < pay:
            return None
        coins[i] -= pay
        owners[k] = i
    return Assignment(owners)


def _to_common_ints(values: Sequence[Fraction]) -> list[int]:
    denom = 1
    for v in values:
        denom = lcm(denom, v.denominator)
    return [int(v * denom) for v in values]


def _search_min_makespan(sizes: list[int], speeds: list[int]) -> tuple[Fraction, list[int]]:
    """Exact min makespan of integer sizes over positive integer speeds.

    Depth-first over sizes in the given (non-increasing) order.  Machines in
    the same residual state (load, speed) are interchangeable, so only one of
    them is branched on per step; branches whose partial makespan already
    matches the incumbent are cut.
    """
    m = len(speeds)
    total = sum(sizes)

    # Warm start: each item to the machine minimizing the resulting ratio.
    loads = [0] * m
    warm = [0] * len(sizes)
    for k, a in enumerate(sizes):
        i = min(range(m), key=lambda j: Fraction(loads[j] + a, speeds[j]))
        loads[i] += a
        warm[k] = i
    start = max(Fraction(loads[j], speeds[j]) for j in range(m))

    best_value = start
    best_owner = list(warm)
    floor_value = Fraction(total, sum(speeds))

    loads = [0] * m
    owner = [0] * len(sizes)

    def dfs(k: int, current: Fraction) -> None:
        nonlocal best_value, best_owner
        if best_value == floor_value:
            return
        if k == len(sizes):
            best_value = current
            best_owner = owner[:]
            return
        a = sizes[k]
        candidates = []
        seen = set()
        for j in range(m):
            key = (loads[j], speeds[j])
            if key in seen:
                continue
            seen.add(key)
            ratio = Fraction(loads[j] + a, speeds[j])
            if ratio >= best_value:
                continue
            candidates.append((ratio, j))
        candidates.sort()
        for ratio, j in candidates:
            if ratio >= best_value:
                continue
            loads[j] += a
            owner[k] = j
            dfs(k + 1, max(current, ratio))
            loads[j] -= a
    dfs(0, Fraction(0))
    return best_value, best_owner


def optimal_second_stage(bags: BagProfile, speeds: SpeedProfile) -> tuple[Fraction, Assignment]:
    """Exact minimum makespan over all assignments, with one optimal witness.

    Desk-scale only (at most 16 bags, 8 machines); raises SizeLimit beyond
    that rather than degrading to an approximation.
    """
    if len(bags.sizes) > MAX_ORACLE_BAGS or len(speeds.speeds) > MAX_ORACLE_MACHINES:
        raise SizeLimit(
            f"oracle accepts at most {MAX_ORACLE_BAGS} bags and {MAX_ORACLE_MACHINES} machines"
        )
    resting = _first_positive(speeds.speeds)
    positive = [(i, s) for i, s in enumerate(speeds.speeds) if s > 0]
    active = [a for a in bags.sizes if a > 0]
    owners = [resting] * len(bags.sizes)
    if not active:
        return Fraction(0), Assignment(owners)

    scaled = _to_common_ints(list(active) + [s for _, s in positive])
    int_sizes, int_speeds = scaled[: len(active)], scaled[len(active):]
    value, owner_local = _search_min_makespan(int_sizes, int_speeds)
    for k, j in enumerate(owner_local):
        owners[k] = positive[j][0]
    return value, Assignment(owners)


def optimal_direct(jobs: Sequence[Fraction | int], speeds: SpeedProfile) -> Fraction:
    """Exact optimal makespan when jobs may be placed individually (no bags)."""
    value, _ = optimal_second_stage(BagProfile(jobs), speeds)
    return value
