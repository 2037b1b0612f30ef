"""Coin-accounting bag construction for unit jobs, plus its analysis toolkit.

A bag's cost is the number of coins paid for it, the pigeonhole guarantee
ceil(coins / machines); its size is floor(cost * rho).  The module carries the
whole apparatus built around that scheme: the cost-indexed and fractional
solution generators, the transformation factor that prices rounding a
fractional solution to an integral one, the normalized surplus with its
piecewise-linear breakpoint structure, and the dispatcher that switches to
the pebbles packing once jobs per machine exceed 60.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .model import BagProfile, FractionalSolution, Infeasible, Instance
from .numerics import ceil_div, floor_scale, format_rational
from .pebbles import pebbles_bags
from .sand import sand_robustness

BRICK_ROBUSTNESS = Fraction(8, 5)

PEBBLES_CUTOVER = 60  # jobs-per-machine ratio above which the dispatcher switches


@dataclass(frozen=True)
class BrickSolution:
    """Bags produced by the coin-accounting construction for ``jobs`` unit jobs.

    ``successful`` means the sizes total at least ``jobs``, i.e. every job
    fits after trimming.
    """

    bag_sizes: tuple[int, ...]
    bag_costs: tuple[int, ...]
    total_size: int
    successful: bool
    jobs: int
    rho: Fraction


@dataclass(frozen=True)
class SurplusPoint:
    """A vertex of the piecewise-linear normalized surplus function.

    ``dropped_cost`` names the bag cost whose count reaches zero at this
    point; it is None at the integer vertices, where instead the largest bag
    cost steps up.
    """

    lam: Fraction
    surplus: Fraction
    dropped_cost: int | None = None


def bricks_bags(jobs: int, machines: int, bags: int, rho: Fraction) -> BrickSolution:
    """Build ``bags`` bags for ``jobs`` unit jobs by iterated coin payment.

    Each round pays cost z = ceil(remaining / machines) for a bag of size
    floor(z * rho).  Once the coins run out, the remaining bags are emitted
    with cost 0 and size 0 so the profile keeps its full length.
    """
    if min(jobs, machines, bags) < 1:
        raise ValueError("jobs, machines and bags must all be >= 1")
    rho = Fraction(rho)
    if rho < 1:
        raise ValueError(f"rho must be >= 1, got {rho}")
    coins = jobs
    sizes: list[int] = []
    costs: list[int] = []
    for _ in range(bags):
        z = ceil_div(coins, machines) if coins > 0 else 0
        sizes.append(floor_scale(z, rho) if z > 0 else 0)
        costs.append(z)
        coins -= z
    total = sum(sizes)
    return BrickSolution(tuple(sizes), tuple(costs), total, total >= jobs, jobs, rho)


def trim_to_total(solution: BrickSolution, total: int) -> BrickSolution:
    """Shrink a successful solution so the sizes sum to exactly ``total``.

    Trailing small bags are removed first, then the last non-empty bag is
    shrunk by the remainder; no size ever increases, so the second-stage
    guarantees are preserved.  Costs are re-derived from the new sizes.
    """
    if solution.total_size < total:
        raise Infeasible(f"cannot trim total {solution.total_size} up to {total}")
    sizes = list(solution.bag_sizes)
    excess = solution.total_size - total
    for i in range(len(sizes) - 1, -1, -1):
        if excess == 0:
            break
        cut = min(sizes[i], excess)
        sizes[i] -= cut
        excess -= cut
    rho = solution.rho
    costs = tuple(ceil_div(a * rho.denominator, rho.numerator) for a in sizes)
    return BrickSolution(tuple(sizes), costs, total, total >= solution.jobs, solution.jobs, rho)


def bricks_by_cost(jobs: int, machines: int, bags: int) -> FractionalSolution:
    """Integral bag counts per cost: the coin construction, cost-batched.

    Produces exactly the cost multiset of :func:`bricks_bags` but in one step
    per distinct cost, which is what the verification sweeps iterate.
    """
    if min(jobs, machines, bags) < 1:
        raise ValueError("jobs, machines and bags must all be >= 1")
    remaining_bags = bags
    coins = jobs
    counts: dict[int, Fraction] = {}
    while remaining_bags > 0 and coins > 0:
        z = ceil_div(coins, machines)
        x = min(remaining_bags, ceil_div(coins - machines * (z - 1), z))
        remaining_bags -= x
        coins -= x * z
        counts[z] = Fraction(x)
    return FractionalSolution(counts, bags)


def bricks_fractional(jobs: Fraction, machines: Fraction, bags: Fraction) -> FractionalSolution:
    """Fractional bag counts per cost; inputs may themselves be non-integral.

    Identical to :func:`bricks_by_cost` except the count per cost is not
    rounded up, so every cost strictly between the extremes is used exactly
    machines / cost times and the whole solution scales linearly when jobs,
    machines and bags are scaled together.
    """
    jobs, machines, bags = Fraction(jobs), Fraction(machines), Fraction(bags)
    if jobs <= 0 or machines <= 0 or bags <= 0:
        raise ValueError("jobs, machines and bags must all be positive")
    remaining_bags = bags
    coins = jobs
    counts: dict[int, Fraction] = {}
    while remaining_bags > 0 and coins > 0:
        z = ceil(coins / machines)
        x = min(remaining_bags, (coins - machines * (z - 1)) / z)
        remaining_bags -= x
        coins -= x * z
        counts[z] = x
    return FractionalSolution(counts, bags)


def solution_size(solution: FractionalSolution, rho: Fraction) -> Fraction:
    """Total bag size of a cost-indexed solution: sum of count * floor(cost * rho)."""
    rho = Fraction(rho)
    return sum(
        (x * floor_scale(z, rho) for z, x in solution.counts.items()),
        Fraction(0),
    )


def transformation_factor(cost: int, rho: Fraction) -> Fraction:
    """Size change per unit of count moved when rounding cost ``cost`` up.

    Rounding the count at this cost up (paid for by shaving cost-1 bags below
    it and topping up with cost-1-coin bags) changes the solution size by
    this factor times the amount rounded.  Negative values are the ones that
    can shrink a solution.
    """
    if cost < 2:
        raise ValueError(f"cost must be >= 2, got {cost}")
    rho = Fraction(rho)
    return (
        floor_scale(cost, rho)
        - Fraction(cost, cost - 1) * floor_scale(cost - 1, rho)
        + Fraction(1, cost - 1) * floor_scale(1, rho)
    )


def negative_factor_sum(max_cost: int, rho: Fraction) -> Fraction:
    """Sum of the negative transformation factors for costs 2..max_cost.

    Bounds from below the total size lost when rounding a fractional solution
    integral, since each cost is rounded at most once by less than one bag.
    """
    if max_cost < 2:
        raise ValueError(f"max_cost must be >= 2, got {max_cost}")
    total = Fraction(0)
    for z in range(2, max_cost + 1):
        f = transformation_factor(z, rho)
        if f < 0:
            total += f
    return total


def normalized_surplus(lam: Fraction) -> Fraction:
    """Fractional-solution size beyond the job count, per machine.

    Because the fractional construction scales, this depends only on the
    jobs-per-machine ratio; it is evaluated at one machine and one bag.
    """
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError(f"lam must be positive, got {lam}")
    solution = bricks_fractional(lam, Fraction(1), Fraction(1))
    return solution_size(solution, BRICK_ROBUSTNESS) - lam


def surplus_breakpoints(lambda_max: Fraction) -> list[SurplusPoint]:
    """All vertices of the normalized surplus on [1, lambda_max], in order.

    The surplus is piecewise linear.  Vertices sit at the integers (where the
    largest bag cost steps up) and at the points where the count of the
    smallest bag cost reaches zero; the latter are found by linear
    extrapolation of that count, which between integers falls at rate one
    over the next integer.
    """
    lambda_max = Fraction(lambda_max)
    if lambda_max < 1:
        raise ValueError(f"lambda_max must be >= 1, got {lambda_max}")
    lam = Fraction(1)
    points = [SurplusPoint(lam, normalized_surplus(lam))]
    while lam < lambda_max:
        next_integer = lam.numerator // lam.denominator + 1
        solution = bricks_fractional(lam, Fraction(1), Fraction(1))
        lowest = solution.min_cost()
        drop_at = lam + solution.counts[lowest] * next_integer
        if drop_at < next_integer:
            lam, dropped = drop_at, lowest
        else:
            lam, dropped = Fraction(next_integer), None
        if lam > lambda_max:
            break
        points.append(SurplusPoint(lam, normalized_surplus(lam), dropped))
    return points


def robust_bags(jobs: int, machines: int, bags: int) -> BagProfile:
    """Bag profile for unit jobs with makespan at most 1.6 times optimal.

    Up to 60 jobs per machine this is the coin construction at factor 8/5,
    trimmed so the sizes sum to the job count.  Beyond that the greedy small-
    jobs packing runs at the divisible-load optimum plus machines/jobs, which
    is below 8/5 there.
    """
    if min(jobs, machines, bags) < 1:
        raise ValueError("jobs, machines and bags must all be >= 1")
    if Fraction(jobs, machines) <= PEBBLES_CUTOVER:
        solution = bricks_bags(jobs, machines, bags, BRICK_ROBUSTNESS)
        if solution.successful:
            return BagProfile(trim_to_total(solution, jobs).bag_sizes)
    instance = Instance([Fraction(1)] * jobs, machines, bags)
    rho = sand_robustness(machines, bags) + Fraction(machines, jobs)
    result = pebbles_bags(instance, rho)
    if not result.packed_all:
        raise Infeasible(
            f"no construction packed jobs={jobs} machines={machines} bags={bags}"
        )
    return BagProfile(result.bag_sizes)


# -- table emission ------------------------------------------------------------

def decimal_string(value: Fraction, places: int) -> str:
    """Round-half-up decimal rendering of an exact rational, without floats."""
    value = Fraction(value)
    sign = "-" if value < 0 else ""
    scaled = abs(value) * 10**places
    units = (scaled.numerator + scaled.denominator // 2) // scaled.denominator
    digits = str(units).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}" if places else f"{sign}{digits}"


def factor_table(max_cost: int, rho: Fraction) -> list[dict]:
    """Transformation factor rows (cost, exact fraction, 5-place decimal)."""
    rows = []
    for z in range(2, max_cost + 1):
        f = transformation_factor(z, rho)
        rows.append({"z": z, "exact": format_rational(f), "decimal": decimal_string(f, 5)})
    return rows


def surplus_integer_table(lambda_max: int) -> list[dict]:
    """Normalized surplus rows at integer jobs-per-machine ratios, 3 decimals."""
    rows = []
    for lam in range(1, lambda_max + 1):
        s = normalized_surplus(Fraction(lam))
        rows.append({"lambda": lam, "exact": format_rational(s), "decimal": decimal_string(s, 3)})
    return rows


def surplus_breakpoint_table(lambda_max: Fraction) -> list[dict]:
    """Rows for the breakpoints where a bag cost stops being used."""
    rows = []
    for point in surplus_breakpoints(lambda_max):
        if point.dropped_cost is None:
            continue
        rows.append({
            "bag_cost": point.dropped_cost,
            "lambda_exact": format_rational(point.lam),
            "lambda": decimal_string(point.lam, 3),
            "surplus_exact": format_rational(point.surplus),
            "surplus": decimal_string(point.surplus, 3),
        })
    return rows
