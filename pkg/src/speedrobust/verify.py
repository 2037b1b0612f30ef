"""Normalization, adversary enumeration, and exhaustive verification sweeps.

Campaigns return a :class:`VerificationReport` rather than raising: failures
are data.  A report with an empty failure list is the finite certificate that
the swept claim holds on the stated grid.  All sweeps are deterministic for
fixed inputs (including seeds); grid cells are independent, so the big range
sweep can optionally fan out over processes.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .bricks import BRICK_ROBUSTNESS, robust_bags
from .model import BagProfile, Infeasible, SpeedProfile
from .numerics import format_rational
from .sand import adversary_configs, sand_bags, sand_robustness
from .second_stage import greedy_assignment, integral_assignment, optimal_second_stage

RANDOM_SPEED_GRAIN = 1000  # raw integer speeds are drawn from [0, this]


@dataclass
class VerificationReport:
    """Outcome of one verification campaign over a parameter grid."""

    grid: dict
    checked: int
    failures: list[dict]
    elapsed_ms: int

    @property
    def ok(self) -> bool:
        return not self.failures

    def payload(self, include_elapsed: bool = True) -> dict:
        """JSON-ready form; elapsed is wall-clock and excluded from determinism checks."""
        out = {"grid": self.grid, "checked": self.checked, "failures": self.failures}
        if include_elapsed:
            out["elapsed_ms"] = self.elapsed_ms
        return out


def normalize_speeds(jobs: Sequence[Fraction | int], speeds: SpeedProfile) -> SpeedProfile:
    """Rescale speeds so the clairvoyant optimum is 1 with no idle capacity.

    Each machine's new speed is its load in an optimal direct schedule of the
    jobs, so every machine with positive speed finishes exactly at time 1 and
    the speeds sum to the total job size.
    """
    jobs = [Fraction(p) for p in jobs]
    if sum(jobs) <= 0:
        raise Infeasible("cannot normalize an instance with zero total load")
    _, witness = optimal_second_stage(BagProfile(jobs), speeds)
    ordered = sorted(jobs, reverse=True)  # BagProfile order, matching the witness
    loads = [Fraction(0)] * len(speeds.speeds)
    for job, machine in zip(ordered, witness.machine_of_bag):
        loads[machine] += job
    return SpeedProfile(loads)


def _partitions(total: int, parts_left: int, cap: int) -> Iterator[tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    if parts_left == 0:
        return
    for first in range(min(cap, total), 0, -1):
        for rest in _partitions(total - first, parts_left - 1, first):
            yield (first, *rest)


def enumerate_integral_speed_profiles(total: int, machines: int) -> Iterator[SpeedProfile]:
    """All non-increasing integer speed vectors of the given length and total.

    These are the partitions of ``total`` into at most ``machines`` parts,
    zero-padded; each is emitted exactly once, largest first part first.
    """
    if total < 1 or machines < 1:
        raise ValueError("total and machines must both be >= 1")
    for parts in _partitions(total, machines, total):
        yield SpeedProfile(parts + (0,) * (machines - len(parts)))


@lru_cache(maxsize=None)
def _partition_count(total: int, parts_left: int, cap: int) -> int:
    if total == 0:
        return 1
    if parts_left == 0:
        return 0
    return sum(
        _partition_count(total - first, parts_left - 1, first)
        for first in range(min(cap, total), 0, -1)
    )


def partition_count(total: int, max_parts: int) -> int:
    """Number of partitions of ``total`` into at most ``max_parts`` parts."""
    return _partition_count(total, max_parts, total)


def _sample_partition(total: int, max_parts: int, rng: random.Random) -> tuple[int, ...]:
    parts: list[int] = []
    cap = total
    parts_left = max_parts
    while total > 0:
        pick = rng.randrange(_partition_count(total, parts_left, cap))
        for first in range(min(cap, total), 0, -1):
            ways = _partition_count(total - first, parts_left - 1, first)
            if pick < ways:
                parts.append(first)
                total -= first
                cap = first
                parts_left -= 1
                break
            pick -= ways
    return tuple(parts)


def robustness_ratio(
    bags: BagProfile, jobs: Sequence[Fraction | int], speeds: SpeedProfile
) -> Fraction:
    """Optimal bagged makespan over optimal direct makespan, both exact."""
    bagged, _ = optimal_second_stage(bags, speeds)
    direct, _ = optimal_second_stage(BagProfile(jobs), speeds)
    if direct == 0:
        raise ZeroDivisionError("optimal direct makespan is zero; ratio undefined")
    return bagged / direct


# -- campaign: coin construction reaches total size n --------------------------

def _coin_solution_size(jobs: int, machines: int, rho_num: int, rho_den: int) -> int:
    """Total size of the cost-batched coin construction, in plain integers.

    Equals solution_size(bricks_by_cost(jobs, machines, machines), rho); the
    sweep below runs this several hundred thousand times, so it avoids
    Fraction churn in the inner loop.  The agreement with the library route
    is pinned by tests.
    """
    coins = jobs
    bags_left = machines
    size = 0
    while bags_left > 0 and coins > 0:
        z = -(-coins // machines)
        x = -(-(coins - machines * (z - 1)) // z)
        if x > bags_left:
            x = bags_left
        coins -= x * z
        bags_left -= x
        size += x * ((z * rho_num) // rho_den)
    return size


def _success_range_chunk(args: tuple) -> tuple[int, list[dict]]:
    machine_values, lambda_max, rho_num, rho_den = args
    checked = 0
    failures: list[dict] = []
    for m in machine_values:
        for n in range(1, lambda_max * m + 1):
            size = _coin_solution_size(n, m, rho_num, rho_den)
            checked += 1
            if size < n:
                failures.append({"n": n, "m": m, "reason": f"total size {size} < {n}"})
    return checked, failures


def verify_bricks_success_range(
    m_max: int,
    lambda_max: int,
    rho: Fraction = BRICK_ROBUSTNESS,
    workers: int | None = None,
) -> VerificationReport:
    """Check the coin construction reaches total size n on the whole grid.

    Sweeps every machine count up to ``m_max`` and every job count up to
    ``lambda_max`` times it, with bag count equal to machine count, using the
    cost-batched generator.  Any instance whose bag sizes total below n is a
    failure record.
    """
    start = time.perf_counter()
    rho = Fraction(rho)
    machine_values = list(range(1, m_max + 1))
    if workers is not None and workers > 1:
        chunks = [machine_values[i::workers] for i in range(workers)]
        args = [(chunk, lambda_max, rho.numerator, rho.denominator) for chunk in chunks if chunk]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_success_range_chunk, args))
        checked = sum(c for c, _ in results)
        failures = [f for _, fs in results for f in fs]
    else:
        checked, failures = _success_range_chunk(
            (machine_values, lambda_max, rho.numerator, rho.denominator)
        )
    failures.sort(key=lambda f: (f["m"], f["n"]))
    elapsed = int((time.perf_counter() - start) * 1000)
    grid = {
        "campaign": "bricks-success-range",
        "m_max": m_max,
        "lambda_max": lambda_max,
        "rho": format_rational(rho),
    }
    return VerificationReport(grid, checked, failures, elapsed)


# -- campaign: end-to-end robustness of the dispatcher bags --------------------

def verify_bricks_robustness(
    jobs: int,
    machines: int,
    samples: int = 1000,
    seed: int = 0,
) -> VerificationReport:
    """Check the coin-paying assigner places the dispatcher's bags everywhere.

    Builds the bag profile once, then walks integral speed profiles summing
    to the job count and requires the assignment to succeed at factor 8/5 on
    each.  Small grids (jobs <= 60 or machines <= 10) are exhaustive; larger
    ones check ``samples`` uniformly random partitions instead.
    """
    start = time.perf_counter()
    profile = robust_bags(jobs, machines, machines)
    bag_sizes = [int(a) for a in profile.sizes]
    exhaustive = jobs <= 60 or machines <= 10
    checked = 0
    failures: list[dict] = []

    def run_one(speeds: tuple[int, ...]) -> None:
        nonlocal checked
        checked += 1
        if integral_assignment(bag_sizes, speeds, BRICK_ROBUSTNESS) is None:
            failures.append({
                "n": jobs,
                "m": machines,
                "speeds": list(speeds),
                "reason": "coin assignment failed at 8/5",
            })

    if exhaustive:
        for parts in _partitions(jobs, machines, jobs):
            run_one(parts + (0,) * (machines - len(parts)))
    else:
        rng = random.Random(seed)
        for _ in range(samples):
            parts = _sample_partition(jobs, machines, rng)
            run_one(parts + (0,) * (machines - len(parts)))

    elapsed = int((time.perf_counter() - start) * 1000)
    grid = {
        "campaign": "bricks-robustness",
        "n": jobs,
        "m": machines,
        "mode": "exhaustive" if exhaustive else f"sampled:{samples}:seed={seed}",
        "rho": format_rational(BRICK_ROBUSTNESS),
    }
    return VerificationReport(grid, checked, failures, elapsed)


# -- campaign: divisible-load construction survives every adversary ------------

def verify_sand_upper(
    machines: int,
    bags: int,
    trials: int,
    seed: int = 0,
) -> VerificationReport:
    """Check greedy assignment of the sand bags at the tight factor never fails.

    Runs against the full adversary configuration family plus ``trials``
    seeded pseudo-random rational speed profiles of the same total.
    """
    start = time.perf_counter()
    rho = sand_robustness(machines, bags)
    scale = machines**bags
    profile = sand_bags(machines, bags, scale)
    checked = 0
    failures: list[dict] = []

    for k, config in enumerate(adversary_configs(machines, bags)):
        checked += 1
        if greedy_assignment(profile, config, rho) is None:
            failures.append({
                "kind": "adversary",
                "config": k,
                "speeds": [format_rational(s) for s in config.speeds],
                "reason": "greedy assignment failed at the tight factor",
            })

    rng = random.Random(seed)
    for t in range(trials):
        raw = [rng.randint(0, RANDOM_SPEED_GRAIN) for _ in range(machines)]
        while not any(raw):
            raw = [rng.randint(0, RANDOM_SPEED_GRAIN) for _ in range(machines)]
        total = sum(raw)
        speeds = SpeedProfile(Fraction(r * scale, total) for r in raw)
        checked += 1
        if greedy_assignment(profile, speeds, rho) is None:
            failures.append({
                "kind": "random",
                "trial": t,
                "speeds": [format_rational(s) for s in speeds.speeds],
                "reason": "greedy assignment failed at the tight factor",
            })

    elapsed = int((time.perf_counter() - start) * 1000)
    grid = {
        "campaign": "sand-upper",
        "machines": machines,
        "bags": bags,
        "trials": trials,
        "seed": seed,
        "rho": format_rational(rho),
    }
    return VerificationReport(grid, checked, failures, elapsed)
