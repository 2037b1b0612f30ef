"""Core domain types: instances, bag/speed profiles, assignments, makespan.

All value types are immutable and store exact rationals in canonical
non-increasing order (constructors sort).  The JSON wire format encodes
rationals as ``"p/q"`` strings and assignments as 0-based machine indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .numerics import format_rational, parse_rational


class InvalidAssignment(ValueError):
    """An assignment puts a positive-size bag on a speed-0 machine (or is malformed)."""


class ScaleMismatch(ValueError):
    """Inputs were not normalized to the scale the operation requires."""


class SizeLimit(ValueError):
    """Exact-search input exceeds the enforced desk-scale bounds."""


class Infeasible(ValueError):
    """No valid result exists for the given inputs."""


def _sorted_fractions(values: Iterable[Fraction | int | str]) -> tuple[Fraction, ...]:
    out = []
    for v in values:
        f = parse_rational(v) if isinstance(v, str) else Fraction(v)
        if f < 0:
            raise ValueError(f"negative value not allowed: {f}")
        out.append(f)
    return tuple(sorted(out, reverse=True))


@dataclass(frozen=True)
class Instance:
    """A first-stage input: job processing times plus the machine and bag counts."""

    job_sizes: tuple[Fraction, ...]
    machine_count: int
    bag_count: int

    def __init__(self, job_sizes: Iterable[Fraction | int | str], machine_count: int, bag_count: int):
        if machine_count < 1:
            raise ValueError(f"machine_count must be >= 1, got {machine_count}")
        if bag_count < 1:
            raise ValueError(f"bag_count must be >= 1, got {bag_count}")
        sizes = _sorted_fractions(job_sizes)
        if sum(sizes) <= 0:
            raise ValueError("total processing time must be positive")
        object.__setattr__(self, "job_sizes", sizes)
        object.__setattr__(self, "machine_count", machine_count)
        object.__setattr__(self, "bag_count", bag_count)

    @property
    def total(self) -> Fraction:
        return sum(self.job_sizes, Fraction(0))


@dataclass(frozen=True)
class BagProfile:
    """Bag sizes committed by a first-stage algorithm, non-increasing; zeros allowed."""

    sizes: tuple[Fraction, ...]

    def __init__(self, sizes: Iterable[Fraction | int | str]):
        object.__setattr__(self, "sizes", _sorted_fractions(sizes))

    def __len__(self) -> int:
        return len(self.sizes)

    @property
    def total(self) -> Fraction:
        return sum(self.sizes, Fraction(0))


@dataclass(frozen=True)
class SpeedProfile:
    """Machine speeds revealed in the second stage, non-increasing, not all zero."""

    speeds: tuple[Fraction, ...]

    def __init__(self, speeds: Iterable[Fraction | int | str]):
        values = _sorted_fractions(speeds)
        if not values or all(s == 0 for s in values):
            raise ValueError("speeds must contain at least one positive value")
        object.__setattr__(self, "speeds", values)

    def __len__(self) -> int:
        return len(self.speeds)

    @property
    def total(self) -> Fraction:
        return sum(self.speeds, Fraction(0))


@dataclass(frozen=True)
class Assignment:
    """For each bag index, the 0-based machine index it was sent to."""

    machine_of_bag: tuple[int, ...]

    def __init__(self, machine_of_bag: Iterable[int]):
        owners = tuple(int(i) for i in machine_of_bag)
        if any(i < 0 for i in owners):
            raise InvalidAssignment("machine indices must be non-negative")
        object.__setattr__(self, "machine_of_bag", owners)

    def machines_used(self) -> set[int]:
        return set(self.machine_of_bag)


@dataclass
class FractionalSolution:
    """Bag counts indexed by bag cost: ``counts[z]`` bags of cost ``z`` each.

    Counts may be fractional and must be non-negative; the sum of counts is
    at most the bag budget, with equality unless the generator ran out of
    coins before using all bags (then the shortfall stands for empty bags,
    which have no cost and cannot be keyed here).
    """

    counts: dict[int, Fraction]
    bag_budget: Fraction

    def __init__(self, counts: Mapping[int, Fraction | int], bag_budget: Fraction | int):
        budget = Fraction(bag_budget)
        clean: dict[int, Fraction] = {}
        for z, x in counts.items():
            if z < 1:
                raise ValueError(f"bag cost must be >= 1, got {z}")
            fx = Fraction(x)
            if fx < 0:
                raise ValueError(f"negative bag count for cost {z}: {fx}")
            if fx > 0:
                clean[int(z)] = fx
        if sum(clean.values(), Fraction(0)) > budget:
            raise ValueError("bag counts exceed the bag budget")
        self.counts = clean
        self.bag_budget = budget

    @property
    def total_bags(self) -> Fraction:
        return sum(self.counts.values(), Fraction(0))

    @property
    def total_cost(self) -> Fraction:
        return sum((x * z for z, x in self.counts.items()), Fraction(0))

    def min_cost(self) -> int:
        return min(self.counts)

    def max_cost(self) -> int:
        return max(self.counts)


def makespan(assignment: Assignment, bags: BagProfile, speeds: SpeedProfile) -> Fraction:
    """Largest machine completion time (assigned size over speed) of an assignment.

    Machines of speed 0 accept only zero-size bags; a positive bag there makes
    the assignment invalid.
    """
    if len(assignment.machine_of_bag) != len(bags.sizes):
        raise InvalidAssignment(
            f"assignment covers {len(assignment.machine_of_bag)} bags, profile has {len(bags.sizes)}"
        )
    loads = [Fraction(0)] * len(speeds.speeds)
    for bag, machine in enumerate(assignment.machine_of_bag):
        if machine >= len(speeds.speeds):
            raise InvalidAssignment(f"bag {bag} assigned to unknown machine {machine}")
        loads[machine] += bags.sizes[bag]
    worst = Fraction(0)
    for load, speed in zip(loads, speeds.speeds):
        if speed == 0:
            if load > 0:
                raise InvalidAssignment("positive-size bag assigned to a speed-0 machine")
            continue
        worst = max(worst, load / speed)
    return worst


# -- JSON wire format ---------------------------------------------------------

def values_to_json(values: Sequence[Fraction]) -> list[str]:
    return [format_rational(v) for v in values]


def values_from_json(items: Sequence[str]) -> list[Fraction]:
    return [parse_rational(s) for s in items]


def instance_to_json(instance: Instance) -> dict:
    return {
        "jobs": values_to_json(instance.job_sizes),
        "machines": instance.machine_count,
        "bags": instance.bag_count,
    }


def instance_from_json(data: Mapping) -> Instance:
    return Instance(values_from_json(data["jobs"]), int(data["machines"]), int(data["bags"]))
