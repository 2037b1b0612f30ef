"""Greedy bag packing for jobs that are small relative to the average load.

Jobs are rescaled so the total equals the machine count, packed largest-first
into the current bag while the capacity-style bound allows it, then into the
next bag.  If every job is at most q times the average machine load, running
at the divisible-load optimum plus q is guaranteed to pack everything.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import Instance
from .sand import sand_robustness


@dataclass(frozen=True)
class PebblesResult:
    """Outcome of a greedy packing run, reported in the caller's units."""

    bag_of_job: dict[int, int]
    bag_sizes: tuple[Fraction, ...]
    packed_all: bool


def pebble_ratio(instance: Instance) -> Fraction:
    """Largest job relative to the average machine load (the q of a q-pebbles instance)."""
    return max(instance.job_sizes) * instance.machine_count / instance.total


def reference_sequence(machines: int, bags: int) -> tuple[Fraction, ...]:
    """Bag sizes of the divisible-load optimum, normalized to total ``machines``.

    Defined by the recurrence a_k = rho - (1/machines) * sum(a_1..a_{k-1})
    with rho the tight divisible-load robustness factor; the packing bound
    holds with equality on this sequence, and its partial sums are the floor
    that any successful greedy packing must dominate.
    """
    rho = sand_robustness(machines, bags)
    out: list[Fraction] = []
    prefix = Fraction(0)
    for _ in range(bags):
        a = rho - prefix / machines
        out.append(a)
        prefix += a
    return tuple(out)


def pebbles_bags(instance: Instance, rho: Fraction) -> PebblesResult:
    """Pack jobs greedily into bags under the capacity bound at factor ``rho``.

    Jobs are taken in non-increasing order.  A job goes into the current bag
    unless that would push the bag past rho - (1/m) * (size of earlier bags),
    measured at the normalized scale where the total equals the machine
    count; then the next bag is tried.  ``packed_all`` is False when jobs
    remain after the last bag, the signal that ``rho`` was too small for this
    instance.
    """
    rho = Fraction(rho)
    if rho < 1:
        raise ValueError(f"rho must be >= 1, got {rho}")
    m, b = instance.machine_count, instance.bag_count
    scale = Fraction(m) / instance.total
    normalized = [p * scale for p in instance.job_sizes]

    bag_of_job: dict[int, int] = {}
    sizes = [Fraction(0)] * b
    prefix = Fraction(0)  # total size of bags strictly before the current one
    k = 0
    for j, p in enumerate(normalized):
        while k < b and sizes[k] + p > rho - prefix / m:
            prefix += sizes[k]
            k += 1
        if k >= b:
            break
        bag_of_job[j] = k
        sizes[k] += p

    return PebblesResult(
        bag_of_job=bag_of_job,
        bag_sizes=tuple(s / scale for s in sizes),
        packed_all=len(bag_of_job) == len(normalized),
    )
