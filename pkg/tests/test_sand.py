import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from speedrobust.model import BagProfile, ScaleMismatch, SpeedProfile
from speedrobust.sand import (
    adversary_configs,
    geometric_skeleton,
    lower_bound_probe,
    sand_bags,
    sand_robustness,
)
from speedrobust.second_stage import greedy_assignment


def test_skeleton_prefix_sums_exact():
    # sum(weights[:k]) == scale - (machines-1) * weights[k-1], all m, b up to 20
    for m in range(1, 21):
        for b in range(1, 21):
            sk = geometric_skeleton(m, b)
            prefix = 0
            for k in range(b):
                prefix += sk.weights[k]
                assert prefix == sk.scale - (m - 1) * sk.weights[k]
            assert prefix == sk.weight_total


def test_robustness_factor_known_values():
    assert sand_robustness(1, 7) == 1
    assert sand_robustness(2, 4) == Fraction(16, 15)
    assert sand_robustness(2, 2) == Fraction(4, 3)
    assert sand_robustness(3, 3) == Fraction(27, 19)


def test_robustness_factor_increasing_and_below_limit():
    # for b == m the factor increases with m and stays below e/(e-1) < 1.582
    values = [sand_robustness(m, m) for m in (10, 100, 1000)]
    assert values[0] < values[1] < values[2]
    assert all(v < Fraction(1582, 1000) for v in values)
    assert all(1 <= sand_robustness(m, b) <= m for m in range(1, 8) for b in range(1, 8))


def test_sand_bags_known_profiles():
    assert [int(a) for a in sand_bags(2, 4, 15).sizes] == [8, 4, 2, 1]
    assert [int(a) for a in sand_bags(2, 4, 30).sizes] == [16, 8, 4, 2]
    sizes = sand_bags(1, 3, Fraction(7, 3)).sizes
    assert sizes == (Fraction(7, 3), 0, 0)


@given(
    st.integers(min_value=1, max_value=8),
    st.integers(min_value=1, max_value=10),
    st.fractions(min_value=Fraction(1, 7), max_value=100, max_denominator=30),
)
def test_sand_bags_sum_to_total_and_sorted(m, b, total):
    profile = sand_bags(m, b, total)
    assert profile.total == total
    assert all(profile.sizes[i] >= profile.sizes[i + 1] for i in range(b - 1))


def test_sand_bags_reduce_machines_to_bags():
    # with fewer bags than machines the construction uses the bag count as m
    for m, b in [(5, 2), (7, 3), (4, 1)]:
        assert sand_bags(m, b, 60).sizes == sand_bags(b, b, 60).sizes


@given(st.integers(min_value=2, max_value=8), st.integers(min_value=2, max_value=10))
def test_greedy_condition_holds_with_equality(m, b):
    # each sand bag exactly exhausts its share of the remaining capacity,
    # at the effective machine count after the fewer-bags reduction
    effective = min(m, b)
    rho = sand_robustness(effective, b)
    total = Fraction(effective**b)
    profile = sand_bags(m, b, total)
    prefix = Fraction(0)
    for a in profile.sizes:
        assert a == (rho * total - prefix) / effective
        prefix += a


def test_adversary_configs_known_values():
    assert [[int(s) for s in c.speeds] for c in adversary_configs(2, 4)] == [
        [8, 8], [12, 4], [14, 2], [15, 1],
    ]
    assert [[int(s) for s in c.speeds] for c in adversary_configs(3, 2)] == [
        [3, 3, 3], [5, 2, 2],
    ]
    assert [[int(s) for s in c.speeds] for c in adversary_configs(1, 3)] == [[1]]


@given(st.integers(min_value=2, max_value=7), st.integers(min_value=1, max_value=8))
def test_adversary_configs_sum_to_scale(m, b):
    sk = geometric_skeleton(m, b)
    configs = adversary_configs(m, b)
    assert len(configs) == b
    for k, config in enumerate(configs):
        assert config.total == sk.scale
        assert config.speeds[0] >= sk.weights[k]


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=2, max_value=5), st.integers(min_value=0, max_value=5), st.integers())
def test_greedy_succeeds_at_tight_factor_on_random_speeds(m, extra_bags, seed):
    b = m + extra_bags  # the tight-factor guarantee is for at least as many bags as machines
    rho = sand_robustness(m, b)
    scale = m**b
    profile = sand_bags(m, b, scale)
    rng = random.Random(seed)
    for config in adversary_configs(m, b):
        assert greedy_assignment(profile, config, rho) is not None
    for _ in range(20):
        raw = [rng.randint(0, 50) for _ in range(m)]
        if not any(raw):
            raw[0] = 1
        speeds = SpeedProfile(Fraction(r * scale, sum(raw)) for r in raw)
        assert greedy_assignment(profile, speeds, rho) is not None


def test_probe_known_values():
    assert lower_bound_probe(2, 2, BagProfile([2, 2])) == Fraction(4, 3)
    assert lower_bound_probe(2, 2, BagProfile([4, 0])) == 2
    scaled = sand_bags(2, 4, 16)
    assert scaled.sizes == (Fraction(128, 15), Fraction(64, 15), Fraction(32, 15), Fraction(16, 15))
    assert lower_bound_probe(2, 4, scaled) == Fraction(16, 15)


def test_probe_requires_exact_scale():
    with pytest.raises(ScaleMismatch):
        lower_bound_probe(2, 2, BagProfile([2, 1]))
    with pytest.raises(ScaleMismatch):
        lower_bound_probe(2, 2, BagProfile([4]))


@given(st.integers(min_value=2, max_value=4), st.integers(min_value=2, max_value=4))
@settings(max_examples=10, deadline=None)
def test_probe_of_sand_profile_never_beats_tight_factor(m, b):
    profile = sand_bags(m, b, m**b)
    probe = lower_bound_probe(m, b, profile)
    if b >= m:
        assert probe == sand_robustness(m, b)
    else:
        # the fewer-bags reduction gives up ground against the full adversary
        assert probe >= sand_robustness(m, b)
