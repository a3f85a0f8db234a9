import itertools
import math

import numpy as np
import pytest

import tml
from tml.engine import _minimal_pair_tuples
from tml.errors import InvalidBasepoint, NotBigBang, NotFutureDeveloped

from conftest import (
    all_covering_pairsets,
    brute_fd,
    brute_gh,
    brute_kappa,
    brute_pointed,
    brute_tau_h,
    oracle_distortion,
    oracle_fd_objective,
    oracle_hausdorff_cost,
    oracle_pointed_objective,
    tau_value_hausdorff,
)


def minimal_filter(pairs, n1, n2):
    """A pair set is minimal when removing any pair breaks coverage."""
    pairs = set(pairs)
    for p in pairs:
        rest = pairs - {p}
        if {a for a, _ in rest} == set(range(n1)) and {b for _, b in rest} == set(range(n2)):
            return False
    return True


def spaces_for(seed, n1, n2, timed=False):
    x1 = tml.random_metric_space(seed * 2 + 1, n1, model="euclidean")
    x2 = tml.random_metric_space(seed * 2 + 2, n2, model="graph")
    if not timed:
        return x1, x2
    t1 = tml.random_time_function(seed * 3 + 1, x1, model=("cone", "set-cone", "mcshane")[seed % 3])
    t2 = tml.random_time_function(seed * 3 + 2, x2, model=("mcshane", "cone", "set-cone")[seed % 3])
    return t1, t2


# ---------------------------------------------------------------------------
# Enumerator.


def test_minimal_enumeration_matches_brute_force_filter():
    for n1, n2 in itertools.product(range(1, 4), repeat=2):
        expected = sorted(
            tuple(sorted(p)) for p in all_covering_pairsets(n1, n2) if minimal_filter(p, n1, n2)
        )
        produced = list(_minimal_pair_tuples(n1, n2))
        assert produced == expected, (n1, n2)


def test_minimal_enumeration_counts():
    counts = {(2, 2): 2, (3, 3): 15, (4, 4): 184, (5, 5): 2945, (5, 2): 30, (9, 3): 18177}
    for (n1, n2), expected in counts.items():
        assert sum(1 for _ in _minimal_pair_tuples(n1, n2)) == expected


def test_minimal_enumeration_is_sorted_and_unique():
    seen = list(_minimal_pair_tuples(3, 3))
    assert seen == sorted(set(seen))
    for pairs in seen:
        assert pairs == tuple(sorted(pairs))
        assert tml.engine.pairs_are_minimal(pairs)


def test_minimal_correspondence_stream_budget():
    full = list(tml.minimal_correspondences(2, 2))
    assert len(full) == 2
    assert all(c.minimal for c in full)
    assert len(list(tml.minimal_correspondences(2, 2, budget=1))) == 1


def test_make_correspondence_and_transpose():
    corr = tml.make_correspondence(2, 2, [(0, 0), (1, 1), (1, 0)])
    assert corr.pairs == ((0, 0), (1, 0), (1, 1))
    assert not corr.minimal
    back = tml.transpose(corr)
    assert back.pairs == ((0, 0), (0, 1), (1, 1))
    with pytest.raises(ValueError):
        tml.make_correspondence(2, 2, [(0, 0)])
    with pytest.raises(ValueError):
        tml.make_correspondence(2, 2, [(0, 0), (1, 2)])


# ---------------------------------------------------------------------------
# Worked values.


def segment(length, labels=("u", "v")):
    return tml.build_metric_space(labels, np.array([[0.0, length], [length, 0.0]]))


def test_gh_two_segments():
    result = tml.gh_distance(segment(2.0), segment(1.0, labels=("a", "b")))
    assert result.is_exact
    assert result.lower == result.upper == 0.5
    assert result.certificate.pairs in (((0, 0), (1, 1)), ((0, 1), (1, 0)))


def test_kappa_segment_vs_point():
    one = tml.build_metric_space(("z",), np.zeros((1, 1)))
    result = tml.kappa_gh_distance(segment(2.0), one)
    assert result.is_exact
    assert result.upper == 2.0
    gh = tml.gh_distance(segment(2.0), one)
    assert gh.upper == 1.0
    assert result.upper == 2.0 * gh.upper


def test_tau_h_worked_pair(worked_bb_pair):
    t1, t2 = worked_bb_pair
    result = tml.tau_h_distance(t1, t2)
    assert result.is_exact
    assert result.upper == 1.0


def test_bb_gh_worked_pair(worked_bb_pair):
    t1, t2 = worked_bb_pair
    result = tml.bb_gh(t1, t2)
    assert (result.lower, result.upper) == (0.5, 1.0)
    assert result.anchor == (0, 0)
    assert not result.is_exact


def test_pointed_gh_identical_spaces(path3):
    result = tml.pointed_gh(path3, 1, path3, 1)
    assert result.is_exact
    assert result.lower == result.upper == 0.0
    assert result.anchor == (1, 1)


def test_fd_hh_zero_set_example(path3):
    # identical bases, zero sets {a} vs {a, b} with d(a, b) = 1
    t1 = tml.make_future_developed(path3, [0])
    t2 = tml.make_future_developed(path3, [0, 1])
    result = tml.fd_hh(t1, t2)
    assert result.upper == brute_fd(t1, t2)
    assert (result.lower, result.upper) == (0.5, 1.0)
    assert result.zero_pairs is not None


def test_fd_hh_rejects_generic(path3):
    generic = tml.build_timed_space(path3, np.ones(3))
    fd = tml.build_timed_space(path3, np.array([0.0, 1.0, 0.0]))
    with pytest.raises(NotFutureDeveloped) as info:
        tml.fd_hh(generic, fd)
    assert info.value.side == 1
    with pytest.raises(NotFutureDeveloped):
        tml.fd_hh(fd, generic)


def test_bb_gh_rejects_non_big_bang(path3):
    fd = tml.build_timed_space(path3, np.array([0.0, 1.0, 0.0]))
    bb = tml.build_timed_space(path3, path3.d[0])
    with pytest.raises(NotBigBang):
        tml.bb_gh(fd, bb)


def test_pointed_objective_requires_related_basepoints(path3):
    corr = tml.make_correspondence(3, 3, [(0, 0), (1, 1), (2, 2)])
    with pytest.raises(InvalidBasepoint):
        tml.engine.pointed_glued_objective(corr, path3, 0, path3, 1)


# ---------------------------------------------------------------------------
# Oracle equality at tiny sizes.


def test_gh_kappa_tau_match_brute_force_exactly():
    for seed in range(12):
        rng = np.random.default_rng(seed + 100)
        n1, n2 = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        t1, t2 = spaces_for(seed, n1, n2, timed=True)
        assert tml.gh_distance(t1.base, t2.base).upper == brute_gh(t1.base, t2.base)
        assert tml.kappa_gh_distance(t1.base, t2.base).upper == brute_kappa(t1.base, t2.base)
        assert tml.tau_h_distance(t1, t2).upper == brute_tau_h(t1, t2)


def test_pointed_upper_matches_brute_family_minimum():
    for seed in range(10):
        rng = np.random.default_rng(seed + 300)
        n1, n2 = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        x1, x2 = spaces_for(seed, n1, n2)
        p1, p2 = int(rng.integers(n1)), int(rng.integers(n2))
        result = tml.pointed_gh(x1, p1, x2, p2)
        expected = brute_pointed(x1, p1, x2, p2)
        assert result.upper == expected
        assert result.upper / 2.0 <= result.lower <= result.upper


def test_fd_upper_matches_brute_family_minimum(path3):
    cases = [
        (np.array([0.0, 1.0, 0.0]), np.array([0.0, 1.0, 2.0])),
        (np.array([0.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])),
        (np.array([0.0, 1.0, 2.0]), np.array([2.0, 1.0, 0.0])),
    ]
    for tau1, tau2 in cases:
        t1 = tml.build_timed_space(path3, tau1)
        t2 = tml.build_timed_space(path3, tau2)
        assert tml.fd_hh(t1, t2).upper == brute_fd(t1, t2)
    for seed in range(6):
        rng = np.random.default_rng(seed + 400)
        n1, n2 = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        x1, x2 = spaces_for(seed, n1, n2)
        t1 = tml.make_future_developed(x1, rng.choice(n1, size=int(rng.integers(1, n1 + 1)), replace=False))
        t2 = tml.make_future_developed(x2, rng.choice(n2, size=int(rng.integers(1, n2 + 1)), replace=False))
        assert tml.fd_hh(t1, t2).upper == brute_fd(t1, t2)


def test_per_correspondence_costs_match_oracle():
    for seed in range(8):
        rng = np.random.default_rng(seed + 500)
        n1, n2 = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        t1, t2 = spaces_for(seed, n1, n2, timed=True)
        for pairs in itertools.islice(all_covering_pairsets(n1, n2), 0, None, 7):
            corr = tml.make_correspondence(n1, n2, pairs)
            assert tml.distortion(corr, t1.base, t2.base) == oracle_distortion(
                pairs, t1.d, t2.d
            )
            assert tml.correspondence_hausdorff(corr, t1.base, t2.base) == (
                oracle_hausdorff_cost(pairs, t1.d, t2.d)
            )
            assert tml.timed_correspondence_hausdorff(corr, t1, t2) == (
                oracle_hausdorff_cost(pairs, t1.d, t2.d, t1.tau, t2.tau)
            )


def test_objective_nondecreasing_in_delta(path3):
    # Scanning offsets above half the distortion cannot find anything better,
    # so the searched value is the family minimum over all valid offsets.
    x2 = tml.random_metric_space(9, 3, model="graph")
    result = tml.pointed_gh(path3, 0, x2, 0)
    for pairs in all_covering_pairsets(3, 3):
        if (0, 0) not in pairs:
            continue
        dis = oracle_distortion(pairs, path3.d, x2.d)
        base = oracle_pointed_objective(pairs, path3.d, 0, x2.d, 0)
        assert base >= result.upper - 1e-12
        for bump in (0.1, 0.5, 2.0):
            delta = dis / 2.0 + bump
            cross = tml.glued_cross_distances(path3, x2, tml.make_correspondence(3, 3, pairs), delta)
            value = float(max(cross.min(axis=1).max(), cross.min(axis=0).max())) + float(
                cross[0, 0]
            )
            assert value >= base - 1e-12


# ---------------------------------------------------------------------------
# Structural properties.


def test_distances_are_symmetric():
    for seed in range(6):
        t1, t2 = spaces_for(seed, 3, 2 + seed % 2, timed=True)
        for fn in (tml.gh_distance, tml.kappa_gh_distance):
            ab = fn(t1.base, t2.base)
            ba = fn(t2.base, t1.base)
            assert (ab.lower, ab.upper) == (ba.lower, ba.upper)
        ab = tml.tau_h_distance(t1, t2)
        ba = tml.tau_h_distance(t2, t1)
        assert (ab.lower, ab.upper) == (ba.lower, ba.upper)


def test_distance_to_self_is_zero(path3):
    timed = tml.build_timed_space(path3, path3.d[0])
    assert tml.gh_distance(path3, path3).upper == 0.0
    assert tml.kappa_gh_distance(path3, path3).upper == 0.0
    assert tml.tau_h_distance(timed, timed).upper == 0.0
    assert tml.bb_gh(timed, timed).upper == 0.0
    one = tml.build_timed_space(
        tml.build_metric_space(("o",), np.zeros((1, 1))), np.zeros(1)
    )
    assert tml.fd_hh(one, one).upper == 0.0


def test_sandwich_and_order_chain():
    for seed in range(10):
        t1, t2 = spaces_for(seed, 1 + seed % 3, 1 + (seed + 1) % 3, timed=True)
        gh = tml.gh_distance(t1.base, t2.base).upper
        kappa = tml.kappa_gh_distance(t1.base, t2.base).upper
        tau = tml.tau_h_distance(t1, t2).upper
        assert gh <= kappa + 1e-12
        assert kappa <= 2.0 * gh + 1e-12
        assert kappa <= tau + 1e-12
        assert tau_value_hausdorff(t1, t2) <= tau + 1e-12


def test_tau_h_triangle_inequality():
    for seed in range(8):
        spaces = []
        for k in range(3):
            x = tml.random_metric_space(seed * 7 + k, 3, model="euclidean")
            spaces.append(
                tml.random_time_function(seed * 11 + k, x, model=("cone", "set-cone", "mcshane")[k])
            )
        ab = tml.tau_h_distance(spaces[0], spaces[1]).upper
        bc = tml.tau_h_distance(spaces[1], spaces[2]).upper
        ac = tml.tau_h_distance(spaces[0], spaces[2]).upper
        assert ac <= ab + bc + 1e-12


def test_simple_lower_bounds(worked_bb_pair):
    t1, t2 = worked_bb_pair
    assert tml.engine.simple_lower_bounds(tml.DistanceKind.GH, t1.base, t2.base) == 0.5
    assert tml.engine.simple_lower_bounds(tml.DistanceKind.TAU_H, t1, t2) == 1.0


# ---------------------------------------------------------------------------
# Budgets, certificates, re-evaluation.


def test_budget_semantics():
    x1 = tml.random_metric_space(21, 3)
    x2 = tml.random_metric_space(22, 3)
    exact = tml.gh_distance(x1, x2)
    assert exact.explored == 15 and exact.is_exact

    clipped = tml.gh_distance(x1, x2, budget=4)
    assert clipped.budget_exhausted and not clipped.is_exact
    assert clipped.explored == 4
    assert clipped.lower <= exact.upper <= clipped.upper
    with pytest.raises(tml.BudgetTooSmall):
        tml.require_exact(clipped)

    # a budget equal to the stream length is not an exhaustion
    fits = tml.gh_distance(x1, x2, budget=15)
    assert fits.is_exact and not fits.budget_exhausted
    with pytest.raises(ValueError):
        tml.gh_distance(x1, x2, budget=0)


def test_reevaluate_reproduces_upper(path3):
    t1 = tml.build_timed_space(path3, np.array([0.0, 1.0, 0.0]))
    bb1 = tml.build_timed_space(path3, path3.d[0])
    x2 = tml.random_metric_space(31, 3)
    t2 = tml.make_future_developed(x2, [0])
    checks = [
        (tml.gh_distance(path3, x2), path3, x2),
        (tml.kappa_gh_distance(path3, x2), path3, x2),
        (tml.tau_h_distance(t1, t2), t1, t2),
        (tml.pointed_gh(path3, 1, x2, 2), path3, x2),
        (tml.bb_gh(bb1, t2), bb1, t2),
        (tml.fd_hh(t1, t2), t1, t2),
    ]
    for result, a, b in checks:
        assert tml.reevaluate(result, a, b) == result.upper


def test_local_search_certifies_upper_bounds(path3):
    x2 = tml.random_metric_space(41, 4, model="graph")
    for kind, args in (
        (tml.DistanceKind.GH, (path3, x2)),
        (tml.DistanceKind.KAPPA_GH, (path3, x2)),
    ):
        exact = {
            tml.DistanceKind.GH: tml.gh_distance,
            tml.DistanceKind.KAPPA_GH: tml.kappa_gh_distance,
        }[kind](*args)
        heur = tml.local_search_upper(kind, *args, seed=5)
        assert not heur.is_exact
        assert heur.upper >= exact.upper - 1e-15
        assert tml.reevaluate(heur, *args) == heur.upper

    t1 = tml.build_timed_space(path3, path3.d[0])
    t2 = tml.make_future_developed(x2, [1])
    heur = tml.local_search_upper(tml.DistanceKind.TAU_H, t1, t2, seed=5)
    assert heur.upper >= tml.tau_h_distance(t1, t2).upper - 1e-15

    pointed = tml.local_search_upper(tml.DistanceKind.BB_GH, t1, t2, seed=5)
    assert pointed.anchor == (0, 1)
    assert (0, 1) in pointed.certificate.pairs
    assert pointed.upper >= tml.bb_gh(t1, t2).upper - 1e-15

    fd = tml.local_search_upper(tml.DistanceKind.FD_HH, t1, t2, seed=5)
    assert fd.upper >= tml.fd_hh(t1, t2).upper - 1e-15


def test_local_search_deterministic(path3):
    x2 = tml.random_metric_space(51, 4)
    a = tml.local_search_upper(tml.DistanceKind.GH, path3, x2, seed=9)
    b = tml.local_search_upper(tml.DistanceKind.GH, path3, x2, seed=9)
    assert a == b
