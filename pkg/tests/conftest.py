"""Shared helpers: independent brute-force oracles used to pin engine values.

Everything here is written against plain Python floats and exhaustive
enumeration so it cannot share a bug with the package's vectorized search
paths.  Only usable at very small sizes.
"""

from __future__ import annotations

import numpy as np
import pytest

import tml


def all_covering_pairsets(n1: int, n2: int):
    """Every subset of the n1 x n2 grid with full projections to both sides."""
    cells = [(a, b) for a in range(n1) for b in range(n2)]
    full1, full2 = set(range(n1)), set(range(n2))
    for mask in range(1, 1 << len(cells)):
        pairs = tuple(c for k, c in enumerate(cells) if mask >> k & 1)
        if {a for a, _ in pairs} == full1 and {b for _, b in pairs} == full2:
            yield pairs


def oracle_distortion(pairs, d1, d2) -> float:
    return max(
        abs(float(d1[a, a2]) - float(d2[b, b2]))
        for a, b in pairs
        for a2, b2 in pairs
    )


def oracle_hausdorff_cost(pairs, d1, d2, tau1=None, tau2=None) -> float:
    n1, n2 = d1.shape[0], d2.shape[0]

    def rho(x, y):
        gap = max(abs(float(d1[a, x]) - float(d2[b, y])) for a, b in pairs)
        if tau1 is not None:
            gap = max(gap, abs(float(tau1[x]) - float(tau2[y])))
        return gap

    left = max(min(rho(x, y) for y in range(n2)) for x in range(n1))
    right = max(min(rho(x, y) for x in range(n1)) for y in range(n2))
    return max(left, right)


def brute_gh(x1, x2) -> float:
    return min(
        oracle_distortion(p, x1.d, x2.d) for p in all_covering_pairsets(x1.n, x2.n)
    ) / 2.0


def brute_kappa(x1, x2) -> float:
    return min(
        oracle_hausdorff_cost(p, x1.d, x2.d)
        for p in all_covering_pairsets(x1.n, x2.n)
    )


def brute_tau_h(t1, t2) -> float:
    return min(
        oracle_hausdorff_cost(p, t1.d, t2.d, t1.tau, t2.tau)
        for p in all_covering_pairsets(t1.n, t2.n)
    )


def oracle_cross(pairs, d1, d2, delta):
    """Glued cross-distance table, grouped exactly like the package computes it."""
    n1, n2 = d1.shape[0], d2.shape[0]
    return [
        [
            min(float(d1[x, a]) + float(d2[b, y]) for a, b in pairs) + delta
            for y in range(n2)
        ]
        for x in range(n1)
    ]


def _subset_hausdorff(cross, rows, cols) -> float:
    left = max(min(cross[x][y] for y in cols) for x in rows)
    right = max(min(cross[x][y] for x in rows) for y in cols)
    return max(left, right)


def oracle_pointed_objective(pairs, d1, p1, d2, p2) -> float:
    delta = oracle_distortion(pairs, d1, d2) / 2.0
    cross = oracle_cross(pairs, d1, d2, delta)
    n1, n2 = d1.shape[0], d2.shape[0]
    return _subset_hausdorff(cross, range(n1), range(n2)) + cross[p1][p2]


def brute_pointed(x1, p1, x2, p2) -> float:
    best = None
    for pairs in all_covering_pairsets(x1.n, x2.n):
        if (p1, p2) not in pairs:
            continue
        value = oracle_pointed_objective(pairs, x1.d, p1, x2.d, p2)
        if best is None or value < best:
            best = value
    return best


def oracle_fd_objective(pairs, t1, t2, zeros1, zeros2) -> float:
    delta = oracle_distortion(pairs, t1.d, t2.d) / 2.0
    cross = oracle_cross(pairs, t1.d, t2.d, delta)
    full = _subset_hausdorff(cross, range(t1.n), range(t2.n))
    return full + _subset_hausdorff(cross, zeros1, zeros2)


def brute_fd(t1, t2) -> float:
    zeros1 = [i for i in range(t1.n) if t1.tau[i] <= tml.DEFAULT_TOL]
    zeros2 = [j for j in range(t2.n) if t2.tau[j] <= tml.DEFAULT_TOL]
    best = None
    for pairs in all_covering_pairsets(t1.n, t2.n):
        restricted = [(a, b) for a, b in pairs if a in zeros1 and b in zeros2]
        if {a for a, _ in restricted} != set(zeros1):
            continue
        if {b for _, b in restricted} != set(zeros2):
            continue
        value = oracle_fd_objective(pairs, t1, t2, zeros1, zeros2)
        if best is None or value < best:
            best = value
    return best


def tau_value_hausdorff(t1, t2) -> float:
    """Hausdorff distance between the two sets of time values on the line."""
    a = [float(v) for v in t1.tau]
    b = [float(v) for v in t2.tau]
    left = max(min(abs(x - y) for y in b) for x in a)
    right = max(min(abs(x - y) for x in a) for y in b)
    return max(left, right)


@pytest.fixture
def path3():
    """Three points on a line at 0, 1, 2."""
    d = np.array([[0.0, 1.0, 2.0], [1.0, 0.0, 1.0], [2.0, 1.0, 0.0]])
    return tml.build_metric_space(("a", "b", "c"), d)


@pytest.fixture
def worked_bb_pair():
    """Unit segment timed from one end, against the one-point space."""
    two = tml.build_metric_space(("p", "x"), np.array([[0.0, 1.0], [1.0, 0.0]]))
    one = tml.build_metric_space(("q",), np.zeros((1, 1)))
    return (
        tml.build_timed_space(two, np.array([0.0, 1.0])),
        tml.build_timed_space(one, np.zeros(1)),
    )
