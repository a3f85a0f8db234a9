"""Certified distance solvers over correspondences between two finite spaces.

A correspondence is a relation between the point sets with full projections
onto both sides.  Every distance kind here is a minimum of a per-correspondence
cost:

* gh: half the distortion, max over related pairs of |d1 - d2|.
* kappa-gh: the Hausdorff distance in sup-metric space between the two
  distance-profile embeddings read off the correspondence.  The per-point cost
  rho(x, y) = max over related (a, b) of |d1(a, x) - d2(b, y)| is exactly the
  sup distance between the image of x and the image of y.
* tau-h: same, with the time coordinate |tau1(x) - tau2(y)| joined into rho.
* pt-gh / bb-gh / fd-hh: Hausdorff-plus-anchor objectives evaluated in the
  space obtained by gluing the two spaces along the correspondence at offset
  half its distortion.

Shrinking a correspondence never increases the Hausdorff-style costs and never
decreases distortion, so the exact minima are attained on minimal
correspondences (those where every related pair has an endpoint of degree one).
``minimal_correspondences`` streams them exactly once each, in lexicographic
order of their sorted pair tuples.

The pointed and zero-set objectives have no known exact finite reformulation;
for them the scan returns a certified 2-approximation interval
[upper / 2, upper], tightened from below by simple bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import islice

import numpy as np

from .errors import (
    BudgetTooSmall,
    InvalidBasepoint,
    NotBigBang,
    NotFutureDeveloped,
)
from .spaces import (
    DEFAULT_TOL,
    FiniteMetricSpace,
    SpaceClass,
    TimedMetricSpace,
    classify,
    structure_report,
)

DEFAULT_BUDGET = 5_000_000


class DistanceKind(Enum):
    GH = "gh"
    KAPPA_GH = "kappa-gh"
    TAU_H = "tau-h"
    PT_GH = "pt-gh"
    BB_GH = "bb-gh"
    FD_HH = "fd-hh"
    HAUSDORFF = "hausdorff"


@dataclass(frozen=True)
class Correspondence:
    """A relation with full projections, stored as a sorted tuple of index pairs."""

    n1: int
    n2: int
    pairs: tuple[tuple[int, int], ...]
    minimal: bool


def pairs_are_minimal(pairs) -> bool:
    """True when every pair has an endpoint of degree one."""
    deg1: dict[int, int] = {}
    deg2: dict[int, int] = {}
    for a, b in pairs:
        deg1[a] = deg1.get(a, 0) + 1
        deg2[b] = deg2.get(b, 0) + 1
    return all(deg1[a] == 1 or deg2[b] == 1 for a, b in pairs)


def make_correspondence(n1: int, n2: int, pairs) -> Correspondence:
    """Validate full projections, sort the pairs, and tag minimality."""
    pairs = tuple(sorted({(int(a), int(b)) for a, b in pairs}))
    for a, b in pairs:
        if not (0 <= a < n1 and 0 <= b < n2):
            raise ValueError(f"pair ({a}, {b}) outside {n1} x {n2}")
    if {a for a, _ in pairs} != set(range(n1)) or {b for _, b in pairs} != set(range(n2)):
        raise ValueError("pairs do not project onto both point sets")
    return Correspondence(n1=n1, n2=n2, pairs=pairs, minimal=pairs_are_minimal(pairs))


def transpose(corr: Correspondence) -> Correspondence:
    flipped = tuple(sorted((b, a) for a, b in corr.pairs))
    return Correspondence(n1=corr.n2, n2=corr.n1, pairs=flipped, minimal=corr.minimal)


def _minimal_pair_tuples(n1: int, n2: int):
    """Yield the sorted pair tuple of every minimal correspondence exactly once.

    Rows are processed in order; each row picks a nonempty column set.  A row
    with two or more columns must own them exclusively (they are frozen for
    everyone else), which is precisely the star shape minimality demands.
    Column subsets are explored extension-first, so complete relations appear
    in lexicographic order of their sorted pair tuples.
    """
    col_deg = [0] * n2
    frozen = [False] * n2
    prefix: list[tuple[int, int]] = []

    def rows(r: int):
        if r == n1:
            if all(col_deg):
                yield tuple(prefix)
            return
        last = r == n1 - 1

        def cols(c: int, chosen: list[int]):
            if c == n2:
                if chosen:
                    multi = len(chosen) >= 2
                    for j in chosen:
                        col_deg[j] += 1
                        if multi:
                            frozen[j] = True
                    prefix.extend((r, j) for j in chosen)
                    yield from rows(r + 1)
                    del prefix[-len(chosen):]
                    for j in chosen:
                        col_deg[j] -= 1
                        if multi:
                            frozen[j] = False
                return
            takeable = not frozen[c] and (
                not chosen or (col_deg[c] == 0 and all(col_deg[x] == 0 for x in chosen))
            )
            if takeable:
                chosen.append(c)
                yield from cols(c + 1, chosen)
                chosen.pop()
            # The last row must cover every still-uncovered column.
            if not (last and col_deg[c] == 0):
                yield from cols(c + 1, chosen)

        yield from cols(0, [])

    if n1 >= 1 and n2 >= 1:
        yield from rows(0)


def minimal_correspondences(n1: int, n2: int, budget: int | None = None):
    """Stream every minimal correspondence, truncating after `budget` emissions."""
    stream = _minimal_pair_tuples(n1, n2)
    if budget is not None:
        stream = islice(stream, budget)
    for pairs in stream:
        yield Correspondence(n1=n1, n2=n2, pairs=pairs, minimal=True)


# ---------------------------------------------------------------------------
# Per-correspondence costs (plain implementations, valid for any relation with
# full projections, minimal or not).


def distortion(corr: Correspondence, x1: FiniteMetricSpace, x2: FiniteMetricSpace) -> float:
    out = 0.0
    for a, b in corr.pairs:
        for a2, b2 in corr.pairs:
            gap = abs(float(x1.d[a, a2]) - float(x2.d[b, b2]))
            if gap > out:
                out = gap
    return out


def _maxmin(block: np.ndarray) -> float:
    return float(max(block.min(axis=1).max(), block.min(axis=0).max()))


def _rho_matrix(corr, x1, x2) -> np.ndarray:
    rows = np.array([a for a, _ in corr.pairs], dtype=int)
    cols = np.array([b for _, b in corr.pairs], dtype=int)
    return np.abs(x1.d[rows][:, :, None] - x2.d[cols][:, None, :]).max(axis=0)


def correspondence_hausdorff(
    corr: Correspondence, x1: FiniteMetricSpace, x2: FiniteMetricSpace
) -> float:
    """Hausdorff cost of the profile embeddings read off the correspondence."""
    return _maxmin(_rho_matrix(corr, x1, x2))


def timed_correspondence_hausdorff(
    corr: Correspondence, t1: TimedMetricSpace, t2: TimedMetricSpace
) -> float:
    """Same cost with the time coordinate joined in."""
    rho = _rho_matrix(corr, t1.base, t2.base)
    rho = np.maximum(rho, np.abs(t1.tau[:, None] - t2.tau[None, :]))
    return _maxmin(rho)


def glued_cross_distances(
    x1: FiniteMetricSpace, x2: FiniteMetricSpace, corr: Correspondence, delta: float
) -> np.ndarray:
    """Cross-distance table of the gluing: min over related (a, b) of
    d1(x, a) + delta + d2(b, y).  A metric whenever delta >= distortion / 2."""
    rows = np.array([a for a, _ in corr.pairs], dtype=int)
    cols = np.array([b for _, b in corr.pairs], dtype=int)
    sums = x1.d[rows][:, :, None] + x2.d[cols][:, None, :]
    return sums.min(axis=0) + delta


def pointed_glued_objective(
    corr: Correspondence,
    x1: FiniteMetricSpace,
    p1: int,
    x2: FiniteMetricSpace,
    p2: int,
) -> float:
    """Hausdorff-plus-basepoint cost in the gluing at half the distortion.

    Requires the basepoint pair to be related, so the gluing keeps the
    basepoints close.
    """
    if (p1, p2) not in set(corr.pairs):
        raise InvalidBasepoint(f"basepoint pair ({p1}, {p2}) is not in the correspondence")
    cross = glued_cross_distances(x1, x2, corr, distortion(corr, x1, x2) / 2.0)
    return _maxmin(cross) + float(cross[p1, p2])


def fd_glued_objective(
    corr: Correspondence,
    t1: TimedMetricSpace,
    t2: TimedMetricSpace,
    zeros1,
    zeros2,
) -> float:
    """Sum of the full Hausdorff cost and the zero-set Hausdorff cost in the
    gluing at half the distortion.  The restriction of the correspondence to
    the zero sets must itself have full projections onto them."""
    z1 = list(zeros1)
    z2 = list(zeros2)
    restricted = [(a, b) for a, b in corr.pairs if a in set(z1) and b in set(z2)]
    if {a for a, _ in restricted} != set(z1) or {b for _, b in restricted} != set(z2):
        raise ValueError("correspondence does not cover both zero sets")
    cross = glued_cross_distances(t1.base, t2.base, corr, distortion(corr, t1.base, t2.base) / 2.0)
    return _maxmin(cross) + _maxmin(cross[np.ix_(z1, z2)])


# ---------------------------------------------------------------------------
# Result type and search drivers.


@dataclass(frozen=True)
class DistanceResult:
    """A certified interval [lower, upper] for one distance kind.

    is_exact means lower == upper.  The certificate re-evaluates to upper under
    the matching per-correspondence cost.  `anchor` carries the basepoint pair
    for pointed kinds; `zero_pairs` the zero-set pairing for fd-hh.
    """

    kind: DistanceKind
    lower: float
    upper: float
    is_exact: bool
    certificate: Correspondence | None
    explored: int
    budget_exhausted: bool
    anchor: tuple[int, int] | None = None
    zero_pairs: tuple[tuple[int, int], ...] | None = None


class _Workspace:
    """Shared tensors for evaluating many correspondences between one pair.

    Pair (a, b) gets id a * n2 + b.  C[id, x, y] = |d1(a, x) - d2(b, y)| and
    S[id, x, y] = d1(a, x) + d2(b, y); DIS[id, id'] is the distortion
    contribution of two pairs.
    """

    def __init__(self, x1: FiniteMetricSpace, x2: FiniteMetricSpace):
        self.n1, self.n2 = x1.n, x2.n
        a = np.repeat(np.arange(self.n1), self.n2)
        b = np.tile(np.arange(self.n2), self.n1)
        d1r = x1.d[a]
        d2r = x2.d[b]
        self.C = np.abs(d1r[:, :, None] - d2r[:, None, :])
        self.S = d1r[:, :, None] + d2r[:, None, :]
        self.DIS = np.abs(x1.d[np.ix_(a, a)] - x2.d[np.ix_(b, b)])

    def ids(self, pairs) -> np.ndarray:
        return np.fromiter((a * self.n2 + b for a, b in pairs), dtype=int, count=len(pairs))

    def distortion(self, ids: np.ndarray) -> float:
        return float(self.DIS[np.ix_(ids, ids)].max())

    def hausdorff_cost(self, ids: np.ndarray, tau_gap: np.ndarray | None = None) -> float:
        rho = self.C[ids].max(axis=0)
        if tau_gap is not None:
            rho = np.maximum(rho, tau_gap)
        return _maxmin(rho)

    def cross(self, ids: np.ndarray, delta: float) -> np.ndarray:
        return self.S[ids].min(axis=0) + delta


def _scan(stream, cost_of, budget: int):
    """Minimize a cost over a stream of pair tuples with a deterministic
    lexicographic tie-break, counting evaluations against the budget."""
    best = math.inf
    best_pairs = None
    explored = 0
    exhausted = False
    it = iter(stream)
    sentinel = object()
    while True:
        item = next(it, sentinel)
        if item is sentinel:
            break
        if explored >= budget:
            exhausted = True
            break
        explored += 1
        value = cost_of(item)
        if value < best or (value == best and best_pairs is not None and item < best_pairs):
            best = value
            best_pairs = item
    return best, best_pairs, explored, exhausted


def _base_of(space) -> FiniteMetricSpace:
    return space.base if isinstance(space, TimedMetricSpace) else space


def _tau_value_gap(t1: TimedMetricSpace, t2: TimedMetricSpace) -> float:
    """Hausdorff distance between the two sets of time values on the line."""
    gaps = np.abs(t1.tau[:, None] - t2.tau[None, :])
    return _maxmin(gaps)


def simple_lower_bounds(kind: DistanceKind, a, b) -> float:
    """Cheap certified lower bounds: half the diameter gap for every kind,
    joined with the time-value-range bound for tau-h."""
    x1, x2 = _base_of(a), _base_of(b)
    bound = abs(x1.diameter - x2.diameter) / 2.0
    if kind is DistanceKind.TAU_H:
        if not (isinstance(a, TimedMetricSpace) and isinstance(b, TimedMetricSpace)):
            raise TypeError("tau-h bounds need timed spaces")
        bound = max(bound, _tau_value_gap(a, b))
    return float(bound)


def _finish_exact(kind, best, pairs, explored, exhausted, n1, n2, fallback, **extra):
    if not exhausted:
        cert = Correspondence(n1=n1, n2=n2, pairs=pairs, minimal=pairs_are_minimal(pairs))
        return DistanceResult(
            kind=kind,
            lower=float(best),
            upper=float(best),
            is_exact=True,
            certificate=cert,
            explored=explored,
            budget_exhausted=False,
            **extra,
        )
    cert = None
    upper = math.inf
    if pairs is not None:
        cert = Correspondence(n1=n1, n2=n2, pairs=pairs, minimal=pairs_are_minimal(pairs))
        upper = float(best)
    return DistanceResult(
        kind=kind,
        lower=min(float(fallback), upper),
        upper=upper,
        is_exact=False,
        certificate=cert,
        explored=explored,
        budget_exhausted=True,
        **extra,
    )


def gh_distance(
    x1: FiniteMetricSpace, x2: FiniteMetricSpace, budget: int = DEFAULT_BUDGET
) -> DistanceResult:
    """Gromov-Hausdorff distance: half the minimal distortion."""
    if budget < 1:
        raise ValueError("budget must be at least 1")
    work = _Workspace(x1, x2)
    best, pairs, explored, exhausted = _scan(
        _minimal_pair_tuples(x1.n, x2.n),
        lambda p: work.distortion(work.ids(p)) / 2.0,
        budget,
    )
    fallback = simple_lower_bounds(DistanceKind.GH, x1, x2)
    return _finish_exact(DistanceKind.GH, best, pairs, explored, exhausted, x1.n, x2.n, fallback)


def kappa_gh_distance(
    x1: FiniteMetricSpace, x2: FiniteMetricSpace, budget: int = DEFAULT_BUDGET
) -> DistanceResult:
    """Best Hausdorff distance between paired distance-profile embeddings."""
    if budget < 1:
        raise ValueError("budget must be at least 1")
    work = _Workspace(x1, x2)
    best, pairs, explored, exhausted = _scan(
        _minimal_pair_tuples(x1.n, x2.n),
        lambda p: work.hausdorff_cost(work.ids(p)),
        budget,
    )
    fallback = simple_lower_bounds(DistanceKind.KAPPA_GH, x1, x2)
    return _finish_exact(
        DistanceKind.KAPPA_GH, best, pairs, explored, exhausted, x1.n, x2.n, fallback
    )


def tau_h_distance(
    t1: TimedMetricSpace, t2: TimedMetricSpace, budget: int = DEFAULT_BUDGET
) -> DistanceResult:
    """Timed-Hausdorff distance: the profile-embedding cost with time joined in."""
    if budget < 1:
        raise ValueError("budget must be at least 1")
    work = _Workspace(t1.base, t2.base)
    tau_gap = np.abs(t1.tau[:, None] - t2.tau[None, :])
    best, pairs, explored, exhausted = _scan(
        _minimal_pair_tuples(t1.n, t2.n),
        lambda p: work.hausdorff_cost(work.ids(p), tau_gap),
        budget,
    )
    fallback = simple_lower_bounds(DistanceKind.TAU_H, t1, t2)
    return _finish_exact(DistanceKind.TAU_H, best, pairs, explored, exhausted, t1.n, t2.n, fallback)


def _pointed_scan(x1, p1, x2, p2, budget, kind):
    work = _Workspace(x1, x2)
    bp = (int(p1), int(p2))

    def cost(pairs):
        ids = work.ids(pairs)
        delta = work.distortion(ids) / 2.0
        cross = work.cross(ids, delta)
        return _maxmin(cross) + float(cross[bp])

    def stream():
        for pairs in _minimal_pair_tuples(x1.n, x2.n):
            if bp in pairs:
                yield pairs
            else:
                yield tuple(sorted(pairs + (bp,)))

    best, pairs, explored, exhausted = _scan(stream(), cost, budget)
    gh_floor = simple_lower_bounds(kind, x1, x2)
    if pairs is None:
        return DistanceResult(
            kind=kind,
            lower=gh_floor,
            upper=math.inf,
            is_exact=False,
            certificate=None,
            explored=explored,
            budget_exhausted=exhausted,
            anchor=bp,
        )
    upper = float(best)
    lower = min(max(gh_floor, upper / 2.0), upper)
    cert = Correspondence(n1=x1.n, n2=x2.n, pairs=pairs, minimal=pairs_are_minimal(pairs))
    return DistanceResult(
        kind=kind,
        lower=lower,
        upper=upper,
        is_exact=lower == upper,
        certificate=cert,
        explored=explored,
        budget_exhausted=exhausted,
        anchor=bp,
    )


def pointed_gh(
    x1: FiniteMetricSpace,
    p1: int,
    x2: FiniteMetricSpace,
    p2: int,
    budget: int = DEFAULT_BUDGET,
) -> DistanceResult:
    """Pointed Gromov-Hausdorff objective (Hausdorff plus basepoint distance),
    certified within a factor of two.

    Every gluing scanned is a genuine common embedding, so upper is achievable;
    a correspondence read back off any embedding of value v has distortion at
    most 2v, so the scan finds an objective at most 2v.  Hence the true value
    lies in [upper / 2, upper].
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if not (0 <= p1 < x1.n):
        raise InvalidBasepoint(f"basepoint {p1} outside [0, {x1.n})")
    if not (0 <= p2 < x2.n):
        raise InvalidBasepoint(f"basepoint {p2} outside [0, {x2.n})")
    return _pointed_scan(x1, p1, x2, p2, budget, DistanceKind.PT_GH)


def bb_gh(
    t1: TimedMetricSpace,
    t2: TimedMetricSpace,
    budget: int = DEFAULT_BUDGET,
    tol: float = DEFAULT_TOL,
) -> DistanceResult:
    """Pointed objective anchored at the big bang points of two big bang spaces."""
    if classify(t1, tol) is not SpaceClass.BIG_BANG:
        raise NotBigBang(1)
    if classify(t2, tol) is not SpaceClass.BIG_BANG:
        raise NotBigBang(2)
    p1 = structure_report(t1, delta=tol).zero_set[0]
    p2 = structure_report(t2, delta=tol).zero_set[0]
    result = _pointed_scan(t1.base, p1, t2.base, p2, budget, DistanceKind.BB_GH)
    return result


def fd_hh(
    t1: TimedMetricSpace,
    t2: TimedMetricSpace,
    budget: int = DEFAULT_BUDGET,
    tol: float = DEFAULT_TOL,
) -> DistanceResult:
    """Hausdorff-plus-zero-set objective for future developed spaces, certified
    within a factor of two by the same gluing argument as the pointed kind."""
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if classify(t1, tol) is SpaceClass.GENERIC:
        raise NotFutureDeveloped(1)
    if classify(t2, tol) is SpaceClass.GENERIC:
        raise NotFutureDeveloped(2)
    zeros1 = list(structure_report(t1, delta=tol).zero_set)
    zeros2 = list(structure_report(t2, delta=tol).zero_set)
    work = _Workspace(t1.base, t2.base)
    zsel = np.ix_(zeros1, zeros2)

    def cost(item):
        pairs, _ = item
        ids = work.ids(pairs)
        delta = work.distortion(ids) / 2.0
        cross = work.cross(ids, delta)
        return _maxmin(cross) + _maxmin(cross[zsel])

    zero_streams = [
        tuple((zeros1[a], zeros2[b]) for a, b in zp)
        for zp in _minimal_pair_tuples(len(zeros1), len(zeros2))
    ]

    def stream():
        for pairs in _minimal_pair_tuples(t1.n, t2.n):
            have = set(pairs)
            for zpairs in zero_streams:
                if have.issuperset(zpairs):
                    yield pairs, zpairs
                else:
                    yield tuple(sorted(have.union(zpairs))), zpairs

    best = math.inf
    best_pairs = None
    best_zero = None
    explored = 0
    exhausted = False
    for item in stream():
        if explored >= budget:
            exhausted = True
            break
        explored += 1
        value = cost(item)
        pairs, zpairs = item
        key = (pairs, zpairs)
        if value < best or (value == best and best_pairs is not None and key < (best_pairs, best_zero)):
            best, best_pairs, best_zero = value, pairs, zpairs
    gh_floor = simple_lower_bounds(DistanceKind.FD_HH, t1, t2)
    if best_pairs is None:
        return DistanceResult(
            kind=DistanceKind.FD_HH,
            lower=gh_floor,
            upper=math.inf,
            is_exact=False,
            certificate=None,
            explored=explored,
            budget_exhausted=exhausted,
        )
    upper = float(best)
    lower = min(max(gh_floor, upper / 2.0), upper)
    cert = Correspondence(
        n1=t1.n, n2=t2.n, pairs=best_pairs, minimal=pairs_are_minimal(best_pairs)
    )
    return DistanceResult(
        kind=DistanceKind.FD_HH,
        lower=lower,
        upper=upper,
        is_exact=lower == upper,
        certificate=cert,
        explored=explored,
        budget_exhausted=exhausted,
        zero_pairs=best_zero,
    )


def reevaluate(result: DistanceResult, a, b) -> float:
    """Recompute the certified upper value from the certificate alone."""
    if result.certificate is None:
        raise ValueError("result carries no certificate")
    corr = result.certificate
    if result.kind is DistanceKind.GH:
        return distortion(corr, _base_of(a), _base_of(b)) / 2.0
    if result.kind is DistanceKind.KAPPA_GH:
        return correspondence_hausdorff(corr, _base_of(a), _base_of(b))
    if result.kind is DistanceKind.TAU_H:
        return timed_correspondence_hausdorff(corr, a, b)
    if result.kind in (DistanceKind.PT_GH, DistanceKind.BB_GH):
        p1, p2 = result.anchor
        return pointed_glued_objective(corr, _base_of(a), p1, _base_of(b), p2)
    if result.kind is DistanceKind.FD_HH:
        zeros1 = [z for z, _ in result.zero_pairs]
        zeros2 = [z for _, z in result.zero_pairs]
        return fd_glued_objective(corr, a, b, sorted(set(zeros1)), sorted(set(zeros2)))
    raise ValueError(f"no certificate evaluation for kind {result.kind}")


# ---------------------------------------------------------------------------
# Heuristic upper bounds by local search.


def _kind_cost_fn(kind, a, b, basepoints, zeros):
    x1, x2 = _base_of(a), _base_of(b)
    work = _Workspace(x1, x2)
    if kind is DistanceKind.GH:
        return lambda pairs: work.distortion(work.ids(pairs)) / 2.0
    if kind is DistanceKind.KAPPA_GH:
        return lambda pairs: work.hausdorff_cost(work.ids(pairs))
    if kind is DistanceKind.TAU_H:
        tau_gap = np.abs(a.tau[:, None] - b.tau[None, :])
        return lambda pairs: work.hausdorff_cost(work.ids(pairs), tau_gap)
    if kind in (DistanceKind.PT_GH, DistanceKind.BB_GH):
        bp = basepoints

        def pointed(pairs):
            ids = work.ids(pairs)
            cross = work.cross(ids, work.distortion(ids) / 2.0)
            return _maxmin(cross) + float(cross[bp])

        return pointed
    if kind is DistanceKind.FD_HH:
        zsel = np.ix_(list(zeros[0]), list(zeros[1]))

        def fd(pairs):
            ids = work.ids(pairs)
            cross = work.cross(ids, work.distortion(ids) / 2.0)
            return _maxmin(cross) + _maxmin(cross[zsel])

        return fd
    raise ValueError(f"unsupported kind for local search: {kind}")


def _required_pairs(kind, basepoints) -> set:
    return {basepoints} if kind in (DistanceKind.PT_GH, DistanceKind.BB_GH) else set()


def _keeps_coverage(pairs: set, drop, n1, n2, zeros) -> bool:
    rest = [p for p in pairs if p != drop]
    if {a for a, _ in rest} != set(range(n1)) or {b for _, b in rest} != set(range(n2)):
        return False
    if zeros is not None:
        z1, z2 = set(zeros[0]), set(zeros[1])
        restricted = [(a, b) for a, b in rest if a in z1 and b in z2]
        if {a for a, _ in restricted} != z1 or {b for _, b in restricted} != z2:
            return False
    return True


def local_search_upper(
    kind: DistanceKind,
    a,
    b,
    seed: int,
    iterations: int = 200,
    basepoints: tuple[int, int] | None = None,
) -> DistanceResult:
    """Greedy descent over correspondences; a certified upper bound, never exact.

    Starts from the modular diagonal pairing (the identity when the spaces
    share a size) plus seeded random restarts; moves add a pair, drop a
    droppable pair, or swap one endpoint.  Deterministic for a given seed.
    """
    x1, x2 = _base_of(a), _base_of(b)
    n1, n2 = x1.n, x2.n
    zeros = None
    if kind is DistanceKind.FD_HH:
        zeros = (
            structure_report(a, delta=DEFAULT_TOL).zero_set,
            structure_report(b, delta=DEFAULT_TOL).zero_set,
        )
        if not zeros[0] or not zeros[1]:
            raise NotFutureDeveloped(1 if not zeros[0] else 2)
    if kind in (DistanceKind.PT_GH, DistanceKind.BB_GH):
        if basepoints is None:
            r1 = structure_report(a, delta=DEFAULT_TOL)
            r2 = structure_report(b, delta=DEFAULT_TOL)
            if len(r1.zero_set) != 1:
                raise NotBigBang(1)
            if len(r2.zero_set) != 1:
                raise NotBigBang(2)
            basepoints = (r1.zero_set[0], r2.zero_set[0])
    cost_fn = _kind_cost_fn(kind, a, b, basepoints, zeros)
    required = _required_pairs(kind, basepoints)
    rng = np.random.default_rng(np.random.SeedSequence([int(seed), n1, n2]))

    def start_diagonal():
        pairs = {(i, i % n2) for i in range(n1)} | {(j % n1, j) for j in range(n2)}
        return pairs | required | _zero_patch(pairs)

    def _zero_patch(pairs):
        if zeros is None:
            return set()
        z1, z2 = zeros
        extra = set()
        restricted = [(p, q) for p, q in pairs if p in set(z1) and q in set(z2)]
        for p in set(z1) - {x for x, _ in restricted}:
            extra.add((p, z2[0]))
        for q in set(z2) - {y for _, y in restricted}:
            extra.add((z1[0], q))
        return extra

    def start_random():
        pairs = {(i, int(rng.integers(n2))) for i in range(n1)}
        pairs |= {(int(rng.integers(n1)), j) for j in range(n2)}
        return pairs | required | _zero_patch(pairs)

    def neighbors(pairs: set):
        ordered = sorted(pairs)
        universe = [(i, j) for i in range(n1) for j in range(n2)]
        for q in universe:
            if q not in pairs:
                yield pairs | {q}
        for p in ordered:
            if p in required:
                continue
            if _keeps_coverage(pairs, p, n1, n2, zeros):
                yield pairs - {p}
        for p in ordered:
            if p in required:
                continue
            for q in universe:
                if q in pairs or (q[0] != p[0] and q[1] != p[1]):
                    continue
                cand = (pairs - {p}) | {q}
                if _keeps_coverage(cand | {p}, p, n1, n2, zeros):
                    yield cand

    best_value = math.inf
    best_pairs = None
    explored = 0
    starts = [start_diagonal()] + [start_random() for _ in range(3)]
    for current in starts:
        value = cost_fn(tuple(sorted(current)))
        explored += 1
        for _ in range(iterations):
            improved = None
            improved_value = value
            for cand in neighbors(current):
                cand_t = tuple(sorted(cand))
                explored += 1
                cv = cost_fn(cand_t)
                if cv < improved_value or (
                    cv == improved_value and improved is not None and cand_t < tuple(sorted(improved))
                ):
                    improved, improved_value = cand, cv
            if improved is None or improved_value >= value:
                break
            current, value = improved, improved_value
        key = tuple(sorted(current))
        if value < best_value or (value == best_value and key < best_pairs):
            best_value, best_pairs = value, key

    lower = simple_lower_bounds(kind, a, b)
    upper = float(best_value)
    cert = Correspondence(n1=n1, n2=n2, pairs=best_pairs, minimal=pairs_are_minimal(best_pairs))
    return DistanceResult(
        kind=kind,
        lower=min(lower, upper),
        upper=upper,
        is_exact=False,
        certificate=cert,
        explored=explored,
        budget_exhausted=False,
        anchor=basepoints if kind in (DistanceKind.PT_GH, DistanceKind.BB_GH) else None,
        zero_pairs=None,
    )


def require_exact(result: DistanceResult) -> DistanceResult:
    """Raise BudgetTooSmall unless the result is exact."""
    if not result.is_exact:
        raise BudgetTooSmall(
            f"{result.kind.value} search explored {result.explored} correspondences "
            "without certifying exactness"
        )
    return result
