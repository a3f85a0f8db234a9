"""Campaigns that check the distance inequalities on seeded random spaces.

Every suite draws its spaces from the seeded generators, computes exact
distances, and emits self-contained report rows.  A row records the two sides
of one inequality; slack = rhs - lhs, and an asserting row passes when
slack >= -tol.  Observational rows (ratio logging) always pass and exist so
reports capture the measured constants.

Trials are independent, so they may run on a thread pool; rows are ordered by
trial id regardless of completion order, which keeps reports byte-identical
across thread counts.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .constructions import (
    SequenceSpec,
    build_sequence,
    enumerations_from_correspondence,
    glue_by_correspondence,
    random_metric_space,
    random_time_function,
)
from .embeddings import frechet_embed, hausdorff_in, hausdorff_sup, timed_frechet_embed
from .engine import (
    DEFAULT_BUDGET,
    DistanceKind,
    DistanceResult,
    bb_gh,
    distortion,
    fd_hh,
    gh_distance,
    kappa_gh_distance,
    tau_h_distance,
)
from .errors import BudgetTooSmall, InvalidSpec
from .spaces import (
    DEFAULT_TOL,
    SpaceClass,
    TimedMetricSpace,
    build_metric_space,
    build_timed_space,
    classify,
    structure_report,
)

SUITES = (
    "sandwich",
    "order",
    "bb",
    "fd",
    "limits",
    "certificates",
    "triangle-explore",
    "all",
)

_SUITE_IDS = {name: k for k, name in enumerate(SUITES[:-1], start=1)}

EXACT_NMAX = 4
SAMPLE_COUNT = 1000


@dataclass(frozen=True)
class CampaignConfig:
    suite: str
    trials: int = 100
    nmax: int = 4
    seed: int = 0
    tol: float = 1e-7
    budget: int = DEFAULT_BUDGET


@dataclass(frozen=True)
class ReportRow:
    """One checked (or observed) inequality, re-runnable from its fields."""

    suite: str
    trial: int
    check: str
    n1: int
    n2: int
    class1: str
    class2: str
    seed: int
    lhs: float
    rhs: float
    slack: float
    passed: bool
    details: str

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "trial": self.trial,
            "check": self.check,
            "n1": self.n1,
            "n2": self.n2,
            "class1": self.class1,
            "class2": self.class2,
            "seed": self.seed,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "passed": self.passed,
            "details": self.details,
        }


def _class_name(space) -> str:
    if isinstance(space, TimedMetricSpace):
        return classify(space).value
    return "metric"


def _details(**kwargs) -> str:
    plain = {}
    for key, value in kwargs.items():
        if isinstance(value, (np.floating, np.integer)):
            value = value.item()
        plain[key] = value
    return json.dumps(plain, sort_keys=True)


def _make_row(suite, trial, check, a, b, seed, lhs, rhs, tol, asserted=True, **extra):
    lhs = float(lhs)
    rhs = float(rhs)
    slack = rhs - lhs
    return ReportRow(
        suite=suite,
        trial=trial,
        check=check,
        n1=a.n if a is not None else 0,
        n2=b.n if b is not None else 0,
        class1=_class_name(a) if a is not None else "",
        class2=_class_name(b) if b is not None else "",
        seed=seed,
        lhs=lhs,
        rhs=rhs,
        slack=slack,
        passed=bool(slack >= -tol) if asserted else True,
        details=_details(**extra),
    )


def _complete(result: DistanceResult) -> DistanceResult:
    if result.budget_exhausted:
        raise BudgetTooSmall(
            f"{result.kind.value}: enumeration stopped after {result.explored} "
            "correspondences; raise the budget or lower nmax"
        )
    return result


def _trial_rng(cfg: CampaignConfig, suite: str, trial: int) -> np.random.Generator:
    return np.random.default_rng(
        np.random.SeedSequence([cfg.seed, _SUITE_IDS[suite], trial])
    )


def _child_seed(rng: np.random.Generator) -> int:
    return int(rng.integers(0, 2**62))


def _random_pair_sizes(rng: np.random.Generator, nmax: int) -> tuple[int, int]:
    return int(rng.integers(1, nmax + 1)), int(rng.integers(1, nmax + 1))


def _random_space(rng: np.random.Generator, nmax: int, n: int | None = None):
    model = "euclidean" if rng.integers(2) == 0 else "graph"
    size = int(rng.integers(1, nmax + 1)) if n is None else n
    seed = _child_seed(rng)
    return random_metric_space(seed, size, model=model), model, seed


def _random_timed(rng: np.random.Generator, nmax: int, time_model: str | None = None):
    space, model, seed = _random_space(rng, nmax)
    if time_model is None:
        time_model = ("cone", "set-cone", "mcshane")[int(rng.integers(3))]
    tseed = _child_seed(rng)
    subset_size = int(rng.integers(1, space.n + 1))
    timed = random_time_function(
        tseed, space, model=time_model, subset_size=subset_size, anchors=min(3, space.n)
    )
    return timed, {"model": model, "seed": seed, "time": time_model, "tseed": tseed}


def _worked_bb_pair() -> tuple[TimedMetricSpace, TimedMetricSpace]:
    two = build_metric_space(("p", "x"), np.array([[0.0, 1.0], [1.0, 0.0]]))
    one = build_metric_space(("q",), np.zeros((1, 1)))
    return (
        build_timed_space(two, np.array([0.0, 1.0])),
        build_timed_space(one, np.zeros(1)),
    )


# ---------------------------------------------------------------------------
# Per-suite trial bodies.  Each returns the rows for one trial.


def _chain_row(suite, trial, check, a, b, seed, values, tol, **extra):
    """Row for a chain v0 <= v1 <= ... reporting the tightest adjacent link."""
    gaps = [(values[k + 1] - values[k], k) for k in range(len(values) - 1)]
    _, k = min(gaps)
    return _make_row(
        suite, trial, check, a, b, seed, values[k], values[k + 1], tol, **extra
    )


def _sandwich_trial(cfg: CampaignConfig, trial: int) -> list[ReportRow]:
    rng = _trial_rng(cfg, "sandwich", trial)
    x1, m1, s1 = _random_space(rng, cfg.nmax)
    x2, m2, s2 = _random_space(rng, cfg.nmax)
    gh = _complete(gh_distance(x1, x2, budget=cfg.budget))
    kappa = _complete(kappa_gh_distance(x1, x2, budget=cfg.budget))
    row = _chain_row(
        "sandwich",
        trial,
        "gh<=kappa<=2gh",
        x1,
        x2,
        cfg.seed,
        [gh.upper, kappa.upper, 2.0 * gh.upper],
        cfg.tol,
        gh=gh.upper,
        kappa=kappa.upper,
        models=[m1, m2],
        seeds=[s1, s2],
    )
    return [row]


def _order_trial(cfg: CampaignConfig, trial: int) -> list[ReportRow]:
    rng = _trial_rng(cfg, "order", trial)
    t1, info1 = _random_timed(rng, cfg.nmax)
    t2, info2 = _random_timed(rng, cfg.nmax)
    gh = _complete(gh_distance(t1.base, t2.base, budget=cfg.budget))
    kappa = _complete(kappa_gh_distance(t1.base, t2.base, budget=cfg.budget))
    tau = _complete(tau_h_distance(t1, t2, budget=cfg.budget))
    row = _chain_row(
        "order",
        trial,
        "gh<=kappa<=tau-h",
        t1,
        t2,
        cfg.seed,
        [gh.upper, kappa.upper, tau.upper],
        cfg.tol,
        gh=gh.upper,
        kappa=kappa.upper,
        tau_h=tau.upper,
        gen=[info1, info2],
    )
    return [row]


def _bb_trial(cfg: CampaignConfig, trial: int) -> list[ReportRow]:
    if trial == 0:
        t1, t2 = _worked_bb_pair()
        gen = "worked-pair"
    else:
        rng = _trial_rng(cfg, "bb", trial)
        t1, info1 = _random_timed(rng, cfg.nmax, time_model="cone")
        t2, info2 = _random_timed(rng, cfg.nmax, time_model="cone")
        gen = [info1, info2]
    tau = _complete(tau_h_distance(t1, t2, budget=cfg.budget))
    approx = _complete(bb_gh(t1, t2, budget=cfg.budget))
    row = _make_row(
        "bb",
        trial,
        "tau-h<=2*bb-gh-upper",
        t1,
        t2,
        cfg.seed,
        tau.upper,
        2.0 * approx.upper,
        cfg.tol,
        tau_h=tau.upper,
        bb_lower=approx.lower,
        bb_upper=approx.upper,
        gen=gen,
    )
    return [row]


def _fd_trial(cfg: CampaignConfig, trial: int) -> list[ReportRow]:
    rng = _trial_rng(cfg, "fd", trial)
    t1, info1 = _random_timed(rng, cfg.nmax, time_model="set-cone")
    t2, info2 = _random_timed(rng, cfg.nmax, time_model="set-cone")
    tau = _complete(tau_h_distance(t1, t2, budget=cfg.budget))
    approx = _complete(fd_hh(t1, t2, budget=cfg.budget))
    row = _make_row(
        "fd",
        trial,
        "tau-h<=2*fd-hh-upper",
        t1,
        t2,
        cfg.seed,
        tau.upper,
        2.0 * approx.upper,
        cfg.tol,
        tau_h=tau.upper,
        fd_lower=approx.lower,
        fd_upper=approx.upper,
        gen=[info1, info2],
    )
    return [row]


def _limits_trial(cfg: CampaignConfig, trial: int) -> list[ReportRow]:
    rng = _trial_rng(cfg, "limits", trial)
    rows = []

    # Bang side: X exactly big bang, Y with a nonempty exact zero set.
    x_bb, info_x = _random_timed(rng, cfg.nmax, time_model="cone")
    y1, info_y1 = _random_timed(rng, cfg.nmax, time_model="set-cone")
    eps = _complete(tau_h_distance(x_bb, y1, budget=cfg.budget)).upper
    report = structure_report(y1, delta=0.0)
    zeros = np.array(report.zero_set, dtype=int)
    spread = float(np.abs(y1.tau[None, :] - y1.d[zeros, :]).max())
    rows.append(
        _make_row(
            "limits", trial, "zero-diam<=4eps", x_bb, y1, cfg.seed,
            report.zero_diam, 4.0 * eps, cfg.tol,
            eps=eps, gen=[info_x, info_y1],
        )
    )
    rows.append(
        _make_row(
            "limits", trial, "tau-vs-dist<=4eps", x_bb, y1, cfg.seed,
            spread, 4.0 * eps, cfg.tol,
            eps=eps, gen=[info_x, info_y1],
        )
    )
    ratio = spread / eps if eps > 0 else 0.0
    rows.append(
        _make_row(
            "limits", trial, "bb-ratio-observed", x_bb, y1, cfg.seed,
            spread, 4.0 * eps, cfg.tol, asserted=False,
            eps=eps, ratio=ratio,
        )
    )

    # Developed side: X exactly future developed, Y arbitrary.
    x_fd, info_x2 = _random_timed(rng, cfg.nmax, time_model="set-cone")
    y2, info_y2 = _random_timed(rng, cfg.nmax, time_model="mcshane")
    eps2 = _complete(tau_h_distance(x_fd, y2, budget=cfg.budget)).upper
    admissible = y2.tau <= eps2 + cfg.tol
    if admissible.any():
        gaps = np.abs(y2.tau[None, :] - y2.d[admissible, :])
        worst = float(gaps.min(axis=0).max())
    else:
        worst = math.inf
    rows.append(
        _make_row(
            "limits", trial, "fd-witness<=3eps", x_fd, y2, cfg.seed,
            worst, 3.0 * eps2, cfg.tol,
            eps=eps2, gen=[info_x2, info_y2],
        )
    )
    return rows


def _sample_enumeration_costs(rng, d1, d2, tau1, tau2, count):
    """Hausdorff costs of `count` random covering enumeration pairs.

    Each sample pairs a shuffled full listing of one side with uniform picks
    from the other, so both listings cover and the induced pair set is a
    correspondence; the minimum over samples can therefore never undercut the
    engine's optimum.
    """
    n1, n2 = d1.shape[0], d2.shape[0]
    m = n1 + n2
    e1 = np.empty((count, m), dtype=int)
    e2 = np.empty((count, m), dtype=int)
    e1[:, :n1] = rng.permuted(np.tile(np.arange(n1), (count, 1)), axis=1)
    e1[:, n1:] = rng.integers(0, n1, size=(count, n2))
    e2[:, :n1] = rng.integers(0, n2, size=(count, n1))
    e2[:, n1:] = rng.permuted(np.tile(np.arange(n2), (count, 1)), axis=1)
    rho = np.abs(d1[e1][:, :, :, None] - d2[e2][:, :, None, :]).max(axis=1)
    if tau1 is not None:
        rho = np.maximum(rho, np.abs(tau1[:, None] - tau2[None, :])[None, :, :])
    return np.maximum(rho.min(axis=2).max(axis=1), rho.min(axis=1).max(axis=1))


def _certificates_trial(cfg: CampaignConfig, trial: int) -> list[ReportRow]:
    rng = _trial_rng(cfg, "certificates", trial)
    x1, m1, s1 = _random_space(rng, cfg.nmax)
    x2, m2, s2 = _random_space(rng, cfg.nmax)
    t1, info1 = _random_timed(rng, cfg.nmax)
    t2, info2 = _random_timed(rng, cfg.nmax)
    rows = []

    kappa = _complete(kappa_gh_distance(x1, x2, budget=cfg.budget))
    e1, e2 = enumerations_from_correspondence(kappa.certificate)
    cert = hausdorff_sup(frechet_embed(x1, e1), frechet_embed(x2, e2))
    rows.append(
        _make_row(
            "certificates", trial, "kappa-cert-equal", x1, x2, cfg.seed,
            abs(cert - kappa.upper), 1e-12, cfg.tol,
            kappa=kappa.upper, cert=cert, models=[m1, m2], seeds=[s1, s2],
        )
    )

    tau = _complete(tau_h_distance(t1, t2, budget=cfg.budget))
    f1, f2 = enumerations_from_correspondence(tau.certificate)
    tcert = hausdorff_sup(timed_frechet_embed(t1, f1), timed_frechet_embed(t2, f2))
    rows.append(
        _make_row(
            "certificates", trial, "tau-cert-equal", t1, t2, cfg.seed,
            abs(tcert - tau.upper), 1e-12, cfg.tol,
            tau_h=tau.upper, cert=tcert, gen=[info1, info2],
        )
    )

    gh = _complete(gh_distance(x1, x2, budget=cfg.budget))
    dis = distortion(gh.certificate, x1, x2)
    delta = max(dis / 2.0, 10.0 * DEFAULT_TOL)
    glued = glue_by_correspondence(x1, x2, gh.certificate, delta)
    inside = hausdorff_in(glued.space, glued.inject1, glued.inject2)
    rows.append(
        _make_row(
            "certificates", trial, "glued-hausdorff<=delta", x1, x2, cfg.seed,
            inside, delta + 1e-12, cfg.tol,
            gh=gh.upper, delta=delta,
        )
    )

    kappa_samples = _sample_enumeration_costs(
        rng, x1.d, x2.d, None, None, SAMPLE_COUNT
    )
    rows.append(
        _make_row(
            "certificates", trial, "kappa-samples-no-better", x1, x2, cfg.seed,
            kappa.upper, float(kappa_samples.min()) + 1e-12, cfg.tol,
            samples=SAMPLE_COUNT,
        )
    )
    tau_samples = _sample_enumeration_costs(
        rng, t1.d, t2.d, t1.tau, t2.tau, SAMPLE_COUNT
    )
    rows.append(
        _make_row(
            "certificates", trial, "tau-samples-no-better", t1, t2, cfg.seed,
            tau.upper, float(tau_samples.min()) + 1e-12, cfg.tol,
            samples=SAMPLE_COUNT,
        )
    )
    return rows


def _triangle_trial(cfg: CampaignConfig, trial: int) -> list[ReportRow]:
    rng = _trial_rng(cfg, "triangle-explore", trial)
    ta, info_a = _random_timed(rng, cfg.nmax)
    tb, info_b = _random_timed(rng, cfg.nmax)
    tc, info_c = _random_timed(rng, cfg.nmax)
    v_ab = _complete(tau_h_distance(ta, tb, budget=cfg.budget)).upper
    v_bc = _complete(tau_h_distance(tb, tc, budget=cfg.budget)).upper
    v_ac = _complete(tau_h_distance(ta, tc, budget=cfg.budget)).upper
    denom = v_ab + v_bc
    ratio = v_ac / denom if denom > 0 else (0.0 if v_ac == 0 else math.inf)
    row = _make_row(
        "triangle-explore", trial, "triangle-ratio-observed", ta, tc, cfg.seed,
        v_ac, denom, cfg.tol, asserted=False,
        ab=v_ab, bc=v_bc, ac=v_ac, ratio=ratio,
        gen=[info_a, info_b, info_c],
    )
    return [row]


_TRIAL_BODIES = {
    "sandwich": _sandwich_trial,
    "order": _order_trial,
    "bb": _bb_trial,
    "fd": _fd_trial,
    "limits": _limits_trial,
    "certificates": _certificates_trial,
    "triangle-explore": _triangle_trial,
}


def _check_config(cfg: CampaignConfig) -> None:
    if cfg.suite not in SUITES:
        raise InvalidSpec(f"unknown suite {cfg.suite!r}; choose from {', '.join(SUITES)}")
    if cfg.trials < 1 or cfg.nmax < 1 or cfg.tol <= 0:
        raise InvalidSpec("trials and nmax must be >= 1 and tol > 0")
    if cfg.nmax > EXACT_NMAX:
        raise BudgetTooSmall(
            f"suites need exact distances, which caps nmax at {EXACT_NMAX} "
            f"(got {cfg.nmax})"
        )


def run_suite(cfg: CampaignConfig, threads: int = 1) -> list[ReportRow]:
    """Run one suite (or all of them); rows are ordered by suite then trial."""
    _check_config(cfg)
    names = SUITES[:-1] if cfg.suite == "all" else (cfg.suite,)
    rows: list[ReportRow] = []
    for name in names:
        body = _TRIAL_BODIES[name]
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                parts = list(pool.map(lambda t: body(cfg, t), range(cfg.trials)))
        else:
            parts = [body(cfg, t) for t in range(cfg.trials)]
        for part in parts:
            rows.extend(part)
    return rows


# ---------------------------------------------------------------------------
# Sequence experiments.


@dataclass(frozen=True)
class SequenceRow:
    """Distances of one sequence element to the designated limit."""

    family: str
    j: int
    n: int
    space_class: str
    fd_defect: float
    bb_defect: float
    gh_lower: float
    gh_upper: float
    tau_h: float
    bb_gh_lower: float | None
    bb_gh_upper: float | None
    bound: float
    slack: float
    passed: bool
    details: str

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "j": self.j,
            "n": self.n,
            "space_class": self.space_class,
            "fd_defect": self.fd_defect,
            "bb_defect": self.bb_defect,
            "gh_lower": self.gh_lower,
            "gh_upper": self.gh_upper,
            "tau_h": self.tau_h,
            "bb_gh_lower": self.bb_gh_lower,
            "bb_gh_upper": self.bb_gh_upper,
            "bound": self.bound,
            "slack": self.slack,
            "passed": self.passed,
            "details": self.details,
        }


_SEQUENCE_KINDS = (DistanceKind.GH, DistanceKind.TAU_H, DistanceKind.BB_GH)


def _normalize_kinds(kinds) -> tuple[DistanceKind, ...]:
    if kinds is None:
        return _SEQUENCE_KINDS
    out = []
    for k in kinds:
        out.append(k if isinstance(k, DistanceKind) else DistanceKind(k))
    return tuple(out)


def run_sequence_experiment(
    spec: SequenceSpec,
    kinds=None,
    tol: float = 1e-7,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> list[SequenceRow]:
    """Distances from each element to the limit, with per-row decay checks.

    Checks applied (each only when its inputs are available): gh <= tau-h;
    tau-h <= 2 * bb-gh upper when both spaces are exactly big bang; the decay
    envelope tau-h(T_j) <= C * rate^j, where C is calibrated from the first
    element for the noise family and from the base's latest time for the
    time-collapse family; a nonincreasing tau-h envelope for the refinement
    family.
    """
    kinds = _normalize_kinds(kinds)
    elements, limit = build_sequence(spec)
    limit_is_bb = classify(limit) is SpaceClass.BIG_BANG

    def measure(args):
        j, element = args
        report = structure_report(element, delta=0.0)
        values: dict = {}
        if DistanceKind.GH in kinds:
            values["gh"] = _complete(gh_distance(element.base, limit.base, budget=budget))
        values["tau"] = _complete(tau_h_distance(element, limit, budget=budget))
        if (
            DistanceKind.BB_GH in kinds
            and limit_is_bb
            and classify(element) is SpaceClass.BIG_BANG
        ):
            values["bb"] = _complete(bb_gh(element, limit, budget=budget))
        return j, element, report, values

    items = list(enumerate(elements))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            measured = list(pool.map(measure, items))
    else:
        measured = [measure(item) for item in items]

    if spec.family == "perturb-geometric":
        calibration = measured[0][3]["tau"].upper
    elif spec.family == "collapse-time":
        calibration = spec.base.tau_max
    else:
        calibration = None

    rows: list[SequenceRow] = []
    previous_tau = math.inf
    for j, element, report, values in measured:
        tau = values["tau"].upper
        checks: dict[str, float] = {}
        if "gh" in values:
            checks["gh<=tau-h"] = tau - values["gh"].upper
        if "bb" in values:
            checks["tau-h<=2*bb-upper"] = 2.0 * values["bb"].upper - tau
        if calibration is not None:
            bound = calibration * spec.rate**j
            checks["decay-envelope"] = bound - tau
        else:
            bound = tau if j == 0 else previous_tau
            checks["nonincreasing"] = bound - tau
        slack = min(checks.values()) if checks else 0.0
        rows.append(
            SequenceRow(
                family=spec.family,
                j=j,
                n=element.n,
                space_class=classify(element).value,
                fd_defect=float(report.fd_defect),
                bb_defect=float(report.bb_defect),
                gh_lower=float(values["gh"].lower) if "gh" in values else math.nan,
                gh_upper=float(values["gh"].upper) if "gh" in values else math.nan,
                tau_h=float(tau),
                bb_gh_lower=float(values["bb"].lower) if "bb" in values else None,
                bb_gh_upper=float(values["bb"].upper) if "bb" in values else None,
                bound=float(bound),
                slack=float(slack),
                passed=bool(slack >= -tol),
                details=_details(
                    checks={k: float(v) for k, v in checks.items()},
                    rate=spec.rate,
                    seed=spec.seed,
                ),
            )
        )
        previous_tau = tau
    return rows


__all__ = [
    "CampaignConfig",
    "ReportRow",
    "SequenceRow",
    "SUITES",
    "run_sequence_experiment",
    "run_suite",
]
