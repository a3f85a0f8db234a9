"""Command line front end.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 assertion
failure.  argparse handles usage errors itself; everything the space
validator rejects maps to 1; campaign and sequence runs that complete but
contain a failing check map to 3.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .constructions import (
    SEQUENCE_FAMILIES,
    SequenceSpec,
    random_metric_space,
    random_time_function,
)
from .engine import (
    DEFAULT_BUDGET,
    DistanceKind,
    bb_gh,
    fd_hh,
    gh_distance,
    kappa_gh_distance,
    pointed_gh,
    tau_h_distance,
)
from .errors import (
    BudgetTooSmall,
    InvalidSpec,
    ParseError,
    SchemaError,
    TmlError,
    ValidationError,
)
from .harness import SUITES, CampaignConfig, run_sequence_experiment, run_suite
from .io import read_space, write_report, write_space
from .spaces import DEFAULT_TOL, TimedMetricSpace, classify, structure_report

_USAGE_ERRORS = (InvalidSpec, BudgetTooSmall, ValueError)


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _load(path):
    return read_space(path)


def _load_timed(path) -> TimedMetricSpace:
    space = read_space(path)
    if not isinstance(space, TimedMetricSpace):
        raise SchemaError(f"{path}: this command needs a timed space ('tau' missing)")
    return space


# ---------------------------------------------------------------------------
# Subcommand bodies.


def _cmd_validate(args) -> int:
    space = _load(args.file)
    if isinstance(space, TimedMetricSpace):
        print(f"valid timed metric space with {space.n} point(s), class {classify(space).value}")
    else:
        print(f"valid metric space with {space.n} point(s)")
    return 0


def _cmd_classify(args) -> int:
    space = _load(args.file)
    if not isinstance(space, TimedMetricSpace):
        print("class: metric (no time function)")
        return 0
    report = structure_report(space, delta=args.tol)
    print(f"class: {classify(space, tol=args.tol).value}")
    names = ", ".join(space.labels[i] for i in report.zero_set)
    print(f"zero_set: [{names}]")
    print(f"zero_diam: {report.zero_diam}")
    print(f"fd_defect: {report.fd_defect}")
    print(f"bb_defect: {report.bb_defect}")
    print(f"min_tau: {report.min_tau}")
    return 0


def _index_of_label(space, label: str) -> int:
    base = space.base if isinstance(space, TimedMetricSpace) else space
    if label not in base.labels:
        raise InvalidSpec(f"no point labeled {label!r}; labels: {', '.join(base.labels)}")
    return base.labels.index(label)


def _cmd_dist(args) -> int:
    a = _load(args.a)
    b = _load(args.b)
    kind = DistanceKind(args.kind)
    timed_kinds = (DistanceKind.TAU_H, DistanceKind.BB_GH, DistanceKind.FD_HH)
    if kind in timed_kinds:
        for path, space in ((args.a, a), (args.b, b)):
            if not isinstance(space, TimedMetricSpace):
                raise SchemaError(f"{path}: {kind.value} needs a timed space")
    base_a = a.base if isinstance(a, TimedMetricSpace) else a
    base_b = b.base if isinstance(b, TimedMetricSpace) else b

    if kind is DistanceKind.GH:
        result = gh_distance(base_a, base_b, budget=args.budget)
    elif kind is DistanceKind.KAPPA_GH:
        result = kappa_gh_distance(base_a, base_b, budget=args.budget)
    elif kind is DistanceKind.TAU_H:
        result = tau_h_distance(a, b, budget=args.budget)
    elif kind is DistanceKind.PT_GH:
        if args.p1 is None or args.p2 is None:
            raise InvalidSpec("pt-gh needs --p1 and --p2 basepoint labels")
        result = pointed_gh(
            base_a, _index_of_label(a, args.p1), base_b, _index_of_label(b, args.p2),
            budget=args.budget,
        )
    elif kind is DistanceKind.BB_GH:
        result = bb_gh(a, b, budget=args.budget, tol=args.tol)
    else:
        result = fd_hh(a, b, budget=args.budget, tol=args.tol)

    pairs = list(result.certificate.pairs) if result.certificate else []
    named = [[base_a.labels[i], base_b.labels[j]] for i, j in pairs]
    if args.json:
        payload = {
            "kind": kind.value,
            "lower": result.lower,
            "upper": result.upper,
            "exact": result.is_exact,
            "certificate": named,
            "explored": result.explored,
            "budget_exhausted": result.budget_exhausted,
        }
        if result.anchor is not None:
            payload["anchor"] = [base_a.labels[result.anchor[0]], base_b.labels[result.anchor[1]]]
        if result.zero_pairs is not None:
            payload["zero_pairs"] = [
                [base_a.labels[i], base_b.labels[j]] for i, j in result.zero_pairs
            ]
        print(json.dumps(payload))
    else:
        print(f"kind: {kind.value}")
        print(f"lower: {result.lower}")
        print(f"upper: {result.upper}")
        print(f"exact: {'true' if result.is_exact else 'false'}")
        print("certificate: " + "; ".join(f"{x}<->{y}" for x, y in named))
        if result.anchor is not None:
            print(f"anchor: {base_a.labels[result.anchor[0]]}<->{base_b.labels[result.anchor[1]]}")
        if result.budget_exhausted:
            print(f"note: enumeration budget hit after {result.explored} correspondences")
    return 0


def _cmd_gen(args) -> int:
    space = random_metric_space(args.seed, args.n, model=args.model, dim=args.dim)
    name = f"{args.model}-n{args.n}-s{args.seed}"
    if args.time == "none":
        write_space(space, args.output, name=name)
    else:
        timed = random_time_function(
            args.seed, space, model=args.time,
            subset_size=args.subset_size, anchors=args.anchors,
        )
        write_space(timed, args.output, name=f"{name}-{args.time}")
    print(f"wrote {args.output}")
    return 0


def _print_failures(rows) -> None:
    for row in rows:
        if not row.passed:
            d = row.as_dict()
            repro = ", ".join(f"{k}={d[k]}" for k in ("suite", "trial", "check", "seed", "n1", "n2"))
            print(f"FAIL {repro} details={d['details']}", file=sys.stderr)


def _cmd_campaign(args) -> int:
    cfg = CampaignConfig(
        suite=args.suite,
        trials=args.trials,
        nmax=args.nmax,
        seed=args.seed,
        tol=args.tol,
        budget=args.budget,
    )
    rows = run_suite(cfg, threads=args.threads)
    write_report([r.as_dict() for r in rows], args.out, fmt=args.format)
    failed = sum(1 for r in rows if not r.passed)
    print(f"suite {args.suite}: {len(rows)} rows, {len(rows) - failed} passed, {failed} failed")
    print(f"wrote {args.out}")
    if failed:
        _print_failures(rows)
        return 3
    return 0


def _cmd_sequence(args) -> int:
    base = _load_timed(args.base)
    spec = SequenceSpec(
        family=args.family, base=base, length=args.length, rate=args.rate, seed=args.seed
    )
    rows = run_sequence_experiment(spec, budget=args.budget, threads=args.threads)
    write_report([r.as_dict() for r in rows], args.out, fmt=args.format)
    failed = sum(1 for r in rows if not r.passed)
    print(f"family {args.family}: {len(rows)} rows, {len(rows) - failed} passed, {failed} failed")
    print(f"wrote {args.out}")
    if failed:
        for row in rows:
            if not row.passed:
                print(f"FAIL j={row.j} slack={row.slack} details={row.details}", file=sys.stderr)
        return 3
    return 0


# ---------------------------------------------------------------------------
# Parser.


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tml",
        description="Distances between finite timed metric spaces, with certificates.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a space file against all axioms")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("classify", help="print the structural class and defects")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("dist", help="compute a distance between two space files")
    p.add_argument("--kind", required=True, choices=[k.value for k in DistanceKind if k.value != "hausdorff"])
    p.add_argument("a", metavar="A")
    p.add_argument("b", metavar="B")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--p1", help="basepoint label in A (pt-gh)")
    p.add_argument("--p2", help="basepoint label in B (pt-gh)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_dist)

    p = sub.add_parser("gen", help="generate a seeded random space file")
    p.add_argument("--model", choices=["euclidean", "graph"], default="euclidean")
    p.add_argument("--time", choices=["cone", "set-cone", "mcshane", "none"], default="none")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--subset-size", type=int, default=2)
    p.add_argument("--anchors", type=int, default=3)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("campaign", help="run a property-check suite and write a report")
    p.add_argument("--suite", required=True, choices=list(SUITES))
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--nmax", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    p.set_defaults(func=_cmd_campaign)

    p = sub.add_parser("sequence", help="distances from sequence elements to their limit")
    p.add_argument("--family", required=True, choices=list(SEQUENCE_FAMILIES))
    p.add_argument("--base", required=True)
    p.add_argument("--length", type=int, default=6)
    p.add_argument("--rate", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    p.set_defaults(func=_cmd_sequence)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, ParseError, SchemaError) as err:
        return _fail(str(err), 1)
    except _USAGE_ERRORS as err:
        return _fail(str(err), 2)
    except TmlError as err:
        return _fail(str(err), 1)


if __name__ == "__main__":
    sys.exit(main())
