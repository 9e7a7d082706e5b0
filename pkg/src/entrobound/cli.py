"""Command-line front end: bound computation, verification suites, region data.

Commands: ``entrobound bound``, ``entrobound verify <suite>``, and
``entrobound region``.  Every stochastic command requires an explicit
``--seed``; reports embed the tool version and the fully resolved
configuration, and identical configurations produce byte-identical JSON.
Exit codes: 0 success, 1 internal numeric failure or failed verification,
2 input error, 3 resource guard.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import asdict, dataclass

from . import __version__
from ._serialize import dumps_canonical
from .core import (
    InputError,
    ParameterError,
    ResourceGuardError,
    load_unitary,
    random_unitary,
)
from .entropy import LN2, Weights
from .bounds import (
    additivity_check,
    optimal_bound,
    three_pauli_counterexample,
    weight_sweep,
)
from .norms import multiplicativity_check
from .regions import (
    export_hull_json,
    export_samples_csv,
    minkowski_sum,
    positive_hull,
    sample_region,
    verify_hull_composition,
)

THREE_PAULI_SEED = 7


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved invocation parameters, embedded in every report."""

    command: str
    unitary_paths: tuple[str, ...]
    lam: float | None
    mu: float | None
    n_max_exponent: int
    restarts: int
    seed: int | None
    tol: float | None
    output_path: str | None
    log_base: str
    trials: int | None = None
    ratios: int | None = None
    samples: int | None = None
    p: float | None = None
    q: float | None = None


def _parse_exponent(text: str) -> float:
    if text.lower() in ("inf", "infinity"):
        return float("inf")
    try:
        return float(text)
    except ValueError as exc:
        raise ParameterError(f"cannot parse exponent {text!r}") from exc


def _exponent_field(p: float):
    # infinite exponents are symbolic; JSON has no inf literal
    return "inf" if p == float("inf") else p


def _scale(value: float, unit: str) -> float:
    return value * LN2 if unit == "nats" else value


def _tol_to_bits(tol: float, unit: str) -> float:
    return tol / LN2 if unit == "nats" else tol


def _emit(report: dict, out_path: str | None) -> None:
    text = dumps_canonical(report)
    sys.stdout.write(text + "\n")
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _report_skeleton(config: RunConfig) -> dict:
    return {
        "tool": {"name": "entrobound", "version": __version__},
        "config": asdict(config),
        "unit": config.log_base,
    }


def _cmd_bound(args) -> int:
    unit = "nats" if args.nats else "bits"
    config = RunConfig(
        command="bound",
        unitary_paths=tuple(args.unitary),
        lam=args.lam,
        mu=args.mu,
        n_max_exponent=args.n_max,
        restarts=args.restarts,
        seed=args.seed,
        tol=args.tol,
        output_path=args.out,
        log_base=unit,
    )
    if len(args.unitary) != 1:
        raise InputError("bound takes exactly one --unitary file")
    pair = load_unitary(args.unitary[0])
    w = Weights(args.lam, args.mu)
    res = optimal_bound(
        pair,
        w,
        n_max_exponent=args.n_max,
        restarts=args.restarts,
        seed=args.seed,
    )
    result = res.to_dict()
    for key in ("lower", "upper", "gap"):
        result[key] = _scale(result[key], unit)
    result["omega_trace"] = [[n, _scale(b, unit)] for n, b in result["omega_trace"]]
    report = _report_skeleton(config)
    report["result"] = result
    _emit(report, args.out)
    return 0


def _cmd_verify_additivity(args) -> int:
    unit = "nats" if args.nats else "bits"
    tol_bits = _tol_to_bits(args.tol, unit)
    config = RunConfig(
        command="verify additivity",
        unitary_paths=(),
        lam=None,
        mu=None,
        n_max_exponent=args.n_max,
        restarts=args.restarts,
        seed=args.seed,
        tol=args.tol,
        output_path=args.out,
        log_base=unit,
        trials=args.trials,
        ratios=args.ratios,
    )
    ratio_weights = weight_sweep(n_ratios=args.ratios, lo=0.25, hi=4.0, include_axes=False)
    checks = []
    all_pass = True
    for trial in range(args.trials):
        seed_a = args.seed + 2 * trial
        seed_b = args.seed + 2 * trial + 1
        a = random_unitary(2, seed_a)
        b = random_unitary(2, seed_b)
        w = ratio_weights[trial % len(ratio_weights)]
        rep = additivity_check(
            a,
            b,
            w,
            tol=tol_bits,
            seed=args.seed + 100 + trial,
            n_max_exponent=args.n_max,
            restarts=args.restarts,
        )
        all_pass &= rep.passed
        checks.append(
            {
                "trial": trial,
                "seed_a": seed_a,
                "seed_b": seed_b,
                "lambda": w.lam,
                "mu": w.mu,
                "c_a": _scale(rep.c_a, unit),
                "c_b": _scale(rep.c_b, unit),
                "c_ab": _scale(rep.c_ab, unit),
                "defect": _scale(rep.defect, unit),
                "witness_product_defect": _scale(rep.witness_product_defect, unit),
                "max_gap": _scale(max(rep.gap_a, rep.gap_b, rep.gap_ab), unit),
                "passed": rep.passed,
            }
        )
    report = _report_skeleton(config)
    report["result"] = {"checks": checks, "passed": all_pass}
    _emit(report, args.out)
    return 0 if all_pass else 1


def _cmd_verify_multiplicativity(args) -> int:
    p = _parse_exponent(args.p)
    q = _parse_exponent(args.q)
    config = RunConfig(
        command="verify multiplicativity",
        unitary_paths=(),
        lam=None,
        mu=None,
        n_max_exponent=args.n_max,
        restarts=args.restarts,
        seed=args.seed,
        tol=args.tol,
        output_path=args.out,
        log_base="bits",
        trials=args.trials,
        p=_exponent_field(p),
        q=_exponent_field(q),
    )
    checks = []
    all_pass = True
    for trial in range(args.trials):
        seed_a = args.seed + 2 * trial
        seed_b = args.seed + 2 * trial + 1
        a = random_unitary(2, seed_a)
        b = random_unitary(2, seed_b)
        rep = multiplicativity_check(
            a, b, p, q, tol=args.tol, restarts=args.restarts, seed=args.seed + trial
        )
        all_pass &= rep.passed
        checks.append(
            {
                "trial": trial,
                "seed_a": seed_a,
                "seed_b": seed_b,
                "eta_a": rep.eta_a,
                "eta_b": rep.eta_b,
                "eta_ab": rep.eta_ab,
                "defect": rep.defect,
                "passed": rep.passed,
            }
        )
    report = _report_skeleton(config)
    report["result"] = {"checks": checks, "passed": all_pass}
    _emit(report, args.out)
    return 0 if all_pass else 1


def _cmd_verify_hull(args) -> int:
    unit = "nats" if args.nats else "bits"
    tol_bits = _tol_to_bits(args.tol, unit)
    config = RunConfig(
        command="verify hull",
        unitary_paths=tuple(args.unitary or ()),
        lam=None,
        mu=None,
        n_max_exponent=args.n_max,
        restarts=args.restarts,
        seed=args.seed,
        tol=args.tol,
        output_path=args.out,
        log_base=unit,
        ratios=args.ratios,
    )
    if args.unitary:
        if len(args.unitary) != 2:
            raise InputError("verify hull takes exactly two --unitary files")
        a = load_unitary(args.unitary[0])
        b = load_unitary(args.unitary[1])
    else:
        a = random_unitary(2, args.seed)
        b = random_unitary(2, args.seed + 1)
    sweep = weight_sweep(n_ratios=args.ratios, include_axes=False)
    rep = verify_hull_composition(
        a,
        b,
        sweep,
        tol=tol_bits,
        n_max_exponent=args.n_max,
        restarts=args.restarts,
        seed=args.seed,
    )
    report = _report_skeleton(config)
    report["result"] = {
        "max_discrepancy": _scale(rep.max_discrepancy, unit),
        "discrepancies": [_scale(d, unit) for d in rep.discrepancies],
        "passed": rep.passed,
    }
    _emit(report, args.out)
    return 0 if rep.passed else 1


def _cmd_verify_three_pauli(args) -> int:
    unit = "nats" if args.nats else "bits"
    config = RunConfig(
        command="verify three-pauli",
        unitary_paths=(),
        lam=None,
        mu=None,
        n_max_exponent=args.n_max,
        restarts=args.restarts,
        seed=THREE_PAULI_SEED,
        tol=None,
        output_path=args.out,
        log_base=unit,
        samples=args.samples,
    )
    rep = three_pauli_counterexample(
        restarts=args.restarts, samples=args.samples, seed=THREE_PAULI_SEED
    )
    report = _report_skeleton(config)
    report["result"] = {
        "product_min": _scale(rep.product_min, unit),
        "bell_value": _scale(rep.bell_value, unit),
        "local_min": _scale(rep.local_min, unit),
        "sampled_local_min": _scale(rep.sampled_local_min, unit),
        "samples": rep.samples,
        "passed": rep.passed,
    }
    _emit(report, args.out)
    return 0 if rep.passed else 1


def _cmd_region(args) -> int:
    unit = "nats" if args.nats else "bits"
    config = RunConfig(
        command="region",
        unitary_paths=tuple(args.unitary or ()) + tuple(args.minkowski or ()),
        lam=None,
        mu=None,
        n_max_exponent=args.n_max,
        restarts=args.restarts,
        seed=args.seed,
        tol=None,
        output_path=args.out,
        log_base=unit,
        ratios=args.ratios,
        samples=args.samples,
    )
    sweep = weight_sweep(n_ratios=args.ratios)
    out_prefix = args.out
    if out_prefix is None:
        out_prefix = "region"
        sys.stderr.write(
            "entrobound: no --out given, writing region artifacts to the "
            "working directory under prefix 'region'\n"
        )
    report = _report_skeleton(config)
    if args.minkowski:
        if len(args.minkowski) != 2 or args.unitary:
            raise InputError("--minkowski takes exactly two unitary files")
        a = load_unitary(args.minkowski[0])
        b = load_unitary(args.minkowski[1])
        hull_a = positive_hull(
            a, sweep, n_max_exponent=args.n_max, restarts=args.restarts, seed=args.seed
        )
        hull_b = positive_hull(
            b, sweep, n_max_exponent=args.n_max, restarts=args.restarts, seed=args.seed
        )
        hull = minkowski_sum(hull_a, hull_b)
        hull_path = f"{out_prefix}.json"
        export_hull_json(hull, hull_path)
        report["result"] = {"hull_path": hull_path, "tangents": len(hull.tangents)}
        _emit(report, None)
        return 0
    if not args.unitary or len(args.unitary) != 1:
        raise InputError("region takes exactly one --unitary file (or --minkowski)")
    pair = load_unitary(args.unitary[0])
    points = sample_region(pair, args.samples, args.seed)
    hull = positive_hull(
        pair, sweep, n_max_exponent=args.n_max, restarts=args.restarts, seed=args.seed
    )
    csv_path = f"{out_prefix}.csv"
    hull_path = f"{out_prefix}.json"
    export_samples_csv(points, csv_path)
    export_hull_json(hull, hull_path)
    report["result"] = {
        "samples_path": csv_path,
        "hull_path": hull_path,
        "rows": len(points),
        "tangents": len(hull.tangents),
    }
    _emit(report, None)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entrobound",
        description="Bracketed bounds for weighted entropic uncertainty of "
        "projective measurement pairs.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, seed_required=True):
        sp.add_argument("--N-max", dest="n_max", type=int, default=10,
                        help="largest schedule exponent K (N runs over 2..2^K)")
        sp.add_argument("--restarts", type=int, default=32)
        sp.add_argument("--seed", type=int, required=seed_required,
                        help="seed for all randomized steps (mandatory)")
        sp.add_argument("--out", type=str, default=None)
        sp.add_argument("--nats", action="store_true",
                        help="report in natural-log units, thresholds rescaled by ln 2")

    p_bound = sub.add_parser("bound", help="bracket the optimal constant for one pair")
    p_bound.add_argument("--unitary", action="append", required=True)
    p_bound.add_argument("--lambda", dest="lam", type=float, required=True)
    p_bound.add_argument("--mu", type=float, required=True)
    p_bound.add_argument("--tol", type=float, default=1e-4)
    common(p_bound)
    p_bound.set_defaults(func=_cmd_bound)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    v_sub = p_verify.add_subparsers(dest="suite", required=True)

    v_add = v_sub.add_parser("additivity")
    v_add.add_argument("--trials", type=int, default=20)
    v_add.add_argument("--ratios", type=int, default=5)
    v_add.add_argument("--tol", type=float, default=1e-4)
    common(v_add)
    v_add.set_defaults(func=_cmd_verify_additivity)

    v_mult = v_sub.add_parser("multiplicativity")
    v_mult.add_argument("--p", type=str, required=True)
    v_mult.add_argument("--q", type=str, required=True)
    v_mult.add_argument("--trials", type=int, default=10)
    v_mult.add_argument("--tol", type=float, default=1e-6)
    common(v_mult)
    v_mult.set_defaults(func=_cmd_verify_multiplicativity)

    v_hull = v_sub.add_parser("hull")
    v_hull.add_argument("--unitary", action="append")
    v_hull.add_argument("--ratios", type=int, default=16)
    v_hull.add_argument("--tol", type=float, default=1e-3)
    common(v_hull)
    v_hull.set_defaults(func=_cmd_verify_hull)

    v_3p = v_sub.add_parser("three-pauli")
    v_3p.add_argument("--samples", type=int, default=100_000)
    common(v_3p, seed_required=False)
    v_3p.set_defaults(func=_cmd_verify_three_pauli)

    p_region = sub.add_parser("region", help="sample an uncertainty region and its hull")
    p_region.add_argument("--unitary", action="append")
    p_region.add_argument("--minkowski", nargs=2, metavar=("A", "B"),
                          help="compose the hulls of two unitary files")
    p_region.add_argument("-n", "--samples", type=int, default=5000)
    p_region.add_argument("--ratios", type=int, default=64)
    common(p_region)
    p_region.set_defaults(func=_cmd_region)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ParameterError) as exc:
        sys.stderr.write(f"entrobound: input error: {exc}\n")
        return 2
    except ResourceGuardError as exc:
        sys.stderr.write(f"entrobound: resource guard: {exc}\n")
        return 3
    except Exception as exc:  # numeric or internal failure
        sys.stderr.write(f"entrobound: internal error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
