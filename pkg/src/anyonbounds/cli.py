"""Command-line front end.

    anyonbounds bound SUBJECT [flags]   one bound or constant, optionally as JSON
    anyonbounds fig FIGURE [flags]      regenerate a figure dataset as CSV
    anyonbounds verify SUITE [flags]    randomized property suites

Exit codes: 0 ok, 1 a property failed, 2 usage error, 3 domain error,
4 file I/O error.
"""
import argparse
import json
import math
import sys
from fractions import Fraction

from . import bounds, figures, verification
from .config import DomainError
from .geometry import ParticleConfig
from .neumann import g_value
from .potential import PotentialProfile, verify_main_radial_bound
from .runner import WORKERS_ENV, RunManifest
from .special import j_prime_zero, k_alpha
from .statistics import alpha_n, alpha_star, parse_alpha

EXIT_OK, EXIT_PROPERTY, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3, 4

SUBJECTS = ("gas", "gas-ideal", "e-sr", "e-lr", "temple", "soft-core", "f-ideal", "g",
            "alpha-star", "k-alpha", "j-prime")


def _alpha(text):
    try:
        return parse_alpha(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _alpha_list(text):
    return [_alpha(x) for x in text.split(",") if x.strip()]


def _count(text):
    if text.lower() in ("inf", "infinity"):
        return None
    return int(text)


def _need(args, *names):
    for name in names:
        if getattr(args, name.replace("-", "_")) is None:
            raise DomainError(f"--{name} is required for this subject")


def _fmt(x):
    return str(x) if isinstance(x, Fraction) else format(float(x), ".17g")


def _eigen_dict(res):
    return {"value": res.value, "bracket": [res.bracket_lo, res.bracket_hi],
            "residual": res.residual, "iterations": res.iterations, "meta": res.meta}


def evaluate_bound(args):
    """Returns (printed value, JSON-ready dict) for one ``bound`` subject."""
    s = args.subject
    if s == "gas":
        _need(args, "alpha", "gamma-bar")
        rep = bounds.gas_lower_bound(bounds.GasParameters(args.alpha, args.gamma_bar, args.C,
                                                          args.c), args.n_total)
    elif s == "gas-ideal":
        _need(args, "alpha")
        rep = bounds.gas_ideal_lower(args.alpha)
    elif s == "e-sr":
        _need(args, "alpha", "gamma")
        rep = bounds.e_sr(args.alpha, args.gamma, args.n if args.n is not None else 1)
    elif s == "e-lr":
        _need(args, "alpha", "gamma")
        rep = bounds.e_lr(args.alpha, args.gamma, args.n_total)
    elif s == "temple":
        _need(args, "alpha", "gamma", "n", "kappa")
        rep = bounds.temple_soft_core(args.alpha, args.gamma, args.n, args.kappa)
    elif s == "soft-core":
        _need(args, "alpha", "gamma-bar", "epsilon")
        rep = bounds.soft_core_gas_bound(args.alpha, args.gamma_bar, args.epsilon)
    elif s == "f-ideal":
        _need(args, "t")
        rep = bounds.f_ideal(args.t, args.method)
    elif s == "g":
        _need(args, "nu", "gamma")
        res = g_value(args.nu, args.gamma)
        return res.value, _eigen_dict(res)
    elif s == "j-prime":
        _need(args, "nu")
        res = j_prime_zero(args.nu)
        return res.value, _eigen_dict(res)
    elif s == "alpha-star":
        _need(args, "alpha")
        value = alpha_star(args.alpha) if args.n_total is None else alpha_n(args.alpha, args.n_total)
        return value, {"value": str(value), "alpha": str(args.alpha), "n_total": args.n_total}
    elif s == "k-alpha":
        _need(args, "alpha")
        value = k_alpha(float(args.alpha))
        return value, {"value": value, "alpha": str(args.alpha)}
    else:
        raise DomainError(f"unknown subject {s!r}")
    return rep.value, rep.to_dict()


def cmd_bound(args, out):
    value, report = evaluate_bound(args)
    if args.json:
        out.write(json.dumps(report, default=str, sort_keys=True) + "\n")
    else:
        out.write(_fmt(value) + "\n")
    return EXIT_OK


def _load_config(path):
    with open(path) as fh:
        return ParticleConfig.from_json(fh.read())


def build_dataset(args):
    f = args.figure
    if f == "energy-vs-gamma":
        return figures.energy_vs_gamma(args.alphas, args.points, args.gamma_min, args.gamma_max,
                                       args.log_x, args.C if args.C is not None else 1.0,
                                       args.c if args.c is not None else 1 / math.sqrt(3),
                                       args.workers)
    if f in ("rho-trace", "counting-trace"):
        r_max = args.r_max
        if args.config_file:
            cfg = _load_config(args.config_file)
        else:
            cfg = figures.default_config(args.layout, args.n, args.l_over_r, args.seed)
            if r_max is None:
                span = args.l_over_r or (60.0 if args.layout == "clustered" else 20.0)
                r_max = span * cfg.disk_radius
        default_alpha = Fraction(1, 3) if f == "rho-trace" else Fraction(3, 7)
        alpha = args.alpha if args.alpha is not None else (cfg.alpha or default_alpha)
        if f == "rho-trace":
            return figures.rho_trace(cfg, alpha, args.points, r_max)
        return figures.counting_trace(cfg, alpha, args.low, args.high, args.points)
    if f == "f-compare":
        return figures.f_compare(args.nu_max, args.points, args.workers)
    if f == "g-dilation":
        return figures.g_dilation(args.nu, args.gamma, args.points)
    if f == "ideal-vs-alpha":
        return figures.ideal_vs_alpha(args.max_den, args.workers)
    raise DomainError(f"unknown figure {f!r}")


def cmd_fig(args, out):
    data = build_dataset(args)
    manifest = RunManifest.capture(args.seed, ["anyonbounds"] + list(args.argv))
    if args.out:
        data.write(args.out, manifest)
        out.write(f"wrote {data.rows} rows to {args.out}\n")
    else:
        out.write(data.to_csv(manifest))
    return EXIT_OK


def cmd_verify(args, out):
    if args.cases < 1:
        raise DomainError(f"--cases must be >= 1, got {args.cases}")
    if args.config_file:
        if args.suite != "radial-bound":
            raise DomainError("--config-file applies to the radial-bound suite only")
        cfg = _load_config(args.config_file)
        alpha = args.alpha if args.alpha is not None else (cfg.alpha or Fraction(1, 3))
        rep = verify_main_radial_bound(PotentialProfile(cfg, alpha), kappa=args.kappa)
        summary = {"suite": "radial-bound", "config_file": args.config_file, "ok": rep.ok,
                   "lhs": rep.lhs, "rhs": rep.rhs, "tolerance": rep.tolerance}
        if not rep.ok:
            summary["first_counterexample"] = {"config": cfg.to_dict(),
                                               "minimizer": rep.details.get("rhs_minimizer")}
        out.write(json.dumps(summary, default=str) + "\n")
        return EXIT_OK if rep.ok else EXIT_PROPERTY
    suites = verification.SUITES if args.suite == "all" else (args.suite,)
    reports = []
    for name in suites:
        rep = verification.run_suite(name, args.cases, args.seed, args.workers)
        reports.append(rep)
        if not args.json:
            status = "PASS" if rep.ok else "FAIL"
            out.write(f"{status} {name}: {rep.passed}/{rep.cases} cases "
                      f"(seed {rep.seed}, {rep.elapsed:.2f} s)\n")
            if rep.failures:
                out.write("  first counterexample: "
                          + json.dumps(rep.failures[0], default=str) + "\n")
    ok = all(r.ok for r in reports)
    if args.json:
        summary = {"ok": ok, "seed": args.seed, "cases": args.cases,
                   "suites": [r.to_dict() for r in reports]}
        out.write(json.dumps(summary, default=str) + "\n")
    return EXIT_OK if ok else EXIT_PROPERTY


def build_parser():
    parser = argparse.ArgumentParser(
        prog="anyonbounds", allow_abbrev=False,
        description="Energy lower bounds for the extended anyon gas.",
        epilog=f"Worker processes default to ${WORKERS_ENV} (1 when unset).")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bound", allow_abbrev=False, help="evaluate one bound or constant")
    b.add_argument("subject", choices=SUBJECTS)
    b.add_argument("--alpha", type=_alpha, help='statistics parameter, "p/q" or decimal')
    b.add_argument("--gamma-bar", type=float)
    b.add_argument("--gamma", type=float)
    b.add_argument("--n", type=int, help="particles in the box (e-sr, temple)")
    b.add_argument("--n-total", type=_count, default=None,
                   help="total particle number N, or inf (default)")
    b.add_argument("--kappa", type=float)
    b.add_argument("--epsilon", type=float)
    b.add_argument("--t", type=float)
    b.add_argument("--nu", type=float)
    b.add_argument("--method", default="best",
                   choices=("projection-fixed", "projection-opt", "temple-opt", "best"))
    b.add_argument("--C", type=float, default=bounds.GAS_CONSTANT)
    b.add_argument("--c", type=float, default=bounds.LR_CONSTANT)
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bound)

    f = sub.add_parser("fig", allow_abbrev=False, help="write a figure dataset as CSV")
    f.add_argument("figure", choices=figures.FIGURES)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--out", help="output path (stdout when omitted)")
    f.add_argument("--points", type=int, default=400)
    f.add_argument("--alphas", type=_alpha_list,
                   default=[Fraction(1, 3), Fraction(2, 3), Fraction(1), Fraction(2), Fraction(3)])
    f.add_argument("--alpha", type=_alpha)
    f.add_argument("--gamma-min", type=float, default=1e-3)
    f.add_argument("--gamma-max", type=float, default=3.0)
    f.add_argument("--log-x", action="store_true")
    f.add_argument("--C", type=float)
    f.add_argument("--c", type=float)
    f.add_argument("--n", type=int)
    f.add_argument("--l-over-r", type=float)
    f.add_argument("--r-max", type=float, help="end of the rho-trace range (default L)")
    f.add_argument("--layout", choices=("uniform", "clustered"), default="uniform")
    f.add_argument("--config-file")
    f.add_argument("--low", type=float, default=12.0)
    f.add_argument("--high", type=float, default=30.0)
    f.add_argument("--nu-max", type=float, default=1.0)
    f.add_argument("--nu", type=float, default=1.0)
    f.add_argument("--gamma", type=float, default=0.5)
    f.add_argument("--max-den", type=int, default=40)
    f.add_argument("--workers", type=int)
    f.set_defaults(func=cmd_fig)

    v = sub.add_parser("verify", allow_abbrev=False, help="run property suites")
    v.add_argument("suite", choices=verification.SUITES + ("all",))
    v.add_argument("--cases", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json", action="store_true")
    v.add_argument("--config-file")
    v.add_argument("--alpha", type=_alpha)
    v.add_argument("--kappa", type=float, default=0.5)
    v.add_argument("--workers", type=int)
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    args.argv = argv
    try:
        return args.func(args, out)
    except DomainError as exc:
        sys.stderr.write(f"anyonbounds: domain error: {exc}\n")
        return EXIT_DOMAIN
    except OSError as exc:
        sys.stderr.write(f"anyonbounds: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
