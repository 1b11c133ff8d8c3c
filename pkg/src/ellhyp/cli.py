"""Command-line front end: ``ellhyp eval FUNC ARGS`` and ``ellhyp check SUITE``."""

from __future__ import annotations

import argparse
import json
import sys

from .numerics import EllipticContext, EllipticError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_EVAL = 0, 1, 2, 3

# built-in defaults; a config file overrides these and flags override the file
DEFAULTS = {"seed": 0, "trials": None, "tol": 1e-9, "p": "0.2+0.15i", "q": "0.3-0.2i",
            "json": None, "no_timestamp": False, "workers": 4}


def parse_complex(text: str) -> complex:
    """Accepts "re", "re+imi" (or j, or "imi" alone) and "re,im"."""
    s = text.strip().replace(" ", "")
    if "," in s:
        parts = s.split(",")
        if len(parts) != 2:
            raise ValueError(f"bad complex number {text!r}")
        return complex(float(parts[0]), float(parts[1]))
    try:
        return complex(s.replace("i", "j"))
    except ValueError:
        raise ValueError(f"bad complex number {text!r}") from None


def format_complex(z) -> str:
    z = complex(z)
    return f"{float(f'{z.real:.15g}')!r} {float(f'{z.imag:.15g}')!r}"


# ---------------------------------------------------------------- eval

def _int(text):
    return int(text)


# name -> (parameter list, evaluator). A parameter ending in "*" may repeat.
def _eval_theta(a, ctx):
    from .theta import theta
    return theta(a["x"], a["p"], ctx)


def _eval_efac(a, ctx):
    from .toolkit import efac
    return efac(a["a"], a["k"], ctx)


def _eval_egamma(a, ctx):
    from .gamma import egamma
    return egamma(a["x"], a.get("p"), a.get("q"), ctx)


def _eval_esum(a, ctx):
    from .series import SeriesSpec, e_sum
    return e_sum(SeriesSpec("E", a["n"], a["a"], a["b"], z=a.get("z", 1)), ctx)


def _eval_vsum(a, ctx):
    from .series import v_sum
    return v_sum(a["a"], a["b"], a["n"], ctx)


def _eval_rfn(a, ctx):
    from .biorthogonal import r_fn
    return r_fn(a["k"], a["x"], tuple(a[c] for c in "abcdef"), ctx)


def _eval_sos_weight(a, ctx):
    from .sos import R
    return R(a["lam"], a["k"], a["l"], a["m"], a["n"], a["u"], ctx)


def _eval_fused_weight(a, ctx):
    from .sos import FusedWeightSpec, fused_weight
    return fused_weight(FusedWeightSpec(a["M"], a["N"], a["a"], a["b"], a["c"], a["d"], a["u"]), ctx)


def _eval_beta_integral(a, ctx):
    from .beta_integral import IntegralSpec, integrate
    t = [a[f"t{j}"] for j in range(5)]
    prod = 1 + 0j
    for x in t:
        prod *= x
    spec = IntegralSpec(t + [ctx.p * ctx.q / prod], ctx.p, ctx.q)
    spec.validate()
    return integrate(spec, ctx)


FUNCTIONS = {
    "theta": ([("x", complex), ("p", complex)], _eval_theta,
              "theta(x; p); p defaults to --p"),
    "efac": ([("a", complex), ("k", _int)], _eval_efac, "(a; q, p)_k"),
    "egamma": ([("x", complex), ("p", complex), ("q", complex)], _eval_egamma,
               "Gamma(x; p, q); p and q default to --p and --q"),
    "esum": ([("n", _int), ("a*", complex), ("b*", complex), ("z", complex)], _eval_esum,
             "terminating E-sum; repeat a=... and b=... for each parameter"),
    "vsum": ([("a", complex), ("n", _int), ("b*", complex)], _eval_vsum,
             "very-well-poised V-sum; repeat b=... for each parameter"),
    "rfn": ([("k", _int), ("x", complex)] + [(c, complex) for c in "abcdef"], _eval_rfn,
            "biorthogonal rational function r_k(x; a, b, c, d, e, f)"),
    "sos_weight": ([("lam", complex), ("k", _int), ("l", _int), ("m", _int), ("n", _int), ("u", complex)],
                   _eval_sos_weight, "SOS weight R^{mn}_{kl}(lam | u)"),
    "fused_weight": ([("M", _int), ("N", _int)] + [(c, complex) for c in "abcd"] + [("u", complex)],
                     _eval_fused_weight, "fused weight W_MN(a b; c d | u)"),
    "beta_integral": ([(f"t{j}", complex) for j in range(5)], _eval_beta_integral,
                      "elliptic beta integral over |x| = 1; t5 solved from t0...t5 = pq"),
}


def bind_arguments(fname: str, tokens: list[str]) -> dict:
    """Positional tokens fill parameters in order; key=value tokens fill by name."""
    params, _, _ = FUNCTIONS[fname]
    kinds = {name.rstrip("*"): (conv, name.endswith("*")) for name, conv in params}
    order = [name.rstrip("*") for name, _ in params]
    out: dict = {}
    pos = 0
    for tok in tokens:
        if "=" in tok:
            key, val = tok.split("=", 1)
            if key not in kinds:
                raise ValueError(f"{fname} has no parameter {key!r}")
        else:
            if pos >= len(order):
                raise ValueError(f"too many positional arguments for {fname}")
            key, val = order[pos], tok
            if not kinds[key][1]:
                pos += 1
        conv, repeat = kinds[key]
        value = parse_complex(val) if conv is complex else conv(val)
        if repeat:
            out.setdefault(key, []).append(value)
        elif key in out:
            raise ValueError(f"parameter {key!r} given twice")
        else:
            out[key] = value
    for key, (conv, repeat) in kinds.items():
        if repeat:
            out.setdefault(key, [])
    return out


def _fill_defaults(fname, args, ctx):
    if fname == "theta":
        args.setdefault("p", ctx.p)
    missing = [name.rstrip("*") for name, _ in FUNCTIONS[fname][0]
               if not name.endswith("*") and name not in args and not (fname == "egamma" and name in "pq")
               and not (fname == "esum" and name == "z")]
    if missing:
        raise ValueError(f"{fname} is missing {', '.join(missing)}")


# ---------------------------------------------------------------- config and parser

def read_config(path: str) -> dict:
    out = {}
    with open(path) as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{line_no}: expected key=value")
            key, val = (s.strip() for s in line.split("=", 1))
            key = key.lstrip("-").replace("-", "_")
            if key not in DEFAULTS:
                raise ValueError(f"{path}:{line_no}: unknown key {key!r}")
            out[key] = val
    return out


def _settings(ns) -> dict:
    merged = dict(DEFAULTS)
    if ns.config:
        merged.update(read_config(ns.config))
    for key in DEFAULTS:
        val = getattr(ns, key, None)
        if val is not None and val is not False:
            merged[key] = val
    merged["seed"] = int(merged["seed"])
    merged["trials"] = None if merged["trials"] in (None, "") else int(merged["trials"])
    merged["tol"] = float(merged["tol"])
    merged["workers"] = int(merged["workers"])
    flag = merged["no_timestamp"]
    merged["no_timestamp"] = flag if isinstance(flag, bool) else str(flag).lower() in ("1", "true", "yes")
    merged["p"] = parse_complex(str(merged["p"])) if not isinstance(merged["p"], complex) else merged["p"]
    merged["q"] = parse_complex(str(merged["q"])) if not isinstance(merged["q"], complex) else merged["q"]
    return merged


def build_parser() -> argparse.ArgumentParser:
    from .suites import SUITES

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="RNG seed (default 0)")
    common.add_argument("--trials", type=int, help="seeded trials per suite (default: per suite)")
    common.add_argument("--tol", type=float, help="relative tolerance (default 1e-9)")
    common.add_argument("--p", type=parse_complex, help="elliptic nome p, e.g. 0.2+0.15i or 0.2,0.15")
    common.add_argument("--q", type=parse_complex, help="base q")
    common.add_argument("--json", metavar="PATH", help="write the suite report as JSON")
    common.add_argument("--no-timestamp", action="store_true", default=None,
                        help="zero wall_ms so identical runs give identical reports")
    common.add_argument("--workers", type=int, help="threads used for trials (default 4)")
    common.add_argument("--config", metavar="FILE", help="key=value file mirroring these flags")

    parser = argparse.ArgumentParser(prog="ellhyp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    ev = sub.add_parser("eval", parents=[common], help="evaluate one function",
                        formatter_class=argparse.RawDescriptionHelpFormatter,
                        epilog="\n".join(f"  {n:14s} {' '.join(p for p, _ in spec[0])}  -- {spec[2]}"
                                         for n, spec in FUNCTIONS.items()))
    ev.add_argument("function", choices=sorted(FUNCTIONS))
    ev.add_argument("args", nargs="*", help="positional values or key=value")
    ck = sub.add_parser("check", parents=[common], help="run an identity suite")
    ck.add_argument("suite", choices=sorted(SUITES) + ["all"])
    return parser


# ---------------------------------------------------------------- commands

def cmd_eval(ns, settings, parser) -> int:
    try:
        args = bind_arguments(ns.function, ns.args)
        ctx = EllipticContext(p=settings["p"], q=settings["q"], tol=settings["tol"], rng_seed=settings["seed"])
        _fill_defaults(ns.function, args, ctx)
    except ValueError as exc:
        if isinstance(exc, EllipticError):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_EVAL
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        value = FUNCTIONS[ns.function][1](args, ctx)
    except (EllipticError, ZeroDivisionError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EVAL
    print(format_complex(value))
    return EXIT_OK


def cmd_check(ns, settings) -> int:
    from .suites import run_suite

    try:
        ctx = EllipticContext(p=settings["p"], q=settings["q"], tol=settings["tol"], rng_seed=settings["seed"])
    except EllipticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EVAL
    report = run_suite(ns.suite, ctx, settings["trials"], settings["workers"])
    summary = {}
    for rec in report.records:
        tot, ok, worst = summary.get(rec.id, (0, 0, 0.0))
        ratio = rec.residual / rec.scale if rec.residual is not None and rec.scale else float("inf")
        summary[rec.id] = (tot + 1, ok + rec.passed, max(worst, ratio) if rec.residual is not None else worst)
    for cid, (tot, ok, worst) in summary.items():
        print(f"{'PASS' if ok == tot else 'FAIL'} {cid}: {ok}/{tot} worst residual/scale {worst:.2e}")
    print(f"{report.suite}: {report.passed}/{len(report.records)} passed")
    if settings["json"]:
        with open(settings["json"], "w") as fh:
            json.dump(report.to_dict(timestamp=not settings["no_timestamp"]), fh, indent=1)
            fh.write("\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        settings = _settings(ns)
    except (OSError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if ns.command == "eval":
        return cmd_eval(ns, settings, parser)
    return cmd_check(ns, settings)


if __name__ == "__main__":
    sys.exit(main())
