"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 bad input (parse or
precondition), 3 guardrail refusal, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .analyzer import (
    DEFAULT_GUARDRAIL,
    GuardrailError,
    PreconditionError,
    ThickeningQuery,
    Variety,
    fpt_estimate,
    is_injective,
    minimal_t,
    nu,
)
from .checks import CHECKS, verify_named
from .cohomology import LevelError
from .ideals import InvariantViolation, is_smooth_projective_ci, regular_sequence_probe, smoothness_degree_bound
from .linalg import PrimeModulus
from .parser import PolyParseError
from .polyring import ShapeError

SWEEP_COLUMNS = ["p", "t", "twist", "domain_dim", "rank", "injective", "elapsed_ms"]


class UsageError(ValueError):
    pass


def _int_list(text):
    out = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _generator_texts(args):
    texts = list(args.poly or [])
    if args.ideal:
        texts.extend(t for t in args.ideal.split(",") if t.strip())
    n = args.n
    primes = _int_list(args.p) if args.p else []
    if args.variety:
        with open(args.variety) as fh:
            data = json.load(fh)
        texts = texts or list(data["generators"])
        n = data.get("n", n) if n is None else n
        if not primes and "p" in data:
            primes = [data["p"]] if isinstance(data["p"], int) else list(data["p"])
    if getattr(args, "family", None) == "fermat":
        if args.degree is None:
            raise UsageError("--family fermat needs --degree")
        texts = texts or [" + ".join(f"x{i}^{args.degree}" for i in range(n + 1))]
    if n is None:
        raise UsageError("the number of projective coordinates --n is required")
    if not texts:
        raise UsageError("no equations given (use --poly, --ideal or --variety)")
    if not primes:
        raise UsageError("no prime given (use --p)")
    for p in primes:
        PrimeModulus(p)
    return n, primes, texts


def _workers(args):
    if args.threads:
        return args.threads
    env = os.environ.get("FROBTHICK_THREADS")
    return int(env) if env else 1


def _run_grid(fn, tasks, workers):
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def _analyze_task(task):
    n, p, texts, t, twist, mode, level, guardrail = task
    v = Variety.parse(n, p, texts)
    return is_injective(v, ThickeningQuery(t, twist, mode), level=level, guardrail=guardrail).to_dict()


def _minimal_t_task(task):
    n, p, texts, twist, mode, check, guardrail = task
    v = Variety.parse(n, p, texts)
    start = time.perf_counter()
    t = minimal_t(v, twist, mode, check_monotone=check, guardrail=guardrail)
    return {
        "variety": v.to_dict(),
        "query": {"twist": twist, "mode": mode},
        "result": {"t_min": t},
        "elapsed_ms": round((time.perf_counter() - start) * 1000, 3),
    }


def _fpt_task(task):
    n, p, texts, e = task
    v = Variety.parse(n, p, texts)
    if v.c != 1:
        raise UsageError("fpt takes a single polynomial")
    start = time.perf_counter()
    f = v.generators[0]
    k = nu(f, e)
    return {
        "variety": v.to_dict(),
        "query": {"e": e},
        "result": {"nu": k, "fpt_estimate": str(fpt_estimate(f, e))},
        "elapsed_ms": round((time.perf_counter() - start) * 1000, 3),
    }


def _smooth_task(task):
    n, p, texts = task
    v = Variety.parse(n, p, texts)
    start = time.perf_counter()
    smooth = is_smooth_projective_ci(v.generators)
    probe = regular_sequence_probe(v.generators) if v.c > 1 else None
    return {
        "variety": v.to_dict(),
        "query": {},
        "result": {
            "smooth": smooth,
            "degree_bound": smoothness_degree_bound(n, v.degrees),
            "regular_sequence_probe": probe,
        },
        "elapsed_ms": round((time.perf_counter() - start) * 1000, 3),
    }


def _guardrail(args):
    return None if args.force else args.guardrail


def _emit(reports, args, out):
    fmt = args.format
    if fmt == "json":
        for r in reports:
            out.write(json.dumps(r) + "\n")
    elif fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(SWEEP_COLUMNS)
        for r in reports:
            res = r["result"]
            writer.writerow(
                [r["variety"]["p"], r["query"]["t"], r["query"]["twist"], res["domain_dim"], res["rank"],
                 str(res["injective"]).lower(), r["elapsed_ms"]]
            )
    else:
        for r in reports:
            var = r["variety"]
            head = f"p={var['p']} n={var['n']} [{'; '.join(var['generators'])}]"
            query = " ".join(f"{k}={v}" for k, v in r["query"].items())
            result = " ".join(f"{k}={json.dumps(v)}" for k, v in r["result"].items())
            out.write(f"{head} {query} -> {result}\n")


def cmd_analyze(args):
    n, primes, texts = _generator_texts(args)
    ts = _int_list(args.t)
    tasks = [(n, p, texts, t, args.twist, args.mode, args.level, _guardrail(args)) for p in primes for t in ts]
    return _run_grid(_analyze_task, tasks, _workers(args)), 0


def cmd_minimal_t(args):
    n, primes, texts = _generator_texts(args)
    tasks = [(n, p, texts, args.twist, args.mode, args.check_monotone, _guardrail(args)) for p in primes]
    return _run_grid(_minimal_t_task, tasks, _workers(args)), 0


def cmd_sweep(args):
    n, primes, texts = _generator_texts(args)
    tasks = []
    for p in primes:
        ts = _int_list(args.t_range) if args.t_range else range(1, p + 1)
        tasks.extend((n, p, texts, t, args.twist, args.mode, None, _guardrail(args)) for t in ts if t <= p)
    return _run_grid(_analyze_task, tasks, _workers(args)), 0


def cmd_fpt(args):
    n, primes, texts = _generator_texts(args)
    return _run_grid(_fpt_task, [(n, p, texts, args.e) for p in primes], _workers(args)), 0


def cmd_smooth(args):
    n, primes, texts = _generator_texts(args)
    return _run_grid(_smooth_task, [(n, p, texts) for p in primes], _workers(args)), 0


def cmd_verify(args):
    params = {}
    if args.p:
        params["p"] = _int_list(args.p)
    if args.n is not None:
        params["n"] = [args.n]
    if args.d:
        params["d"] = _int_list(args.d)
    if args.random is not None:
        params["random"] = args.random
    params["seed"] = args.seed
    ids = list(CHECKS) if args.check == "all" else [args.check]
    reports = []
    for check_id in ids:
        result = verify_named(check_id, params)
        reports.append(result.to_dict())
    code = 0 if all(r["passed"] for r in reports) else 1
    return reports, code


def _emit_verify(reports, args, out):
    if args.format == "json":
        for r in reports:
            out.write(json.dumps(r) + "\n")
        return
    for r in reports:
        out.write(f"{r['check']}: {'PASS' if r['passed'] else 'FAIL'}\n")
        for line in r["transcript"]:
            out.write(f"  {line}\n")


def build_parser():
    parser = argparse.ArgumentParser(prog="frobthick", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, default_format="json"):
        sp.add_argument("--n", type=int, help="projective dimension (ring has x0..xn)")
        sp.add_argument("--p", help="prime or comma list of primes")
        sp.add_argument("--poly", action="append", help="defining equation; repeat for several")
        sp.add_argument("--ideal", help="comma-separated defining equations")
        sp.add_argument("--variety", help="JSON file with n, p and generators")
        sp.add_argument("--format", choices=["json", "text", "csv"], default=default_format)
        sp.add_argument("--out", help="write the output to this file")
        sp.add_argument("--threads", type=int, help="worker processes (env FROBTHICK_THREADS)")
        sp.add_argument("--force", action="store_true", help="ignore the size guardrail")
        sp.add_argument("--guardrail", type=int, default=DEFAULT_GUARDRAIL, help="codomain monomial ceiling")

    sp = sub.add_parser("analyze", help="injectivity report for given t")
    common(sp)
    sp.add_argument("--t", required=True, help="thickening exponent, list or range a-b")
    sp.add_argument("--twist", type=int, default=0)
    sp.add_argument("--mode", choices=["bracket", "power"], default="bracket")
    sp.add_argument("--level", type=int, help="Cech level override")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("minimal-t", help="least injective thickening exponent")
    common(sp)
    sp.add_argument("--twist", type=int, default=0)
    sp.add_argument("--mode", choices=["bracket", "power"], default="bracket")
    sp.add_argument("--check-monotone", action="store_true", help="also scan every t")
    sp.set_defaults(func=cmd_minimal_t)

    sp = sub.add_parser("sweep", help="CSV table over primes and t")
    common(sp, default_format="csv")
    sp.add_argument("--p-list", dest="p_list", help="comma list of primes")
    sp.add_argument("--family", choices=["fermat"], help="generate the Fermat hypersurface")
    sp.add_argument("--degree", type=int, help="degree for --family")
    sp.add_argument("--t-range", help="t values, e.g. 1-5 (default 1..p)")
    sp.add_argument("--twist", type=int, default=0)
    sp.add_argument("--mode", choices=["bracket", "power"], default="bracket")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("fpt", help="nu_f(p^e) and the F-pure threshold approximant")
    common(sp)
    sp.add_argument("--e", type=int, default=1)
    sp.set_defaults(func=cmd_fpt)

    sp = sub.add_parser("smooth", help="Jacobian-criterion smoothness certificate")
    common(sp)
    sp.set_defaults(func=cmd_smooth)

    sp = sub.add_parser("verify", help="run a named verification")
    sp.add_argument("check", choices=sorted(CHECKS) + ["all"])
    sp.add_argument("--p", help="comma list of primes")
    sp.add_argument("--n", type=int)
    sp.add_argument("--d", help="comma list of degrees")
    sp.add_argument("--random", type=int, help="random examples per grid point")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=["json", "text"], default="text")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "p_list", None) and not args.p:
        args.p = args.p_list
    try:
        reports, code = args.func(args)
    except (PolyParseError, UsageError, PreconditionError, LevelError, ShapeError, ValueError) as exc:
        print(f"frobthick: error: {exc}", file=sys.stderr)
        return 2
    except GuardrailError as exc:
        print(f"frobthick: refused: {exc} (estimate {exc.estimate}); use --force to override", file=sys.stderr)
        return 3
    except (InvariantViolation, KeyError) as exc:
        print(f"frobthick: internal invariant violated: {exc}", file=sys.stderr)
        return 4
    buf = io.StringIO()
    if args.command == "verify":
        _emit_verify(reports, args, buf)
    else:
        _emit(reports, args, buf)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
