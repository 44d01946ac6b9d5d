"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--end-to-end]

Each workload is run through both backends on identical inputs; outputs are
checked for equality before timings are reported.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from frobthick import _kernels
from frobthick.polyring import monomials


def _form(nv, d, p, rng):
    return {m: rng.randrange(1, p) for m in monomials(nv, d)}


def workloads():
    rng = random.Random(7)
    f4 = _form(4, 5, 13, rng)
    g3 = _form(3, 4, 11, rng)
    mult = _kernels.python.poly_pow_small(_form(4, 5, 13, rng), 6, 4, 13, 13)
    shifts = [tuple(rng.randrange(2) for _ in range(4)) for _ in range(40)]
    rows = [[rng.randrange(7) if rng.random() < 0.3 else 0 for _ in range(220)] for _ in range(200)]
    return [
        ("poly_mul quintic x quintic, 4 vars, p=13", "poly_mul", (f4, f4, 13, 0)),
        ("poly_pow_small quartic^6, 3 vars, p=11, q=11", "poly_pow_small", (g3, 6, 3, 11, 11)),
        ("frobenius_shifts 40 columns, p=13, q=26", "frobenius_shifts", (mult, shifts, 13, 26)),
        ("echelon 200x220 sparse, p=7", "echelon", (rows, 220, 7, True)),
    ]


def _copy(args):
    return tuple([list(r) for r in a] if isinstance(a, list) and a and isinstance(a[0], list) else a for a in args)


END_TO_END = """
import time
from frobthick import BACKEND
from frobthick.analyzer import ThickeningQuery, Variety, is_injective
from frobthick.families import random_smooth_hypersurfaces
from frobthick.polyring import RingSpec
ring = RingSpec(4, 13)
start = time.perf_counter()
forms = random_smooth_hypersurfaces(ring, 5, 3, seed=1)
ok = all(is_injective(Variety(ring, (f,)), ThickeningQuery(3)).injective for f in forms)
print(BACKEND, ok, round(time.perf_counter() - start, 2))
"""


def end_to_end():
    print("\nend to end: certify 3 random quintic surfaces over F_13 and test t=3")
    for pure in (False, True):
        env = dict(os.environ)
        env.pop("FROBTHICK_PURE", None)
        if pure:
            env["FROBTHICK_PURE"] = "1"
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
        backend, ok, secs = out.stdout.split()
        print(f"  {backend:8} injective={ok:5} {secs} s")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--end-to-end", action="store_true", help="also time a full analysis per backend")
    args = parser.parse_args(argv)
    if _kernels.compiled is None:
        print("compiled kernels not built; nothing to compare", file=sys.stderr)
        return 1
    print(f"{'workload':48} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for label, name, fargs in workloads():
        py_fn = getattr(_kernels.python, name)
        cy_fn = getattr(_kernels.compiled, name)
        a, b = py_fn(*_copy(fargs)), cy_fn(*_copy(fargs))
        if name == "echelon":
            a, b = ([list(r) for r in a[0]], list(a[1])), ([list(r) for r in b[0]], list(b[1]))
        assert a == b, f"backends disagree on {name}"
        t_py = min(timeit.repeat(lambda: py_fn(*_copy(fargs)), number=1, repeat=args.repeat))
        t_cy = min(timeit.repeat(lambda: cy_fn(*_copy(fargs)), number=1, repeat=args.repeat))
        print(f"{label:48} {t_py:10.4f} {t_cy:10.4f} {t_py / t_cy:7.1f}x")
    if args.end_to_end:
        end_to_end()
    return 0


if __name__ == "__main__":
    sys.exit(main())
