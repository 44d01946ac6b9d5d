import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from frobthick import _kernels
from frobthick.polyring import monomials

py = _kernels.python
cy = _kernels.compiled

needs_compiled = pytest.mark.skipif(cy is None, reason="compiled kernels not built")


def _dict(nv, d, p, rng, density=0.6):
    return {m: rng.randrange(1, p) for m in monomials(nv, d) if rng.random() < density}


@st.composite
def _case(draw):
    nv = draw(st.integers(1, 4))
    p = draw(st.sampled_from([2, 3, 5, 7, 13]))
    rng = random.Random(draw(st.integers(0, 10**6)))
    a = _dict(nv, draw(st.integers(0, 4)), p, rng)
    b = _dict(nv, draw(st.integers(0, 4)), p, rng)
    q = draw(st.sampled_from([0, 1, 2, 3, 5, 8]))
    return nv, p, a, b, q, rng


def test_backend_selected():
    assert _kernels.BACKEND in ("cython", "python")
    assert (_kernels.BACKEND == "cython") == (cy is not None)


@given(_case())
def test_python_product_matches_schoolbook(case):
    nv, p, a, b, q, _ = case
    want = {}
    for u, c in a.items():
        for v, e in b.items():
            w = tuple(x + y for x, y in zip(u, v))
            if q and max(w) >= q:
                continue
            want[w] = (want.get(w, 0) + c * e) % p
    want = {k: v for k, v in want.items() if v}
    assert py.poly_mul(a, b, p, q) == want


@needs_compiled
@given(_case())
def test_compiled_product_matches_python(case):
    nv, p, a, b, q, _ = case
    assert cy.poly_mul(a, b, p, q) == py.poly_mul(a, b, p, q)


@needs_compiled
@given(_case(), st.integers(0, 6))
def test_compiled_small_power_matches_python(case, k):
    nv, p, a, _, q, _ = case
    assert cy.poly_pow_small(a, k, nv, p, q) == py.poly_pow_small(a, k, nv, p, q)


@needs_compiled
@given(_case())
def test_compiled_frobenius_shifts_match_python(case):
    nv, p, a, _, q, rng = case
    q = q or 7
    shifts = [tuple(rng.randrange(3) for _ in range(nv)) for _ in range(4)]
    assert cy.frobenius_shifts(a, shifts, p, q) == py.frobenius_shifts(a, shifts, p, q)


@needs_compiled
@given(
    st.sampled_from([2, 3, 5, 7, 13]),
    st.integers(1, 7),
    st.integers(1, 7),
    st.integers(0, 10**6),
    st.booleans(),
)
def test_compiled_echelon_matches_python(p, nrows, ncols, seed, full):
    rng = random.Random(seed)
    rows = [[rng.randrange(p) if rng.random() < 0.5 else 0 for _ in range(ncols)] for _ in range(nrows)]
    got = cy.echelon([list(r) for r in rows], ncols, p, full)
    want = py.echelon([list(r) for r in rows], ncols, p, full)
    assert [list(r) for r in got[0]] == [list(r) for r in want[0]]
    assert list(got[1]) == list(want[1])


def test_pure_fallback_selected_by_environment():
    import subprocess
    import sys

    out = subprocess.run(
        [sys.executable, "-c", "import frobthick; print(frobthick.BACKEND)"],
        env={"FROBTHICK_PURE": "1", "PATH": ""},
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"
