import itertools
import random
from fractions import Fraction

import pytest

from frobthick.analyzer import (
    GuardrailError,
    PreconditionError,
    ThickeningQuery,
    Variety,
    ci_bound_t0,
    domain_subspace,
    fpt_estimate,
    is_injective,
    minimal_t,
    nu,
    ordinary_power_bound,
    predicted_codomain_monomials,
    thickening_matrix,
)
from frobthick.cohomology import CechClass, frobenius, is_zero, multiply
from frobthick.families import cusp, diagonal_quadrics, fermat, random_form, random_smooth_hypersurfaces
from frobthick.parser import parse_poly
from frobthick.polyring import HomogPoly, RingSpec, ShapeError, poly_pow, product


def hyper(n, p, f_or_text):
    ring = RingSpec(n + 1, p)
    f = parse_poly(f_or_text, ring) if isinstance(f_or_text, str) else f_or_text(ring)
    return Variety(ring, (f,))


def test_cusp_matrix_is_nonzero_column():
    v = hyper(2, 7, cusp)
    m = thickening_matrix(v, ThickeningQuery(2))
    assert m.cols == 1
    assert any(m.column(0))
    # the multiplier f^5 keeps x0^6 x1^6 x2^3 with coefficient -C(5,2) = 4 mod 7
    assert poly_pow(v.generators[0], 5, trunc=7).coefficient((6, 6, 3)) == 4


def test_twisted_quartic_matrix_is_nonzero_column():
    v = hyper(2, 5, lambda r: fermat(r, 4))
    m = thickening_matrix(v, ThickeningQuery(2, twist=1))
    assert m.cols == 1 and any(m.column(0))


def test_injectivity_examples():
    cubic = hyper(2, 5, lambda r: fermat(r, 3))
    rep = is_injective(cubic, ThickeningQuery(1))
    assert not rep.injective and rep.domain_dim == 1 and rep.rank == 0
    assert rep.kernel_witness.numerator == HomogPoly.one(cubic.ring)
    assert is_injective(cubic, ThickeningQuery(2)).injective
    quartic = hyper(3, 7, lambda r: fermat(r, 4))
    assert not is_injective(quartic, ThickeningQuery(2)).injective


def test_minimal_t_examples():
    assert [minimal_t(hyper(2, p, cusp)) for p in (7, 11, 13)] == [2, 3, 3]
    assert minimal_t(hyper(2, 7, lambda r: fermat(r, 4)), twist=1) == 4
    assert minimal_t(hyper(2, 7, lambda r: fermat(r, 3))) == 1


def test_nu_and_fpt_examples():
    assert nu(fermat(RingSpec(3, 5), 3)) == 3
    assert nu(cusp(RingSpec(3, 7))) == 5
    for p in (2, 3, 5, 7):
        x0 = HomogPoly.variable(RingSpec(2, p), 0)
        assert nu(x0) == p - 1
        assert fpt_estimate(x0, 2) == Fraction(p * p - 1, p * p)
    assert fpt_estimate(fermat(RingSpec(3, 5), 3)) == Fraction(3, 5)
    assert fpt_estimate(cusp(RingSpec(3, 7))) == Fraction(5, 7)
    with pytest.raises(ValueError):
        nu(HomogPoly.one(RingSpec(2, 5)))


def test_nu_second_level_for_cubic():
    # the Fermat cubic at p=5: nu(25) computed and brute-checked
    f = fermat(RingSpec(3, 5), 3)
    k = nu(f, 2)
    assert not poly_pow(f, k, trunc=25).is_zero()
    assert poly_pow(f, k + 1, trunc=25).is_zero()


def test_ci_bound_and_power_bound():
    assert ci_bound_t0(3, (2, 2)) == 3
    assert ci_bound_t0(2, (3,)) == 2
    assert all(ci_bound_t0(1, (d,)) == 1 for d in range(1, 8))
    assert ordinary_power_bound(2, 3) == 5
    assert all(ordinary_power_bound(1, t0) == t0 for t0 in range(1, 6))
    assert ordinary_power_bound(3, 1) == 1
    with pytest.raises(ValueError):
        ci_bound_t0(3, ())


def test_preconditions():
    v = hyper(2, 5, lambda r: fermat(r, 3))
    with pytest.raises(PreconditionError):
        is_injective(v, ThickeningQuery(6))
    with pytest.raises(PreconditionError):
        is_injective(v, ThickeningQuery(0))
    with pytest.raises(PreconditionError):
        is_injective(v, ThickeningQuery(1, mode="sideways"))
    ring = RingSpec(4, 5)
    with pytest.raises(PreconditionError):
        is_injective(Variety(ring, diagonal_quadrics(ring)), ThickeningQuery(3, mode="power"))
    with pytest.raises(ShapeError):
        Variety(ring, ())


def test_guardrail_refuses_with_estimate():
    v = hyper(3, 47, lambda r: fermat(r, 6))
    q = ThickeningQuery(1, twist=5)
    with pytest.raises(GuardrailError) as info:
        is_injective(v, q)
    assert info.value.estimate == predicted_codomain_monomials(v, q) > 500_000


def test_codomain_zero_is_not_injective():
    v = hyper(2, 5, lambda r: fermat(r, 4))
    rep = is_injective(v, ThickeningQuery(1, twist=1))
    assert rep.domain_dim == 1 and rep.codomain_dim == 0
    assert not rep.injective
    assert rep.to_dict()["result"]["note"] == "not injective (codomain zero)"


def test_vacuous_domain():
    rep = is_injective(hyper(2, 7, lambda r: fermat(r, 3)), ThickeningQuery(1, twist=2))
    assert rep.domain_dim == 0 and rep.injective
    assert "vacuous" in rep.note


def test_report_schema():
    rep = is_injective(hyper(2, 5, lambda r: fermat(r, 3)), ThickeningQuery(1)).to_dict()
    assert list(rep) == ["variety", "query", "result", "elapsed_ms"]
    assert rep["variety"] == {"n": 2, "p": 5, "c": 1, "degrees": [3], "generators": ["x0^3 + x1^3 + x2^3"]}
    assert rep["query"] == {"t": 1, "twist": 0, "mode": "bracket"}
    assert rep["result"]["kernel_witness"] == {"numerator": "1", "level": 1}


def test_power_mode_matches_bracket_for_hypersurfaces():
    v = hyper(2, 7, cusp)
    for t in range(1, 8):
        a = is_injective(v, ThickeningQuery(t)).to_dict()["result"]
        b = is_injective(v, ThickeningQuery(t, mode="power")).to_dict()["result"]
        assert a == b


def test_level_override_gives_same_verdict():
    v = hyper(2, 5, lambda r: fermat(r, 4))
    for t in (1, 2, 3):
        base = is_injective(v, ThickeningQuery(t, twist=1))
        high = is_injective(v, ThickeningQuery(t, twist=1), level=3)
        assert (base.injective, base.rank, base.domain_dim) == (high.injective, high.rank, high.domain_dim)


def _grid():
    out = []
    for p in (3, 5, 7):
        for n, d in ((1, 2), (1, 3), (2, 3), (2, 4)):
            ring = RingSpec(n + 1, p)
            out.append((f"fermat n={n} d={d} p={p}", Variety(ring, (fermat(ring, d),))))
        ring = RingSpec(3, p)
        out.append((f"cusp p={p}", Variety(ring, (cusp(ring),))))
        rng = random.Random(p)
        out.append((f"random cubic p={p}", Variety(ring, (random_form(ring, 3, rng),))))
    for p in (5, 7):
        ring = RingSpec(4, p)
        out.append((f"two quadrics p={p}", Variety(ring, diagonal_quadrics(ring))))
    return out


GRID = _grid()


@pytest.mark.parametrize("label, v", GRID, ids=[g[0] for g in GRID])
@pytest.mark.parametrize("twist", [-1, 0, 1])
def test_injective_t_form_an_up_set(label, v, twist):
    t = minimal_t(v, twist=twist, check_monotone=True)
    p = v.ring.p
    flags = [is_injective(v, ThickeningQuery(s, twist)).injective for s in range(1, p + 1)]
    if t is None:
        assert not any(flags)
    else:
        assert flags == [s >= t for s in range(1, p + 1)]


@pytest.mark.parametrize("label, v", [g for g in GRID if g[1].c == 1], ids=[g[0] for g in GRID if g[1].c == 1])
def test_frobenius_thickening_injective_at_t_equals_p(label, v):
    assert is_injective(v, ThickeningQuery(v.ring.p)).injective


def _brute_force(v, q):
    p = v.ring.p
    dom = domain_subspace(v, q.twist)
    g = poly_pow(product(v.generators, v.ring), p - q.t)
    kernel = 0
    for coeffs in itertools.product(range(p), repeat=dom.dim):
        vec = dom.basis @ list(coeffs)
        terms = {m: c for m, c in zip(dom.monomials, vec) if c}
        deg = sum(dom.monomials[0])
        eta = CechClass(HomogPoly(v.ring, deg, terms), dom.level)
        if is_zero(multiply(g, frobenius(eta))):
            kernel += 1
    return kernel == 1


def test_brute_force_oracle():
    checked = 0
    for label, v in GRID:
        if v.ring.p > 5:
            continue
        for twist in (-1, 0, 1):
            dim = domain_subspace(v, twist).dim
            if not 1 <= dim <= 2:
                continue
            for t in range(1, v.ring.p + 1):
                q = ThickeningQuery(t, twist)
                assert is_injective(v, q).injective == _brute_force(v, q), (label, twist, t)
                checked += 1
    assert checked > 40


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_calabi_yau_link(p):
    # d = n + 1: one-dimensional domain, minimal t = p - nu(f)
    cases = [(1, lambda r: fermat(r, 2)), (2, cusp), (2, lambda r: fermat(r, 3)), (3, lambda r: fermat(r, 4))]
    for n, make in cases:
        v = hyper(n, p, make)
        assert minimal_t(v) == p - nu(v.generators[0])
    ring = RingSpec(3, p)
    for f in random_smooth_hypersurfaces(ring, 3, 3, seed=11):
        v = Variety(ring, (f,))
        assert minimal_t(v) == p - nu(f)


def test_two_quadrics_curve():
    for p in (5, 7, 11):
        ring = RingSpec(4, p)
        v = Variety(ring, diagonal_quadrics(ring))
        rep = is_injective(v, ThickeningQuery(ci_bound_t0(3, v.degrees)))
        assert rep.domain_dim == 1 and rep.injective
