"""Named verification bundles.

Each check compares computed values with a closed-form prediction and
returns a :class:`CheckResult` whose transcript lists every sub-assertion.
Parameters outside the documented desk-scale limits are refused with a
:class:`~frobthick.analyzer.GuardrailError` carrying a cost estimate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .analyzer import (
    GuardrailError,
    ThickeningQuery,
    Variety,
    ci_bound_t0,
    is_injective,
    minimal_t,
    nu,
    ordinary_power_bound,
)
from .families import cusp, diagonal_quadrics, fermat, random_smooth_hypersurfaces
from .ideals import (
    HomogIdeal,
    contains_power_of_max_ideal,
    is_smooth_projective_ci,
    jacobian_ideal,
    membership,
    power_containment,
)
from .monomial import MonomialIdeal, colon_bracket_by_power
from .polyring import HomogPoly, RingSpec

MAX_PRIME = 50
MAX_N = 3
MAX_DEGREE = 6


@dataclass
class CheckResult:
    check_id: str
    passed: bool = True
    transcript: list = field(default_factory=list)

    def expect(self, ok, message):
        self.transcript.append(f"[{'ok' if ok else 'FAIL'}] {message}")
        if not ok:
            self.passed = False
        return ok

    def to_dict(self):
        return {"check": self.check_id, "passed": self.passed, "transcript": list(self.transcript)}


def _primes(params, default):
    primes = list(params.get("p", default))
    for p in primes:
        if p > MAX_PRIME:
            raise GuardrailError(f"prime {p} above the desk-scale limit {MAX_PRIME}", p)
    return primes


def _limit(name, value, ceiling):
    if value > ceiling:
        raise GuardrailError(f"{name}={value} above the desk-scale limit {ceiling}", value)


def cusp_formula(params):
    res = CheckResult("cusp-formula")
    for p in _primes(params, [5, 7, 11, 13, 17, 19]):
        if p % 6 not in (1, 5):
            res.transcript.append(f"[skip] p={p}: formula needs p = 1 or 5 mod 6")
            continue
        ring = RingSpec(3, p)
        expected = (p + 5) // 6 if p % 6 == 1 else (p + 7) // 6
        got = minimal_t(Variety(ring, (cusp(ring),)))
        res.expect(got == expected, f"p={p}: minimal t = {got}, predicted {expected}")
    return res


def quartic_twist_formula(params):
    res = CheckResult("quartic-twist-formula")
    for p in _primes(params, [5, 7, 11, 13]):
        if p % 2 == 0:
            res.transcript.append(f"[skip] p={p}: formula needs odd p")
            continue
        ring = RingSpec(3, p)
        expected = (p + 3) // 4 if p % 4 == 1 else (p + 9) // 4
        got = minimal_t(Variety(ring, (fermat(ring, 4),)), twist=1)
        res.expect(got == expected, f"p={p}: minimal t at twist 1 = {got}, predicted {expected}")
    return res


def sharp_example(params):
    res = CheckResult("sharp-example")
    triples = params.get("triples", [(2, 3, 5), (2, 4, 7), (3, 4, 7), (2, 3, 11), (3, 4, 11)])
    for n, d, p in triples:
        _limit("n", n, MAX_N)
        _limit("d", d, MAX_DEGREE)
        _primes({"p": [p]}, [])
        if n < 2 or d < n + 1 or (p + 1) % d:
            res.expect(False, f"(n,d,p)=({n},{d},{p}) outside the family: need n>=2, d>=n+1, p=-1 mod d")
            continue
        ring = RingSpec(n + 1, p)
        f = fermat(ring, d)
        v = Variety(ring, (f,))
        rep = is_injective(v, ThickeningQuery(n - 1))
        res.expect(not rep.injective, f"(n,d,p)=({n},{d},{p}): map for t={n - 1} injective={rep.injective}")
        gens = []
        for i in range(1, n + 1):
            e = [0] * (n + 1)
            e[i] = p
            gens.append(HomogPoly.monomial(ring, e))
        gens.append(f ** (n - 1))
        x0 = HomogPoly.monomial(ring, [n * p] + [0] * n)
        ok = membership(x0, HomogIdeal(ring, gens))
        res.expect(ok, f"(n,d,p)=({n},{d},{p}): x0^{n * p} in (x1^{p},...,x{n}^{p}, f^{n - 1}) is {ok}")
    return res


def _smooth_corpus(n, d, p, count, seed):
    ring = RingSpec(n + 1, p)
    forms = [("fermat", fermat(ring, d))]
    forms += [(f"random#{k}", f) for k, f in enumerate(random_smooth_hypersurfaces(ring, d, count, seed=seed))]
    return ring, forms


def main_hypersurface(params):
    res = CheckResult("main-hypersurface")
    count = params.get("random", 5)
    seed = params.get("seed", 0)
    for n in params.get("n", [2]):
        _limit("n", n, MAX_N)
        for d in params.get("d", [3, 4, 5]):
            _limit("d", d, MAX_DEGREE)
            for p in _primes(params, [5, 7, 11]):
                if p < n:
                    res.transcript.append(f"[skip] p={p} < n={n}")
                    continue
                ring, forms = _smooth_corpus(n, d, p, count, seed)
                for label, f in forms:
                    if label == "fermat" and not is_smooth_projective_ci([f]):
                        res.transcript.append(f"[skip] n={n} d={d} p={p} fermat: not smooth")
                        continue
                    rep = is_injective(Variety(ring, (f,)), ThickeningQuery(n))
                    res.expect(rep.injective, f"n={n} d={d} p={p} {label}: t={n} injective={rep.injective}")
    return res


def socle_bound(params):
    res = CheckResult("socle-bound")
    count = params.get("random", 3)
    seed = params.get("seed", 0)
    for n in params.get("n", [2, 3]):
        _limit("n", n, MAX_N)
        for d in params.get("d", [3, 4]):
            _limit("d", d, MAX_DEGREE)
            for p in _primes(params, [5, 7]):
                ring, forms = _smooth_corpus(n, d, p, count, seed)
                bound = n * (d - 2) + d
                for label, f in forms:
                    if not is_smooth_projective_ci([f]):
                        res.transcript.append(f"[skip] n={n} d={d} p={p} {label}: not smooth")
                        continue
                    ideal = jacobian_ideal([f]) + HomogIdeal(ring, [f])
                    ok = contains_power_of_max_ideal(ideal, bound)
                    res.expect(ok, f"n={n} d={d} p={p} {label}: m^{bound} in J+fS is {ok}")
    ring = RingSpec(3, 7)
    f = cusp(ring)
    ideal = jacobian_ideal([f]) + HomogIdeal(ring, [f])
    res.expect(not contains_power_of_max_ideal(ideal, 5), "cusp p=7: m^5 not in J+fS (singular)")
    return res


def colon_lemma(params):
    res = CheckResult("colon-lemma")
    nmax = params.get("n_max", 3)
    _limit("n_max", nmax, MAX_N)
    for p in params.get("p", [2, 3, 5]):
        for power in params.get("powers", [1, 2]):
            q = p ** power
            _limit("q", q, 49)
            for n in range(1, nmax + 1):
                bad = []
                for N in range(0, 2 * (n + 1) * q + 1):
                    got = colon_bracket_by_power(n, q, N)
                    want = MonomialIdeal.bracket_plus_power(n + 1, q, (n + 1) * q - n - N)
                    if got != want:
                        bad.append(N)
                res.expect(not bad, f"n={n} q={q}: colon identity for N=0..{2 * (n + 1) * q}" + (f", fails at {bad}" if bad else ""))
    return res


def ci_theorem(params):
    res = CheckResult("ci-theorem")
    for p in _primes(params, [5, 7, 11]):
        ring = RingSpec(4, p)
        quadrics = diagonal_quadrics(ring)
        v = Variety(ring, quadrics)
        t0 = ci_bound_t0(ring.n, v.degrees)
        res.expect(is_smooth_projective_ci(quadrics), f"p={p}: two quadrics smooth")
        if t0 > p:
            res.transcript.append(f"[skip] p={p} < t0={t0}")
            continue
        rep = is_injective(v, ThickeningQuery(t0))
        res.expect(rep.domain_dim == 1, f"p={p}: annihilator dimension {rep.domain_dim}")
        res.expect(rep.injective, f"p={p}: bracket map for t0={t0} injective={rep.injective}")
    return res


def factorization(params):
    res = CheckResult("factorization")
    for p in _primes(params, [5, 7, 11]):
        ring = RingSpec(4, p)
        quadrics = diagonal_quadrics(ring)
        v = Variety(ring, quadrics)
        t0 = ci_bound_t0(ring.n, v.degrees)
        t = ordinary_power_bound(v.c, t0)
        if p < t:
            res.transcript.append(f"[skip] p={p} < t={t}")
            continue
        ok = power_containment(quadrics, t, t0, cross_check=params.get("samples", 8))
        res.expect(ok, f"p={p}: (f1,f2)^{t} in (f1^{t0}, f2^{t0})")
        below = power_containment(quadrics, t - 1, t0, cross_check=params.get("samples", 8))
        res.expect(not below, f"p={p}: (f1,f2)^{t - 1} not in (f1^{t0}, f2^{t0})")
        rep = is_injective(v, ThickeningQuery(t0))
        res.expect(rep.injective, f"p={p}: bracket map for t0={t0} injective, so the map for t={t} is too")
    return res


def supersingular(params):
    res = CheckResult("supersingular")
    for p in _primes(params, [5, 7]):
        ring = RingSpec(3, p)
        f = fermat(ring, 3)
        k = nu(f, 1)
        t = minimal_t(Variety(ring, (f,)))
        res.expect(t == max(1, p - k), f"p={p}: minimal t = {t}, p - nu = {p - k}")
    return res


CHECKS = {
    "colon-lemma": colon_lemma,
    "socle-bound": socle_bound,
    "sharp-example": sharp_example,
    "cusp-formula": cusp_formula,
    "quartic-twist-formula": quartic_twist_formula,
    "main-hypersurface": main_hypersurface,
    "ci-theorem": ci_theorem,
    "factorization": factorization,
    "supersingular": supersingular,
}


def verify_named(check_id: str, params=None) -> CheckResult:
    try:
        fn = CHECKS[check_id]
    except KeyError:
        raise KeyError(f"unknown check {check_id!r}; choose from {', '.join(CHECKS)}") from None
    return fn(dict(params or {}))
