"""Named test varieties and random smooth hypersurfaces."""

from __future__ import annotations

import json
import random
from importlib import resources

from .ideals import is_smooth_projective_ci
from .polyring import HomogPoly, RingSpec, monomials


def fermat(ring: RingSpec, d: int) -> HomogPoly:
    """x_0^d + ... + x_n^d."""
    terms = {}
    for i in range(ring.num_vars):
        e = [0] * ring.num_vars
        e[i] = d
        terms[tuple(e)] = 1
    return HomogPoly(ring, d, terms)


def cusp(ring: RingSpec) -> HomogPoly:
    """x_0^3 - x_1^2 x_2 in three variables."""
    if ring.num_vars != 3:
        raise ValueError("the cuspidal cubic lives in P^2")
    return HomogPoly(ring, 3, {(3, 0, 0): 1, (0, 2, 1): -1})


def diagonal_quadrics(ring: RingSpec):
    """sum x_i^2 and sum (i+1) x_i^2."""
    nv = ring.num_vars
    sq = [tuple(2 if j == i else 0 for j in range(nv)) for i in range(nv)]
    f1 = HomogPoly(ring, 2, {e: 1 for e in sq})
    f2 = HomogPoly(ring, 2, {e: i + 1 for i, e in enumerate(sq)})
    return f1, f2


def random_form(ring: RingSpec, d: int, rng: random.Random) -> HomogPoly:
    p = ring.p
    return HomogPoly(ring, d, {m: rng.randrange(p) for m in monomials(ring.num_vars, d)})


def random_smooth_hypersurfaces(ring: RingSpec, d: int, count: int, seed=0, max_attempts=None, rejected=None):
    """``count`` random degree-d forms certified smooth, reproducible from ``seed``.

    Candidates that fail the certificate are appended to ``rejected`` if a
    list is given.
    """
    rng = random.Random(f"{seed}:{ring.num_vars}:{ring.p}:{d}")
    limit = max_attempts or 20 * count + 20
    found = []
    for _ in range(limit):
        f = random_form(ring, d, rng)
        if f.terms and is_smooth_projective_ci([f]):
            found.append(f)
            if len(found) == count:
                return found
        elif rejected is not None:
            rejected.append(f)
    raise RuntimeError(f"only {len(found)} smooth forms in {limit} attempts")


def corpus_names():
    return sorted(r.name[:-5] for r in resources.files("frobthick.corpus").iterdir() if r.name.endswith(".json"))


def load_corpus(name: str) -> dict:
    """Bundled example: ``n``, candidate primes ``p`` and ``generators`` as text."""
    return json.loads(resources.files("frobthick.corpus").joinpath(f"{name}.json").read_text())
