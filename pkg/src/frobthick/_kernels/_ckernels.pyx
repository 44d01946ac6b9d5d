# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: truncated sparse products and mod-p row reduction.

Drop-in replacement for ``_pykernels``; every function has the same
signature and returns the same Python objects.
"""

from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memset
from libc.stdint cimport int64_t, uint8_t

from . import _pykernels

BACKEND = "cython"

# dense accumulator ceiling (entries); larger products use the Python path
cdef int64_t DENSE_LIMIT = 1 << 23


cdef int64_t _inv(int64_t a, int64_t p):
    cdef int64_t r = 1, b = a % p, e = p - 2
    while e > 0:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


cdef struct Poly:
    int64_t n
    int64_t *exps   # n * nv
    int64_t *coefs


cdef int _load(dict d, int nv, int64_t q, Poly *out) except -1:
    cdef int64_t n = 0, k
    out.exps = <int64_t *> malloc(max(1, len(d) * nv) * sizeof(int64_t))
    out.coefs = <int64_t *> malloc(max(1, len(d)) * sizeof(int64_t))
    if out.exps == NULL or out.coefs == NULL:
        raise MemoryError()
    for u, c in d.items():
        if q:
            skip = False
            for x in u:
                if x >= q:
                    skip = True
                    break
            if skip:
                continue
        for k in range(nv):
            out.exps[n * nv + k] = u[k]
        out.coefs[n] = c
        n += 1
    out.n = n
    return 0


cdef void _release(Poly *a):
    free(a.exps)
    free(a.coefs)
    a.exps = NULL
    a.coefs = NULL


cdef class _Accumulator:
    """Dense coefficient buffer indexed by the first nv-1 exponents."""
    cdef int64_t *acc
    cdef uint8_t *seen
    cdef int64_t *touched
    cdef int64_t ntouched
    cdef int64_t size

    def __cinit__(self, int64_t size):
        self.size = size
        self.acc = <int64_t *> calloc(size, sizeof(int64_t))
        self.seen = <uint8_t *> calloc(size, sizeof(uint8_t))
        self.touched = <int64_t *> malloc(size * sizeof(int64_t))
        self.ntouched = 0
        if self.acc == NULL or self.seen == NULL or self.touched == NULL:
            raise MemoryError()

    def __dealloc__(self):
        free(self.acc)
        free(self.seen)
        free(self.touched)


cdef int _product(Poly *a, Poly *b, int nv, int64_t q, int64_t radix,
                  int64_t p, _Accumulator buf) except -1:
    cdef int64_t i, j, k, idx, w, mult
    cdef int64_t *ea
    cdef int64_t *eb
    cdef int64_t ca
    cdef bint ok
    for i in range(a.n):
        ea = a.exps + i * nv
        ca = a.coefs[i]
        for j in range(b.n):
            eb = b.exps + j * nv
            ok = True
            idx = 0
            mult = 1
            for k in range(nv):
                w = ea[k] + eb[k]
                if q and w >= q:
                    ok = False
                    break
                if k < nv - 1:
                    idx += w * mult
                    mult *= radix
            if not ok:
                continue
            if not buf.seen[idx]:
                buf.seen[idx] = 1
                buf.touched[buf.ntouched] = idx
                buf.ntouched += 1
            buf.acc[idx] = (buf.acc[idx] + ca * b.coefs[j]) % p
    return 0


cdef int _drain(_Accumulator buf, int nv, int64_t degree, int64_t radix,
                Poly *out) except -1:
    """Move the nonzero accumulator entries into *out* and clear the buffer."""
    cdef int64_t t, idx, rest, k, s, n = 0, c
    out.exps = <int64_t *> malloc(max(1, buf.ntouched * nv) * sizeof(int64_t))
    out.coefs = <int64_t *> malloc(max(1, buf.ntouched) * sizeof(int64_t))
    if out.exps == NULL or out.coefs == NULL:
        raise MemoryError()
    for t in range(buf.ntouched):
        idx = buf.touched[t]
        c = buf.acc[idx]
        buf.acc[idx] = 0
        buf.seen[idx] = 0
        if c == 0:
            continue
        rest = idx
        s = 0
        for k in range(nv - 1):
            out.exps[n * nv + k] = rest % radix
            s += rest % radix
            rest //= radix
        out.exps[n * nv + nv - 1] = degree - s
        out.coefs[n] = c
        n += 1
    buf.ntouched = 0
    out.n = n
    return 0


cdef dict _to_dict(Poly *a, int nv):
    cdef int64_t i, k
    out = {}
    for i in range(a.n):
        out[tuple([a.exps[i * nv + k] for k in range(nv)])] = a.coefs[i]
    return out


cdef int64_t _dense_size(int nv, int64_t radix):
    cdef int64_t size = 1
    cdef int k
    for k in range(nv - 1):
        size *= radix
        if size > DENSE_LIMIT:
            return -1
    return size


def poly_mul(dict a, dict b, p, q):
    if not a or not b:
        return {}
    first_a = next(iter(a))
    first_b = next(iter(b))
    cdef int nv = len(first_a)
    cdef int64_t pp = p, qq = q
    cdef int64_t degree = sum(first_a) + sum(first_b)
    cdef int64_t radix = qq if qq else degree + 1
    cdef int64_t size = _dense_size(nv, radix)
    if size < 0:
        return _pykernels.poly_mul(a, b, p, q)
    cdef Poly pa, pb, pc
    _load(a, nv, qq, &pa)
    _load(b, nv, qq, &pb)
    buf = _Accumulator(size)
    try:
        _product(&pa, &pb, nv, qq, radix, pp, buf)
        _drain(buf, nv, degree, radix, &pc)
        out = _to_dict(&pc, nv)
        _release(&pc)
    finally:
        _release(&pa)
        _release(&pb)
    return out


def poly_pow_small(dict f, k, nvars, p, q):
    cdef int nv = nvars
    if k == 0:
        return {(0,) * nv: 1}
    if not f:
        return {}
    cdef int64_t df = sum(next(iter(f)))
    cdef int64_t kk = k, pp = p, qq = q, step
    cdef int64_t radix = qq if qq else df * kk + 1
    cdef int64_t size = _dense_size(nv, radix)
    if size < 0:
        return _pykernels.poly_pow_small(f, k, nvars, p, q)
    cdef Poly pf, cur, nxt
    _load(f, nv, qq, &pf)
    _load({(0,) * nv: 1}, nv, qq, &cur)
    buf = _Accumulator(size)
    try:
        for step in range(kk):
            _product(&cur, &pf, nv, qq, radix, pp, buf)
            _drain(buf, nv, df * (step + 1), radix, &nxt)
            _release(&cur)
            cur = nxt
            if cur.n == 0:
                break
        out = _to_dict(&cur, nv)
    finally:
        _release(&cur)
        _release(&pf)
    return out


def frobenius_shifts(dict g, list shifts, p, q):
    if not g:
        return [{} for _ in shifts]
    cdef int nv = len(next(iter(g)))
    cdef int64_t pp = p, qq = q, i, k
    cdef Poly pg
    cdef int64_t *pb = <int64_t *> malloc(nv * sizeof(int64_t))
    cdef bint ok
    _load(g, nv, qq, &pg)
    out = []
    try:
        for b in shifts:
            for k in range(nv):
                pb[k] = pp * b[k]
            col = {}
            for i in range(pg.n):
                ok = True
                for k in range(nv):
                    if pg.exps[i * nv + k] + pb[k] >= qq:
                        ok = False
                        break
                if ok:
                    col[tuple([pg.exps[i * nv + k] + pb[k] for k in range(nv)])] = pg.coefs[i]
            out.append(col)
    finally:
        free(pb)
        _release(&pg)
    return out


def echelon(list rows, ncols, p, full):
    cdef int64_t nr = len(rows), nc = ncols, pp = p
    cdef int64_t i, j, k, r = 0, col, piv, fac, inv, nsup, tmp
    cdef bint do_full = full
    if nr == 0 or nc == 0:
        return [], []
    cdef int64_t *m = <int64_t *> malloc(nr * nc * sizeof(int64_t))
    cdef int64_t *sup = <int64_t *> malloc(nc * sizeof(int64_t))
    cdef int64_t *rowp
    cdef int64_t *prow
    if m == NULL or sup == NULL:
        free(m)
        free(sup)
        raise MemoryError()
    pivots = []
    try:
        for i in range(nr):
            row = rows[i]
            for j in range(nc):
                m[i * nc + j] = row[j] % pp
        for col in range(nc):
            if r == nr:
                break
            piv = -1
            for i in range(r, nr):
                if m[i * nc + col] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(col, nc):
                    tmp = m[piv * nc + j]
                    m[piv * nc + j] = m[r * nc + j]
                    m[r * nc + j] = tmp
            prow = m + r * nc
            inv = _inv(prow[col], pp)
            nsup = 0
            for j in range(col, nc):
                if prow[j] != 0:
                    prow[j] = prow[j] * inv % pp
                    sup[nsup] = j
                    nsup += 1
            for i in range(0 if do_full else r + 1, nr):
                if i == r:
                    continue
                rowp = m + i * nc
                fac = rowp[col]
                if fac == 0:
                    continue
                fac = pp - fac
                for k in range(nsup):
                    j = sup[k]
                    rowp[j] = (rowp[j] + fac * prow[j]) % pp
            pivots.append(col)
            r += 1
        out = [[m[i * nc + j] for j in range(nc)] for i in range(r)]
    finally:
        free(m)
        free(sup)
    return out, pivots
