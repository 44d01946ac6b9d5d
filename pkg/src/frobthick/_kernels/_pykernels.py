"""Pure-Python reference kernels.

Same call signatures as the compiled ``_ckernels`` module.  Polynomials are
plain dicts ``{exponent tuple: residue}`` with residues in ``[1, p)``;
matrices are lists of row lists.  ``q == 0`` means "no truncation".
"""

BACKEND = "python"


def _inv(a, p):
    return pow(a, p - 2, p)


def poly_mul(a, b, p, q):
    out = {}
    if q:
        a = {u: c for u, c in a.items() if max(u, default=0) < q}
        b = {u: c for u, c in b.items() if max(u, default=0) < q}
    get = out.get
    for u, cu in a.items():
        for v, cv in b.items():
            w = tuple(x + y for x, y in zip(u, v))
            if q and max(w, default=0) >= q:
                continue
            out[w] = (get(w, 0) + cu * cv) % p
    return {w: c for w, c in out.items() if c}


def poly_pow_small(f, k, nvars, p, q):
    result = {(0,) * nvars: 1}
    for _ in range(k):
        result = poly_mul(result, f, p, q)
        if not result:
            break
    return result


def frobenius_shifts(g, shifts, p, q):
    """For each exponent ``b`` in *shifts*, the terms of ``x^(p*b) * g`` with
    every exponent below ``q``."""
    out = []
    for b in shifts:
        pb = tuple(p * x for x in b)
        col = {}
        for u, c in g.items():
            w = tuple(x + y for x, y in zip(u, pb))
            if max(w, default=0) < q:
                col[w] = c
        out.append(col)
    return out


def echelon(rows, ncols, p, full):
    """Row-reduce *rows* over F_p.

    Returns ``(reduced, pivots)``: the nonzero reduced rows (pivot entries
    equal to 1) and their pivot columns.  With ``full`` the result is the
    reduced row echelon form, otherwise entries above pivots are left alone.
    """
    m = [[x % p for x in r] for r in rows]
    nrows = len(m)
    pivots = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        prow = m[r]
        inv = _inv(prow[col], p)
        if inv != 1:
            for k in range(col, ncols):
                if prow[k]:
                    prow[k] = prow[k] * inv % p
        support = [k for k in range(col, ncols) if prow[k]]
        start = 0 if full else r + 1
        for i in range(start, nrows):
            if i == r:
                continue
            row = m[i]
            fac = row[col]
            if fac:
                for k in support:
                    row[k] = (row[k] - fac * prow[k]) % p
        pivots.append(col)
        r += 1
    return m[:r], pivots
