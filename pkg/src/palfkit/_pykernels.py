"""Pure-Python kernels.  Reference semantics for the compiled ``_ckernels``."""

from __future__ import annotations


def smith(rows):
    """Smith normal form with transforms.

    Returns ``(U, D, V)`` as lists of lists with ``U * M * V == D``, ``U``
    and ``V`` unimodular and the diagonal of ``D`` a nonnegative
    divisibility chain.
    """
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        md, ms = m[dst], m[src]
        for c in range(nc):
            md[c] += k * ms[c]
        ud, us = u[dst], u[src]
        for c in range(nr):
            ud[c] += k * us[c]

    def add_col(dst, src, k):
        for row in m:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(min(nr, nc)):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                x = m[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = m[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if m[i][t]:
                    add_row(i, t, -(m[i][t] // p))
                    if m[i][t]:
                        swap_rows(t, i)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, nc):
                if m[t][j]:
                    add_col(j, t, -(m[t][j] // p))
                    if m[t][j]:
                        swap_cols(t, j)
                        dirty = True
                        break
            if dirty:
                continue
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if m[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            u[t] = [-x for x in u[t]]
    return u, m, v


def _norm(a, b, c, d):
    return max(abs(a), abs(b), abs(c), abs(d))


def _candidates(num, den):
    # integers k near num / den, nonzero
    if den == 0:
        return ()
    q = num // den
    return tuple(k for k in (q - 1, q, q + 1, q + 2) if k)


def sanov_descent(a, b, c, d, z):
    """Write ``[[a,b],[c,d]]`` as a word in ``U = [[1,-z],[0,1]]`` and ``L = [[1,0],[z,1]]``.

    Returns a list of ``(generator, power)`` syllables (``1`` for U, ``2``
    for L) whose product is the matrix up to sign, or ``None`` when the
    greedy max-norm descent stalls.
    """
    out = []
    while True:
        if b == 0 and c == 0 and abs(a) == 1 and a == d:
            return out
        cur = _norm(a, b, c, d)
        best = None
        # U^-k M = [[a + kzc, b + kzd], [c, d]]
        ks = (set(_candidates(-a, z * c)) | set(_candidates(-b, z * d))
              | set(_candidates(b - a, z * (c - d))) | set(_candidates(-a - b, z * (c + d))))
        for k in sorted(ks, key=lambda k: (abs(k), -k)):
            n = _norm(a + k * z * c, b + k * z * d, c, d)
            if best is None or n < best[0]:
                best = (n, 1, k)
        # L^-k M = [[a, b], [c - kza, d - kzb]]
        ks = (set(_candidates(c, z * a)) | set(_candidates(d, z * b))
              | set(_candidates(c - d, z * (a - b))) | set(_candidates(c + d, z * (a + b))))
        for k in sorted(ks, key=lambda k: (abs(k), -k)):
            n = _norm(a, b, c - k * z * a, d - k * z * b)
            if best is None or n < best[0]:
                best = (n, 2, k)
        if best is None or best[0] >= cur:
            return None
        _, g, k = best
        if g == 1:
            a, b = a + k * z * c, b + k * z * d
        else:
            c, d = c - k * z * a, d - k * z * b
        if out and out[-1][0] == g:
            out[-1] = (g, out[-1][1] + k)
        else:
            out.append((g, k))
