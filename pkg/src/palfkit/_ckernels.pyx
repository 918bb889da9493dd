# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels mirroring ``_pykernels`` on 64-bit integers.

Entries are kept below 2**31 so every intermediate product fits in an
``int64``; anything larger raises ``OverflowError`` and the caller falls
back to the arbitrary-precision Python version.
"""

from libc.stdlib cimport malloc, free

cdef long long LIMIT = 2147483647LL
cdef long long SMALL = 1048576LL


cdef inline long long _abs(long long x) nogil:
    return -x if x < 0 else x


cdef inline int _check(long long x) except -1:
    if x > LIMIT or x < -LIMIT:
        raise OverflowError("entry exceeds the int64 kernel range")
    return 0


cdef class _Mat:
    cdef long long *d
    cdef int nr, nc

    def __cinit__(self, int nr, int nc):
        self.nr = nr
        self.nc = nc
        self.d = <long long *> malloc(max(nr * nc, 1) * sizeof(long long))
        if self.d == NULL:
            raise MemoryError()

    def __dealloc__(self):
        free(self.d)

    cdef inline long long get(self, int i, int j):
        return self.d[i * self.nc + j]

    cdef inline void put(self, int i, int j, long long x):
        self.d[i * self.nc + j] = x

    cdef void swap_rows(self, int i, int j):
        cdef int c
        cdef long long t
        for c in range(self.nc):
            t = self.d[i * self.nc + c]
            self.d[i * self.nc + c] = self.d[j * self.nc + c]
            self.d[j * self.nc + c] = t

    cdef void swap_cols(self, int i, int j):
        cdef int r
        cdef long long t
        for r in range(self.nr):
            t = self.d[r * self.nc + i]
            self.d[r * self.nc + i] = self.d[r * self.nc + j]
            self.d[r * self.nc + j] = t

    cdef int add_row(self, int dst, int src, long long k) except -1:
        cdef int c
        cdef long long x
        for c in range(self.nc):
            x = self.d[dst * self.nc + c] + k * self.d[src * self.nc + c]
            _check(x)
            self.d[dst * self.nc + c] = x
        return 0

    cdef int add_col(self, int dst, int src, long long k) except -1:
        cdef int r
        cdef long long x
        for r in range(self.nr):
            x = self.d[r * self.nc + dst] + k * self.d[r * self.nc + src]
            _check(x)
            self.d[r * self.nc + dst] = x
        return 0

    cdef void neg_row(self, int i):
        cdef int c
        for c in range(self.nc):
            self.d[i * self.nc + c] = -self.d[i * self.nc + c]

    cdef list tolist(self):
        return [[self.d[i * self.nc + j] for j in range(self.nc)] for i in range(self.nr)]


cdef _Mat _identity(int n):
    cdef _Mat e = _Mat(n, n)
    cdef int i, j
    for i in range(n):
        for j in range(n):
            e.put(i, j, 1 if i == j else 0)
    return e


def smith(rows):
    """Smith normal form with transforms; see ``_pykernels.smith``."""
    cdef int nr = len(rows)
    cdef int nc = len(rows[0]) if nr else 0
    cdef _Mat m = _Mat(nr, nc)
    cdef _Mat u = _identity(nr)
    cdef _Mat v = _identity(nc)
    cdef int i, j, t, bi, bj, bad
    cdef long long x, p, best, k
    cdef bint dirty
    for i in range(nr):
        row = rows[i]
        for j in range(nc):
            x = row[j]
            _check(x)
            m.put(i, j, x)

    for t in range(min(nr, nc)):
        best = 0
        bi = -1
        bj = -1
        for i in range(t, nr):
            for j in range(t, nc):
                x = _abs(m.get(i, j))
                if x and (bi < 0 or x < best):
                    best = x
                    bi = i
                    bj = j
        if bi < 0:
            break
        m.swap_rows(t, bi)
        u.swap_rows(t, bi)
        m.swap_cols(t, bj)
        v.swap_cols(t, bj)
        while True:
            p = m.get(t, t)
            dirty = False
            for i in range(t + 1, nr):
                if m.get(i, t):
                    k = -(m.get(i, t) // p)
                    m.add_row(i, t, k)
                    u.add_row(i, t, k)
                    if m.get(i, t):
                        m.swap_rows(t, i)
                        u.swap_rows(t, i)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, nc):
                if m.get(t, j):
                    k = -(m.get(t, j) // p)
                    m.add_col(j, t, k)
                    v.add_col(j, t, k)
                    if m.get(t, j):
                        m.swap_cols(t, j)
                        v.swap_cols(t, j)
                        dirty = True
                        break
            if dirty:
                continue
            bad = -1
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if m.get(i, j) % p:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            m.add_row(t, bad, 1)
            u.add_row(t, bad, 1)
        if m.get(t, t) < 0:
            m.neg_row(t)
            u.neg_row(t)
    return u.tolist(), m.tolist(), v.tolist()


cdef inline long long _norm(long long a, long long b, long long c, long long d):
    cdef long long n = _abs(a)
    if _abs(b) > n:
        n = _abs(b)
    if _abs(c) > n:
        n = _abs(c)
    if _abs(d) > n:
        n = _abs(d)
    return n


cdef int _cands(long long num, long long den, long long *out):
    # nonzero integers near num / den; returns how many were written
    cdef long long q
    cdef int n = 0
    cdef long long k
    if den == 0:
        return 0
    q = num // den
    for k in range(q - 1, q + 3):
        if k:
            out[n] = k
            n += 1
    return n


cdef inline bint _before(long long k, long long other):
    # tie order: smaller |k| first, then positive first
    if _abs(k) != _abs(other):
        return _abs(k) < _abs(other)
    return k > other


def sanov_descent(a_, b_, c_, d_, z_):
    """Greedy max-norm descent in the z-Sanov subgroup; see ``_pykernels.sanov_descent``."""
    for x in (a_, b_, c_, d_, z_):
        if x > SMALL or x < -SMALL:
            raise OverflowError("entry exceeds the int64 kernel range")
    cdef long long a = a_, b = b_, c = c_, d = d_, z = z_
    cdef long long ks[16]
    cdef long long cur, n, k, bestn, bestk
    cdef int nk, i, g, bestg
    out = []
    while True:
        if b == 0 and c == 0 and _abs(a) == 1 and a == d:
            return out
        cur = _norm(a, b, c, d)
        bestg = 0
        bestn = 0
        bestk = 0
        nk = _cands(-a, z * c, ks)
        nk += _cands(-b, z * d, ks + nk)
        nk += _cands(b - a, z * (c - d), ks + nk)
        nk += _cands(-a - b, z * (c + d), ks + nk)
        for i in range(nk):
            k = ks[i]
            n = _norm(a + k * z * c, b + k * z * d, c, d)
            if bestg == 0 or n < bestn or (n == bestn and bestg == 1 and _before(k, bestk)):
                bestg, bestn, bestk = 1, n, k
        nk = _cands(c, z * a, ks)
        nk += _cands(d, z * b, ks + nk)
        nk += _cands(c - d, z * (a - b), ks + nk)
        nk += _cands(c + d, z * (a + b), ks + nk)
        for i in range(nk):
            k = ks[i]
            n = _norm(a, b, c - k * z * a, d - k * z * b)
            if bestg == 0 or n < bestn or (n == bestn and bestg == 2 and _before(k, bestk)):
                bestg, bestn, bestk = 2, n, k
        if bestg == 0 or bestn >= cur:
            return None
        if bestg == 1:
            a, b = a + bestk * z * c, b + bestk * z * d
        else:
            c, d = c - bestk * z * a, d - bestk * z * b
        last = len(out) - 1
        if last >= 0 and out[last][0] == bestg:
            out[last] = (bestg, out[last][1] + bestk)
        else:
            out.append((bestg, bestk))
