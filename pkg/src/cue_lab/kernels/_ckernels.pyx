# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Same contracts as ``_pykernels``."""

from libc.stdlib cimport malloc, free

from ..errors import SizeLimitError


cdef class _TableCounter:
    cdef int nrows
    cdef int ncols
    cdef int *rows
    cdef int *buf          # nrows scratch rows of ncols column remainders
    cdef long long nodes
    cdef long long node_limit
    cdef dict memo

    def __cinit__(self, rows, int ncols, long long node_limit):
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = <int *> malloc(max(1, self.nrows) * sizeof(int))
        self.buf = <int *> malloc(max(1, (self.nrows + 1) * ncols) * sizeof(int))
        if self.rows == NULL or self.buf == NULL:
            raise MemoryError()
        for i in range(self.nrows):
            self.rows[i] = rows[i]
        self.nodes = 0
        self.node_limit = node_limit
        self.memo = {}

    def __dealloc__(self):
        free(self.rows)
        free(self.buf)

    cdef object fill_row(self, int i, int *cols, int ncols):
        if i == self.nrows - 1:
            return 1
        key = (i, tuple([cols[j] for j in range(ncols)]))
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        cdef int *rem = self.buf + (i + 1) * self.ncols
        cdef int *suffix = <int *> malloc((ncols + 1) * sizeof(int))
        if suffix == NULL:
            raise MemoryError()
        cdef int j
        suffix[ncols] = 0
        for j in range(ncols - 1, -1, -1):
            suffix[j] = suffix[j + 1] + cols[j]
        for j in range(ncols):
            rem[j] = cols[j]
        try:
            total = self.place(i, cols, ncols, suffix, rem, 0, self.rows[i])
        finally:
            free(suffix)
        self.memo[key] = total
        return total

    cdef object place(self, int i, int *cols, int ncols, int *suffix, int *rem, int j, int left):
        cdef int x, lo, hi, k, m, t, nnext
        cdef int *nxt
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise SizeLimitError(f"contingency search exceeded {self.node_limit} nodes")
        if left == 0:
            # next state: nonzero remainders sorted descending
            nxt = <int *> malloc(max(1, ncols) * sizeof(int))
            if nxt == NULL:
                raise MemoryError()
            nnext = 0
            for k in range(ncols):
                if rem[k] > 0:
                    t = rem[k]
                    m = nnext
                    while m > 0 and nxt[m - 1] < t:
                        nxt[m] = nxt[m - 1]
                        m -= 1
                    nxt[m] = t
                    nnext += 1
            try:
                return self.fill_row(i + 1, nxt, nnext)
            finally:
                free(nxt)
        if j == ncols or suffix[j] < left:
            return 0
        lo = left - suffix[j + 1]
        if lo < 0:
            lo = 0
        hi = cols[j] if cols[j] < left else left
        total = 0
        for x in range(hi, lo - 1, -1):
            rem[j] = cols[j] - x
            total += self.place(i, cols, ncols, suffix, rem, j + 1, left - x)
        rem[j] = cols[j]
        return total


def count_tables(rows, cols, node_limit):
    rows = sorted([r for r in rows if r], reverse=True)
    cols = sorted([c for c in cols if c], reverse=True)
    if sum(rows) != sum(cols):
        return 0
    if not rows:
        return 1
    cdef int ncols = len(cols)
    cdef _TableCounter counter = _TableCounter(rows, ncols, node_limit)
    cdef int *start = counter.buf
    for j in range(ncols):
        start[j] = cols[j]
    return counter.fill_row(0, start, ncols)


def poly_mul(a, b, const int[:] add, const int[:] mul, int q):
    cdef int la = len(a), lb = len(b)
    if la == 0 or lb == 0:
        return ()
    cdef int n = la + lb - 1
    cdef int *out = <int *> malloc(n * sizeof(int))
    cdef int *bb = <int *> malloc(lb * sizeof(int))
    if out == NULL or bb == NULL:
        free(out)
        free(bb)
        raise MemoryError()
    cdef int i, j, k, x, y, row
    for k in range(n):
        out[k] = 0
    for j in range(lb):
        bb[j] = b[j]
    try:
        for i in range(la):
            x = a[i]
            if x == 0:
                continue
            row = x * q
            for j in range(lb):
                y = bb[j]
                if y:
                    k = i + j
                    out[k] = add[out[k] * q + mul[row + y]]
        while n > 0 and out[n - 1] == 0:
            n -= 1
        return tuple([out[k] for k in range(n)])
    finally:
        free(out)
        free(bb)


def poly_divmod(a, b, const int[:] add, const int[:] mul, const int[:] neg, const int[:] inv, int q):
    cdef int la = len(a), lb = len(b)
    if lb == 0:
        raise ZeroDivisionError("polynomial division by zero")
    cdef int db = lb - 1
    if la - 1 < db:
        return (), tuple(a)
    cdef int nq = la - db
    cdef int *r = <int *> malloc(la * sizeof(int))
    cdef int *bb = <int *> malloc(lb * sizeof(int))
    cdef int *quot = <int *> malloc(nq * sizeof(int))
    if r == NULL or bb == NULL or quot == NULL:
        free(r)
        free(bb)
        free(quot)
        raise MemoryError()
    cdef int i, j, top, coef, row, lead_inv, nr
    try:
        for i in range(la):
            r[i] = a[i]
        for j in range(lb):
            bb[j] = b[j]
        for i in range(nq):
            quot[i] = 0
        lead_inv = inv[bb[db]]
        for i in range(nq - 1, -1, -1):
            top = r[i + db]
            if top == 0:
                continue
            coef = mul[top * q + lead_inv]
            quot[i] = coef
            row = coef * q
            for j in range(db + 1):
                if bb[j]:
                    r[i + j] = add[r[i + j] * q + neg[mul[row + bb[j]]]]
        nr = db
        while nr > 0 and r[nr - 1] == 0:
            nr -= 1
        while nq > 0 and quot[nq - 1] == 0:
            nq -= 1
        return tuple([quot[i] for i in range(nq)]), tuple([r[i] for i in range(nr)])
    finally:
        free(r)
        free(bb)
        free(quot)
