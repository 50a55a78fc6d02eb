"""Pure-Python kernels; reference semantics for the compiled ``_ckernels``."""

from __future__ import annotations

from ..errors import SizeLimitError


def count_tables(rows, cols, node_limit):
    """Number of non-negative integer matrices with the given row and column sums."""
    rows = sorted((r for r in rows if r), reverse=True)
    cols = tuple(sorted((c for c in cols if c), reverse=True))
    if sum(rows) != sum(cols):
        return 0
    if not rows:
        return 1
    memo = {}
    nodes = [0]
    nrows = len(rows)

    def fill_row(i, cols):
        if i == nrows - 1:
            return 1
        key = (i, cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        ncols = len(cols)
        suffix = [0] * (ncols + 1)
        for j in range(ncols - 1, -1, -1):
            suffix[j] = suffix[j + 1] + cols[j]
        rem = list(cols)
        total = 0

        def place(j, left):
            nonlocal total
            nodes[0] += 1
            if nodes[0] > node_limit:
                raise SizeLimitError(f"contingency search exceeded {node_limit} nodes")
            if left == 0:
                total += fill_row(i + 1, tuple(sorted((c for c in rem if c), reverse=True)))
                return
            if j == ncols or suffix[j] < left:
                return
            # leave enough room for the rest of the row in later columns
            lo = max(0, left - suffix[j + 1])
            for x in range(min(left, cols[j]), lo - 1, -1):
                rem[j] = cols[j] - x
                place(j + 1, left - x)
            rem[j] = cols[j]

        place(0, rows[i])
        memo[key] = total
        return total

    return fill_row(0, cols)


def poly_mul(a, b, add, mul, q):
    """Product of coefficient sequences (low to high) over F_q given by tables."""
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        row = x * q
        for j, y in enumerate(b):
            if y:
                k = i + j
                out[k] = add[out[k] * q + mul[row + y]]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_divmod(a, b, add, mul, neg, inv, q):
    """(quotient, remainder) of a by nonzero b over F_q."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    if len(a) - 1 < db:
        return (), tuple(a)
    r = list(a)
    lead_inv = inv[b[db]]
    quot = [0] * (len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        top = r[i + db]
        if top == 0:
            continue
        coef = mul[top * q + lead_inv]
        quot[i] = coef
        row = coef * q
        for j in range(db + 1):
            bj = b[j]
            if bj:
                r[i + j] = add[r[i + j] * q + neg[mul[row + bj]]]
    r = r[:db]
    while r and r[-1] == 0:
        r.pop()
    while quot and quot[-1] == 0:
        quot.pop()
    return tuple(quot), tuple(r)
