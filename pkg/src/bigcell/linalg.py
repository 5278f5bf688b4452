"""Dense exact linear algebra on tuple-of-tuples matrices of ExactScalar."""

from __future__ import annotations

from .exactfield import ExactScalar


def zero(p: int, e: int = 1) -> ExactScalar:
    return ExactScalar(0, p, e)


def identity(n: int, p: int, e: int = 1) -> tuple:
    one, nil = ExactScalar(1, p, e), ExactScalar(0, p, e)
    return tuple(tuple(one if i == j else nil for j in range(n)) for i in range(n))


def from_rows(rows, p: int, e: int = 1) -> tuple:
    from .exactfield import parse_scalar

    out = []
    for row in rows:
        cells = []
        for x in row:
            if isinstance(x, ExactScalar):
                cells.append(x)
            elif isinstance(x, str):
                cells.append(parse_scalar(x, p, e))
            else:
                cells.append(ExactScalar(x, p, e))
        out.append(tuple(cells))
    return tuple(out)


def matmul(a, b) -> tuple:
    bt = tuple(zip(*b))
    out = []
    for row in a:
        cells = []
        for col in bt:
            acc = None
            for x, y in zip(row, col):
                if x.is_zero() or y.is_zero():
                    continue
                acc = x * y if acc is None else acc + x * y
            cells.append(acc if acc is not None else row[0] * 0)
        out.append(tuple(cells))
    return tuple(out)


def transpose(a) -> tuple:
    return tuple(zip(*a))


def scale(a, c) -> tuple:
    return tuple(tuple(x * c for x in row) for row in a)


def add(a, b) -> tuple:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def sub(a, b) -> tuple:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def inverse(a) -> tuple:
    """Gauss-Jordan inverse; raises ZeroDivisionError on a singular matrix."""
    n = len(a)
    if n == 0:
        return ()
    p, e = a[0][0].p, a[0][0].e
    one, nil = ExactScalar(1, p, e), ExactScalar(0, p, e)
    aug = [list(row) + [one if i == j else nil for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            f = aug[r][col]
            if r != col and not f.is_zero():
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def det(a) -> ExactScalar:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        raise ValueError("determinant of an empty matrix needs a field; use det_or_one")
    m = [list(row) for row in a]
    sign = 1
    prev = m[0][0] * 0 + 1
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not m[r][k].is_zero()), None)
            if swap is None:
                return m[0][0] * 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]


def block(a, rows: range, cols: range) -> tuple:
    return tuple(tuple(a[i][j] for j in cols) for i in rows)


def assemble(blocks) -> tuple:
    """Glue a 2-d grid of matrices into one matrix."""
    out = []
    for brow in blocks:
        for i in range(len(brow[0])):
            out.append(tuple(x for b in brow for x in b[i]))
    return tuple(out)


def equal(a, b) -> bool:
    return len(a) == len(b) and all(
        len(r) == len(s) and all(x == y for x, y in zip(r, s)) for r, s in zip(a, b)
    )


def is_zero_matrix(a) -> bool:
    return all(x.is_zero() for row in a for x in row)


def to_strings(a) -> list:
    return [[str(x) for x in row] for row in a]
