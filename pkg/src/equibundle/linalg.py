"""Dense exact linear algebra over a cyclotomic field.

Matrices are immutable-by-convention lists of lists of CycNum.  Pivoting is
deterministic (first nonzero entry), so reduced forms and nullspace bases are
reproducible.
"""

from __future__ import annotations

from .cyclotomic import CycNum
from .errors import DimensionMismatch, SingularMatrix

Matrix = list[list[CycNum]]


def identity_matrix(n: int, size: int) -> Matrix:
    one, zero = CycNum.one(n), CycNum.zero(n)
    return [[one if i == j else zero for j in range(size)] for i in range(size)]


def zero_matrix(n: int, rows: int, cols: int) -> Matrix:
    zero = CycNum.zero(n)
    return [[zero] * cols for _ in range(rows)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise DimensionMismatch("matrix product shape mismatch")
    n = a[0][0].n
    zero = CycNum.zero(n)
    bt = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = zero
            for x, y in zip(row, col):
                if not (x.is_zero() or y.is_zero()):
                    acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out


def mat_vec(a: Matrix, v: list[CycNum]) -> list[CycNum]:
    n = a[0][0].n
    zero = CycNum.zero(n)
    out = []
    for row in a:
        acc = zero
        for x, y in zip(row, v):
            if not (x.is_zero() or y.is_zero()):
                acc = acc + x * y
        out.append(acc)
    return out


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def mat_scale(a: Matrix, c: CycNum) -> Matrix:
    return [[x * c for x in row] for row in a]


def mat_neg(a: Matrix) -> Matrix:
    return [[-x for x in row] for row in a]


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return len(a) == len(b) and all(r1 == r2 for r1, r2 in zip(a, b))


def mat_trace(a: Matrix) -> CycNum:
    acc = CycNum.zero(a[0][0].n)
    for i in range(len(a)):
        acc = acc + a[i][i]
    return acc


def mat_is_identity(a: Matrix) -> bool:
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            if i == j:
                if not x.is_one():
                    return False
            elif not x.is_zero():
                return False
    return True


def mat_is_zero(a: Matrix) -> bool:
    return all(x.is_zero() for row in a for x in row)


def mat_inv(a: Matrix) -> Matrix:
    size = len(a)
    if any(len(row) != size for row in a):
        raise DimensionMismatch("inverse of a non-square matrix")
    n = a[0][0].n
    work = [list(row) for row in a]
    aug = identity_matrix(n, size)
    for col in range(size):
        pivot = next((i for i in range(col, size) if not work[i][col].is_zero()), None)
        if pivot is None:
            raise SingularMatrix("matrix is singular")
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            aug[col], aug[pivot] = aug[pivot], aug[col]
        pinv = work[col][col].inv()
        work[col] = [x * pinv for x in work[col]]
        aug[col] = [x * pinv for x in aug[col]]
        for i in range(size):
            if i != col and not work[i][col].is_zero():
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[col])]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return aug


def kron(a: Matrix, b: Matrix) -> Matrix:
    br, bc = len(b), len(b[0])
    out = []
    for arow in a:
        for i in range(br):
            out_row = []
            for x in arow:
                if x.is_zero():
                    out_row.extend([x] * bc)
                else:
                    out_row.extend(x * y for y in b[i])
            out.append(out_row)
    return out


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and pivot column list."""
    if not a:
        return [], []
    rows = [list(r) for r in a]
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if not rows[i][col].is_zero()), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pinv = rows[r][col].inv()
        rows[r] = [x * pinv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def nullspace(a: Matrix) -> list[list[CycNum]]:
    """Basis of the right kernel, deterministic order (free columns ascending)."""
    if not a:
        return []
    n = a[0][0].n
    ncols = len(a[0])
    reduced, pivots = rref(a)
    pivot_set = set(pivots)
    free_cols = [j for j in range(ncols) if j not in pivot_set]
    zero, one = CycNum.zero(n), CycNum.one(n)
    basis = []
    for fc in free_cols:
        vec = [zero] * ncols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced[r][fc]
        basis.append(vec)
    return basis
