"""Exact dense linear algebra over the Gaussian rationals.

Gaussian elimination with the first nonzero pivot and no scaling, as fits a
field where every comparison with zero is decidable.  Matrices are lists of
lists and are never mutated in place by the public functions.
"""

from __future__ import annotations

from .gaussian import GR_ONE, GR_ZERO, GaussianRational

Matrix = list[list[GaussianRational]]


def _copy(m: Matrix) -> Matrix:
    return [row[:] for row in m]


def det(matrix: Matrix) -> GaussianRational:
    """Exact determinant; the empty matrix has determinant 1."""
    n = len(matrix)
    if n == 0:
        return GR_ONE
    m = _copy(matrix)
    sign = 1
    result = GR_ONE
    for col in range(n):
        pivot_row = None
        for r in range(col, n):
            if not m[r][col].is_zero():
                pivot_row = r
                break
        if pivot_row is None:
            return GR_ZERO
        if pivot_row != col:
            m[col], m[pivot_row] = m[pivot_row], m[col]
            sign = -sign
        pivot = m[col][col]
        result = result * pivot
        for r in range(col + 1, n):
            factor = m[r][col]
            if factor.is_zero():
                continue
            factor = factor / pivot
            row = m[r]
            prow = m[col]
            for c in range(col + 1, n):
                row[c] = row[c] - factor * prow[c]
    return result if sign > 0 else -result


def solve(matrix: Matrix, rhs: list[GaussianRational]) -> list[GaussianRational]:
    """Solve a square nonsingular system exactly; raises on a singular matrix."""
    n = len(matrix)
    m = [matrix[r][:] + [rhs[r]] for r in range(n)]
    for col in range(n):
        pivot_row = None
        for r in range(col, n):
            if not m[r][col].is_zero():
                pivot_row = r
                break
        if pivot_row is None:
            raise ZeroDivisionError("singular system")
        if pivot_row != col:
            m[col], m[pivot_row] = m[pivot_row], m[col]
        pivot = m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col]
            if factor.is_zero():
                continue
            factor = factor / pivot
            row = m[r]
            prow = m[col]
            for c in range(col + 1, n + 1):
                row[c] = row[c] - factor * prow[c]
    x = [GR_ZERO] * n
    for r in range(n - 1, -1, -1):
        acc = m[r][n]
        for c in range(r + 1, n):
            acc = acc - m[r][c] * x[c]
        x[r] = acc / m[r][r]
    return x


def _echelonize(m: Matrix, cols: int) -> list[int]:
    """Row-reduce in place over the first `cols` columns; returns pivot columns."""
    pivots = []
    row = 0
    for col in range(cols):
        pivot_row = None
        for r in range(row, len(m)):
            if not m[r][col].is_zero():
                pivot_row = r
                break
        if pivot_row is None:
            continue
        if pivot_row != row:
            m[row], m[pivot_row] = m[pivot_row], m[row]
        pivot = m[row][col]
        for r in range(row + 1, len(m)):
            factor = m[r][col]
            if factor.is_zero():
                continue
            factor = factor / pivot
            target = m[r]
            source = m[row]
            for c in range(col, len(target)):
                target[c] = target[c] - factor * source[c]
        pivots.append(col)
        row += 1
    return pivots


def solve_any(matrix: Matrix, rhs: list[GaussianRational]):
    """A particular solution of a possibly singular system, or None.

    Free variables are set to zero, which makes the output deterministic.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    m = [matrix[r][:] + [rhs[r]] for r in range(rows)]
    pivots = _echelonize(m, cols)
    rank = len(pivots)
    for r in range(rank, rows):
        if not m[r][cols].is_zero():
            return None
    x = [GR_ZERO] * cols
    for i in range(rank - 1, -1, -1):
        col = pivots[i]
        acc = m[i][cols]
        for c in range(col + 1, cols):
            acc = acc - m[i][c] * x[c]
        x[col] = acc / m[i][col]
    return x


def nullspace_vector(matrix: Matrix, cols: int):
    """A nonzero kernel vector of a rows x cols matrix, or None if trivial.

    The first free column is set to 1, the other free columns to 0.
    """
    rows = len(matrix)
    m = _copy(matrix)
    pivots = _echelonize(m, cols)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    if not free:
        return None
    x = [GR_ZERO] * cols
    x[free[0]] = GR_ONE
    for i in range(len(pivots) - 1, -1, -1):
        col = pivots[i]
        acc = GR_ZERO
        for c in range(col + 1, cols):
            if not x[c].is_zero():
                acc = acc + m[i][c] * x[c]
        x[col] = -acc / m[i][col]
    return x


def lstsq_solve(rows: list[list[GaussianRational]], targets: list[GaussianRational]):
    """Exact least-squares coefficients for design rows and targets.

    Forms the Hermitian normal equations M*Mx = M*t and returns a particular
    solution (the normal equations are always consistent).
    """
    if not rows:
        raise ValueError("least squares needs at least one sample row")
    ncols = len(rows[0])
    gram = [[GR_ZERO] * ncols for _ in range(ncols)]
    rhs = [GR_ZERO] * ncols
    for row, t in zip(rows, targets):
        conj = [c.conjugate() for c in row]
        for i in range(ncols):
            ci = conj[i]
            if ci.is_zero():
                continue
            gi = gram[i]
            for j in range(i, ncols):
                gi[j] = gi[j] + ci * row[j]
            rhs[i] = rhs[i] + ci * t
    for i in range(ncols):
        for j in range(i):
            gram[i][j] = gram[j][i].conjugate()
    sol = solve_any(gram, rhs)
    if sol is None:
        raise ArithmeticError("normal equations unexpectedly inconsistent")
    return sol
