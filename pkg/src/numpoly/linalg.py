"""Exact linear algebra: determinants and Smith normal form.

Everything here works on plain lists of lists of ints or Fractions.
The Smith normal form comes in two flavours: over the integers, and
over Z/p^k where diagonal entries are normalized to powers of p (0
standing for p^k, the annihilated case).  Both record the unimodular
transforms so the factorization can be re-verified by multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ShapeError
from .exact import int_ord_p


def _dims(matrix) -> tuple[int, int]:
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    if any(len(row) != n for row in matrix):
        raise ShapeError("ragged matrix")
    return m, n


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b, modulus: int | None = None):
    ma, na = _dims(a)
    mb, nb = _dims(b)
    if na != mb:
        raise ShapeError(f"cannot multiply {ma}x{na} by {mb}x{nb}")
    out = []
    for i in range(ma):
        row = []
        for j in range(nb):
            s = sum(a[i][t] * b[t][j] for t in range(na))
            row.append(s % modulus if modulus else s)
        out.append(row)
    return out


def det_fraction(matrix) -> Fraction:
    """Determinant by exact Gaussian elimination over Q."""
    m, n = _dims(matrix)
    if m != n:
        raise ShapeError("determinant of a non-square matrix")
    a = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
            det = -det
        pivot = a[col][col]
        det *= pivot
        for r in range(col + 1, n):
            if a[r][col]:
                factor = a[r][col] / pivot
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return det


def det_int(matrix) -> int:
    """Fraction-free (Bareiss) determinant for integer matrices."""
    m, n = _dims(matrix)
    if m != n:
        raise ShapeError("determinant of a non-square matrix")
    a = [list(map(int, row)) for row in matrix]
    sign = 1
    prev = 1
    for col in range(n - 1):
        pivot_row = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot_row is None:
            return 0
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
            sign = -sign
        for r in range(col + 1, n):
            for c in range(col + 1, n):
                a[r][c] = (a[r][c] * a[col][col] - a[r][col] * a[col][c]) // prev
            a[r][col] = 0
        prev = a[col][col]
    return sign * a[n - 1][n - 1]


@dataclass
class SnfResult:
    """L * original * R = diagonal, with the divisibility chain d1 | d2 | ...

    Over Z/p^k the diagonal holds powers of p, with 0 standing for the
    annihilated entry p^k; left and right are invertible mod p^k.
    """

    diagonal: list[int]
    left: list[list[int]]
    right: list[list[int]]
    modulus: int | None = None

    def verify(self, original) -> bool:
        product = mat_mul(mat_mul(self.left, original), self.right, self.modulus)
        m, n = _dims(product)
        for i in range(m):
            for j in range(n):
                expected = self.diagonal[i] if i == j and i < len(self.diagonal) else 0
                value = product[i][j]
                if self.modulus:
                    expected %= self.modulus
                    value %= self.modulus
                if value != expected:
                    return False
        return True


def _swap_rows(a, left, i, j):
    a[i], a[j] = a[j], a[i]
    left[i], left[j] = left[j], left[i]


def _swap_cols(a, right, i, j):
    for row in a:
        row[i], row[j] = row[j], row[i]
    for row in right:
        row[i], row[j] = row[j], row[i]


def smith_normal_form(matrix, modulus: int | None = None, p: int | None = None) -> SnfResult:
    """Smith normal form over Z, or over Z/p^k when ``modulus`` = p^k is given.

    Over Z/p^k the prime must be supplied; pivots are chosen by minimal
    p-adic valuation, which makes one elimination pass per pivot exact
    and yields the divisibility chain for free.
    """
    m, n = _dims(matrix)
    if modulus is not None:
        if p is None:
            raise ShapeError("modular Smith form needs the underlying prime")
        return _snf_mod_prime_power(matrix, p, modulus)
    a = [list(map(int, row)) for row in matrix]
    left = identity(m)
    right = identity(n)
    r = min(m, n)
    for t in range(r):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            _swap_rows(a, left, t, best[0])
            _swap_cols(a, right, t, best[1])
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    for c in range(n):
                        a[i][c] -= q * a[t][c]
                    for c in range(m):
                        left[i][c] -= q * left[t][c]
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= q * row[t]
                    for row in right:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        dirty = True
            if dirty:
                continue
            # pivot must divide the rest of the submatrix
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % a[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            for c in range(n):
                a[t][c] += a[offender][c]
            for c in range(m):
                left[t][c] += left[offender][c]
        if a[t][t] < 0:
            for c in range(n):
                a[t][c] = -a[t][c]
            for c in range(m):
                left[t][c] = -left[t][c]
    diagonal = [a[i][i] for i in range(r)]
    return SnfResult(diagonal, left, right, None)


def _snf_mod_prime_power(matrix, p: int, modulus: int) -> SnfResult:
    k = int_ord_p(modulus, p)
    if p**k != modulus:
        raise ShapeError(f"modulus {modulus} is not a power of {p}")
    m, n = _dims(matrix)
    a = [[int(x) % modulus for x in row] for row in matrix]
    left = identity(m)
    right = identity(n)

    def val(x: int) -> int:
        return k if x == 0 else min(k, int_ord_p(x, p))

    r = min(m, n)
    for t in range(r):
        best = None
        best_v = k
        for i in range(t, m):
            for j in range(t, n):
                v = val(a[i][j])
                if v < best_v:
                    best, best_v = (i, j), v
        if best is None:
            break
        _swap_rows(a, left, t, best[0])
        _swap_cols(a, right, t, best[1])
        pivot = a[t][t]
        unit = pivot // p**best_v
        unit_inv = pow(unit, -1, modulus)
        # scale the pivot row so the pivot is exactly p^v
        for c in range(n):
            a[t][c] = a[t][c] * unit_inv % modulus
        for c in range(m):
            left[t][c] = left[t][c] * unit_inv % modulus
        pivot = a[t][t]
        for i in range(t + 1, m):
            if a[i][t]:
                q = a[i][t] // pivot  # exact: valuation of a[i][t] >= v
                for c in range(n):
                    a[i][c] = (a[i][c] - q * a[t][c]) % modulus
                for c in range(m):
                    left[i][c] = (left[i][c] - q * left[t][c]) % modulus
        for j in range(t + 1, n):
            if a[t][j]:
                q = a[t][j] // pivot
                for row in a:
                    row[j] = (row[j] - q * row[t]) % modulus
                for row in right:
                    row[j] = (row[j] - q * row[t]) % modulus
    diagonal = [a[i][i] for i in range(r)]
    return SnfResult(diagonal, left, right, modulus)


def module_exponents(diagonal: list[int], extra_free: int, p: int, k: int) -> tuple[int, ...]:
    """Invariant factor exponents of a Z/p^k-module given the SNF diagonal
    of a presentation matrix plus untouched free summands."""
    exps = []
    for d in diagonal:
        e = k if d == 0 else min(k, int_ord_p(d, p))
        if e:
            exps.append(e)
    exps.extend([k] * extra_free)
    return tuple(sorted(exps))
