"""Exact integer linear algebra.

Everything here works on Python ints, so entries never overflow. Matrices are
small (a few hundred rows at most), so plain nested lists are used internally
and :class:`IntMatrix` is only a thin immutable wrapper for the public API.

Conventions
-----------
* Hermite normal form is *row style*: ``U @ A == H`` with ``U`` unimodular,
  ``H`` in row echelon form, every pivot positive and every entry above a
  pivot reduced into ``[0, pivot)``.
* Smith normal form returns ``U @ A @ V == D`` with nonnegative diagonal
  ``d_1 | d_2 | ...``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

IntVector = tuple  # tuple[int, ...]; fixed length once built


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major as a tuple of row tuples."""

    rows: tuple
    ncols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(rows, ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(tuple((0,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], nrows: int | None = None) -> "IntMatrix":
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        return cls(tuple(tuple(int(c[i]) for c in cols) for i in range(nrows)), len(cols))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def column(self, j: int) -> IntVector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[IntVector]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(tuple(self.columns()), self.nrows)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            return IntMatrix(tuple(map(tuple, matmul(self.rows, other.rows, other.ncols))), other.ncols)
        # treat as a column vector
        return tuple(sum(a * b for a, b in zip(r, other)) for r in self.rows)

    def det(self) -> int:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return determinant(self.rows)

    def is_square(self) -> bool:
        return self.nrows == self.ncols


@dataclass(frozen=True)
class SmithDecomposition:
    D: IntMatrix
    U: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.shape))]


def as_rows(A) -> list[list[int]]:
    if isinstance(A, IntMatrix):
        return [list(r) for r in A.rows]
    return [list(map(int, r)) for r in A]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], ncols_b: int | None = None) -> list[list[int]]:
    if ncols_b is None:
        ncols_b = len(B[0]) if B else 0
    cols = [[row[j] for row in B] for j in range(ncols_b)]
    return [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in A]


def identity_rows(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _hnf_rows(A: list[list[int]], ncols: int, track: bool = True):
    """Row-style HNF in place on a copy; returns (H, U, pivot_columns)."""
    H = [list(r) for r in A]
    m = len(H)
    U = identity_rows(m) if track else None

    def swap(i, j):
        H[i], H[j] = H[j], H[i]
        if track:
            U[i], U[j] = U[j], U[i]

    def addmul(dst, src, q):  # row dst -= q * row src
        if q == 0:
            return
        rs, rd = H[src], H[dst]
        for c in range(ncols):
            if rs[c]:
                rd[c] -= q * rs[c]
        if track:
            us, ud = U[src], U[dst]
            for c in range(m):
                if us[c]:
                    ud[c] -= q * us[c]

    def negate(i):
        H[i] = [-x for x in H[i]]
        if track:
            U[i] = [-x for x in U[i]]

    pivots = []
    r = 0
    for c in range(ncols):
        if r >= m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(H[i][c]))
            if best != r:
                swap(best, r)
            done = True
            for i in range(r + 1, m):
                if H[i][c]:
                    addmul(i, r, H[i][c] // H[r][c])
                    if H[i][c]:
                        done = False
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            negate(r)
        p = H[r][c]
        for i in range(r):
            addmul(i, r, H[i][c] // p)
        pivots.append(c)
        r += 1
    return H, U, pivots


def hermite_normal_form(A) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form ``(H, U)`` with ``U @ A == H``."""
    ncols = A.ncols if isinstance(A, IntMatrix) else (len(A[0]) if len(A) else 0)
    rows = as_rows(A)
    H, U, _ = _hnf_rows(rows, ncols)
    return IntMatrix.from_rows(H, ncols), IntMatrix.from_rows(U, len(rows))


def hnf_rows(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Nonzero rows of the HNF, without tracking the transform."""
    H, _, pivots = _hnf_rows(rows, ncols, track=False)
    return H[: len(pivots)]


def _smith(A: list[list[int]], m: int, n: int):
    D = [list(r) for r in A]
    U = identity_rows(m)
    V = identity_rows(n)

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def row_add(dst, src, q):  # row dst -= q * row src
        D[dst] = [a - q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def col_add(dst, src, q):  # col dst -= q * col src
        for row in D:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not entries:
            break
        _, i0, j0 = min(entries)
        row_swap(t, i0)
        col_swap(t, j0)
        while True:
            changed = False
            for i in range(t + 1, m):
                if D[i][t]:
                    row_add(i, t, D[i][t] // D[t][t])
                    if D[i][t]:
                        changed = True
            for j in range(t + 1, n):
                if D[t][j]:
                    col_add(j, t, D[t][j] // D[t][t])
                    if D[t][j]:
                        changed = True
            if changed:
                # move the smallest remaining entry of row/col t into the pivot
                cand = [(abs(D[i][t]), i, t) for i in range(t, m) if D[i][t]]
                cand += [(abs(D[t][j]), t, j) for j in range(t, n) if D[t][j]]
                _, i1, j1 = min(cand)
                if i1 != t:
                    row_swap(t, i1)
                if j1 != t:
                    col_swap(t, j1)
                continue
            # divisibility: pivot must divide the whole remaining block
            p = D[t][t]
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is None:
                break
            row_add(t, bad[0], -1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return D, U, V


def smith_normal_form(A) -> SmithDecomposition:
    """Smith decomposition ``U @ A @ V == D`` with ``d_i | d_{i+1}``."""
    if isinstance(A, IntMatrix):
        m, n = A.shape
    else:
        m = len(A)
        n = len(A[0]) if m else 0
    D, U, V = _smith(as_rows(A), m, n)
    return SmithDecomposition(IntMatrix.from_rows(D, n), IntMatrix.from_rows(U, m), IntMatrix.from_rows(V, n))


def elementary_divisors(A) -> list[int]:
    """Nonzero diagonal entries of the Smith form."""
    return [d for d in smith_normal_form(A).diagonal if d]


def is_unimodular(A) -> bool:
    if isinstance(A, IntMatrix):
        if not A.is_square():
            raise ValueError("is_unimodular needs a square matrix")
        return A.det() in (1, -1)
    rows = as_rows(A)
    if any(len(r) != len(rows) for r in rows):
        raise ValueError("is_unimodular needs a square matrix")
    return determinant(rows) in (1, -1)


def is_primitive(v: Sequence[int]) -> bool:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g == 1


def primitive_part(v: Sequence[int]) -> IntVector:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        raise ValueError("zero vector has no primitive part")
    return tuple(int(x) // g for x in v)


def cokernel_structure(A) -> tuple[int, list[int]]:
    """Structure of ``Z^rows / colspan(A)`` as ``(free_rank, torsion)``."""
    if isinstance(A, IntMatrix):
        m, n = A.shape
    else:
        m = len(A)
        n = len(A[0]) if m else 0
    if n == 0 or m == 0:
        return m, []
    diag = smith_normal_form(A).diagonal
    rank = sum(1 for d in diag if d)
    return m - rank, [d for d in diag if d > 1]


def integer_kernel(A: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis (as rows) of the saturated lattice ``{x : A x = 0}``."""
    At = [[A[i][j] for i in range(len(A))] for j in range(ncols)]
    H, U, pivots = _hnf_rows(At, len(A))
    return [U[i] for i in range(len(pivots), ncols)]


def integer_section(P: list[list[int]], ncols: int) -> list[list[int]]:
    """Columns ``s_t`` (returned as rows) with ``P s_t = e_t``.

    ``P`` must map ``Z^ncols`` onto ``Z^rows``; otherwise ``ValueError``.
    """
    b = len(P)
    if b == 0:
        return []
    if ncols < b:
        raise ValueError("matrix is not surjective over Z")
    Pt = [[P[i][j] for i in range(b)] for j in range(ncols)]
    H, U, pivots = _hnf_rows(Pt, b)
    # U P^T = H, surjectivity forces H = [I; 0]
    for i in range(b):
        if H[i] != [int(i == j) for j in range(b)]:
            raise ValueError("matrix is not surjective over Z")
    return [U[i] for i in range(b)]


def rational_solve(A: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction] | None:
    """Unique solution of a square nonsingular system, or None if singular."""
    n = len(A)
    M = [[Fraction(x) for x in A[i]] + [Fraction(b[i])] for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return None
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return [M[i][n] for i in range(n)]


def rational_inverse(A: Sequence[Sequence[int]]) -> list[list[Fraction]] | None:
    n = len(A)
    cols = []
    for j in range(n):
        x = rational_solve(A, [int(i == j) for i in range(n)])
        if x is None:
            return None
        cols.append(x)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def unimodular_inverse(A: Sequence[Sequence[int]]) -> list[list[int]]:
    inv = rational_inverse(A)
    if inv is None or any(x.denominator != 1 for r in inv for x in r):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in r] for r in inv]


def rank(A: Sequence[Sequence[int]], ncols: int | None = None) -> int:
    if not A:
        return 0
    if ncols is None:
        ncols = len(A[0])
    return len(hnf_rows([list(r) for r in A], ncols))
