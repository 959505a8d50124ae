"""Exact rational and integer matrices.

Everything here is exact: entries are python ints or fractions.Fraction,
and every predicate (rank, definiteness, consistency) is decided by exact
elimination. No floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


def _as_rows(entries) -> tuple[tuple, ...]:
    rows = tuple(tuple(r) for r in entries)
    if rows:
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
    return rows


class RatMatrix:
    """Immutable matrix with Fraction entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable]):
        rows = _as_rows(entries)
        self.entries = tuple(tuple(Fraction(x) for x in r) for r in rows)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls([[0] * cols for _ in range(rows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def __eq__(self, other):
        return isinstance(other, RatMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"RatMatrix({[list(r) for r in self.entries]!r})"

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return RatMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "RatMatrix":
        c = Fraction(c)
        return RatMatrix([[c * x for x in r] for r in self.entries])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.entries))
        return RatMatrix(
            [[_dot(r, c) for c in cols] for r in self.entries]
        )

    def transpose(self) -> "RatMatrix":
        return RatMatrix(list(zip(*self.entries)))

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows)
            for j in range(i)
        )

    def apply(self, v: Sequence) -> tuple:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise ValueError("length mismatch")
        return tuple(_dot(r, v) for r in self.entries)

    def value_at(self, v: Sequence) -> Fraction:
        """The quadratic form value v^T M v."""
        if len(v) != self.rows or self.rows != self.cols:
            raise ValueError("need a square matrix and a matching vector")
        total = Fraction(0)
        for i, vi in enumerate(v):
            if not vi:
                continue
            total += vi * _dot(self.entries[i], v)
        return total

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("det of non-square matrix")
        m = [list(r) for r in self.entries]
        n = self.rows
        det = Fraction(1)
        for col in range(n):
            piv = next((r for r in range(col, n) if m[r][col]), None)
            if piv is None:
                return Fraction(0)
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = -det
            det *= m[col][col]
            inv = 1 / m[col][col]
            for r in range(col + 1, n):
                if m[r][col]:
                    f = m[r][col] * inv
                    m[r] = [x - f * y for x, y in zip(m[r], m[col])]
        return det

    def rank(self) -> int:
        m = [list(r) for r in self.entries]
        return _row_reduce(m)

    def inverse(self) -> "RatMatrix":
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        m = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.entries)]
        rank = _row_reduce(m, limit=n)
        if rank < n:
            raise ValueError("singular matrix")
        return RatMatrix([r[n:] for r in m])

    def to_int(self) -> tuple["IntMatrix", int]:
        """Smallest positive integer c with c*M integral, and that multiple."""
        c = 1
        for r in self.entries:
            for x in r:
                c = c * x.denominator // math.gcd(c, x.denominator)
        return IntMatrix([[int(x * c) for x in r] for r in self.entries]), c


class IntMatrix:
    """Immutable matrix with int entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[int]]):
        rows = _as_rows(entries)
        for r in rows:
            for x in r:
                if not isinstance(x, int):
                    raise TypeError(f"non-integer entry {x!r}")
        self.entries = rows
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.entries]!r})"

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.entries))
        return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.entries])

    def transpose(self) -> "IntMatrix":
        return IntMatrix(list(zip(*self.entries)))

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows)
            for j in range(i)
        )

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ValueError("length mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.entries)

    def value_at(self, v: Sequence[int]) -> int:
        """The quadratic form value v^T M v."""
        if len(v) != self.rows or self.rows != self.cols:
            raise ValueError("need a square matrix and a matching vector")
        total = 0
        for i, vi in enumerate(v):
            if vi:
                total += vi * sum(a * b for a, b in zip(self.entries[i], v))
        return total

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("det of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for col in range(n - 1):
            piv = next((r for r in range(col, n) if m[r][col]), None)
            if piv is None:
                return 0
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                sign = -sign
            for r in range(col + 1, n):
                for c in range(col + 1, n):
                    m[r][c] = (m[r][c] * m[col][col] - m[r][col] * m[col][c]) // prev
                m[r][col] = 0
            prev = m[col][col]
        return sign * m[n - 1][n - 1]

    def rank(self) -> int:
        return self.to_rat().rank()

    def to_rat(self) -> RatMatrix:
        return RatMatrix(self.entries)


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def _row_reduce(m: list[list[Fraction]], limit: int | None = None) -> int:
    """In-place reduced row echelon form. Returns the rank.

    limit caps the columns eligible as pivots (used for augmented systems).
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    stop = cols if limit is None else limit
    rank = 0
    for col in range(stop):
        piv = next((r for r in range(rank, rows) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(rows):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def solve_affine(a: RatMatrix, b: Sequence) -> tuple[tuple, ...] | None:
    """Solve A x = b. Returns (particular, basis...) or None if inconsistent.

    The first tuple is one solution; the rest span the solution space of
    A x = 0. All entries are Fractions.
    """
    rows, cols = a.rows, a.cols
    m = [list(r) + [Fraction(b[i])] for i, r in enumerate(a.entries)]
    _row_reduce(m, limit=cols)
    pivots = []
    for r in m:
        col = next((j for j in range(cols) if r[j]), None)
        if col is None:
            if r[cols]:
                return None
        else:
            pivots.append(col)
    pivot_set = set(pivots)
    particular = [Fraction(0)] * cols
    for r, col in enumerate(pivots):
        particular[col] = m[r][cols]
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * cols
        v[free] = Fraction(1)
        for r, col in enumerate(pivots):
            v[col] = -m[r][free]
        basis.append(tuple(v))
    return (tuple(particular), *basis)


def nullspace(a: RatMatrix) -> list[tuple]:
    """Basis of {x : A x = 0}, as tuples of Fractions."""
    sol = solve_affine(a, [0] * a.rows)
    assert sol is not None
    return list(sol[1:])


@dataclass(frozen=True)
class PDResult:
    """Outcome of a definiteness check.

    When the matrix is not positive definite, witness is an exact rational
    vector v with v^T G v <= 0.
    """

    is_pd: bool
    witness: tuple[Fraction, ...] | None = None


def pd_check(g: RatMatrix) -> PDResult:
    """Decide positive definiteness by symmetric Gaussian elimination.

    G is PD iff all elimination pivots are positive. On failure the witness
    is built from the first nonpositive pivot: if after k successful steps
    the Schur complement has nonpositive leading entry, the witness is the
    preimage of the corresponding unit vector under the accumulated row
    operations, so v^T G v equals that entry exactly.
    """
    if not g.is_symmetric():
        raise ValueError("pd_check needs a symmetric matrix")
    n = g.rows
    s = [list(r) for r in g.entries]
    # steps[k][r] = multiplier that cleared s[r][k] at step k (r > k)
    steps: list[list[Fraction]] = []
    for k in range(n):
        d = s[k][k]
        if d <= 0:
            # v = L^{-T} e_k for the unit lower triangular L built so far,
            # so v^T G v equals the offending pivot d
            v = [Fraction(0)] * n
            v[k] = Fraction(1)
            for j in range(k - 1, -1, -1):
                v[j] = -sum(steps[j][i] * v[i] for i in range(j + 1, k + 1))
            vec = tuple(v)
            assert g.value_at(vec) == d
            return PDResult(False, vec)
        mults = [s[r][k] / d if r > k else Fraction(0) for r in range(n)]
        row_k = s[k]
        for r in range(k + 1, n):
            f = mults[r]
            if f:
                row_r = s[r]
                for c in range(k + 1, n):
                    row_r[c] -= f * row_k[c]
        steps.append(mults)
    return PDResult(True)


def negative_direction(d: RatMatrix) -> tuple[Fraction, ...] | None:
    """An exact vector v with v^T D v < 0, or None if D is PSD.

    Works by recursive completion of squares: pivot on any positive
    diagonal entry and recurse on the Schur complement; a negative diagonal
    entry gives a witness directly; an all-zero diagonal with a nonzero
    off-diagonal entry c at (i, j) gives e_i - sign(c) e_j.
    """
    if not d.is_symmetric():
        raise ValueError("negative_direction needs a symmetric matrix")

    def rec(s: list[list[Fraction]]) -> list[Fraction] | None:
        m = len(s)
        if m == 0:
            return None
        for a in range(m):
            if s[a][a] < 0:
                v = [Fraction(0)] * m
                v[a] = Fraction(1)
                return v
        piv = next((a for a in range(m) if s[a][a] > 0), None)
        if piv is None:
            # zero diagonal; any nonzero off-diagonal entry gives a witness
            for a in range(m):
                for b in range(a + 1, m):
                    if s[a][b]:
                        v = [Fraction(0)] * m
                        v[a] = Fraction(1)
                        v[b] = Fraction(-1) if s[a][b] > 0 else Fraction(1)
                        return v
            return None
        rest = [a for a in range(m) if a != piv]
        dpiv = s[piv][piv]
        schur = [
            [s[a][b] - s[a][piv] * s[piv][b] / dpiv for b in rest]
            for a in rest
        ]
        sub = rec(schur)
        if sub is None:
            return None
        v = [Fraction(0)] * m
        for pos, a in enumerate(rest):
            v[a] = sub[pos]
        v[piv] = -sum(s[piv][a] * v[a] for a in rest) / dpiv
        return v

    v = rec([list(r) for r in d.entries])
    if v is None:
        return None
    vec = tuple(v)
    assert d.value_at(vec) < 0
    return vec


def primitive_vector(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to integers with content 1.

    Orientation is preserved (the scale factor is positive).
    """
    fracs = [Fraction(x) for x in v]
    if not any(fracs):
        raise ValueError("zero vector")
    den = 1
    for x in fracs:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in fracs]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return tuple(x // g for x in ints)


def canonical_sign(v: Sequence[int]) -> tuple[int, ...]:
    """The representative of {v, -v} whose first nonzero entry is positive."""
    for x in v:
        if x > 0:
            return tuple(v)
        if x < 0:
            return tuple(-y for y in v)
    raise ValueError("zero vector")
