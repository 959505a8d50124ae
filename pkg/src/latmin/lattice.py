"""Gram matrices and exact minimal vector enumeration.

A GramMatrix wraps an exact symmetric positive definite rational matrix
together with its minimal integer scaling. Minimal vectors are found by
Fincke-Pohst enumeration run on the integer-scaled form, with all interval
bounds computed through exact integer square roots, so the result is a
proven complete set, not a heuristic one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .matrices import (
    IntMatrix,
    RatMatrix,
    canonical_sign,
    pd_check,
)

MAX_DIMENSION = 16


class UnsupportedSize(ValueError):
    """Raised for dimensions beyond the supported enumeration range."""


class NotPositiveDefinite(ValueError):
    """Raised with an exact witness vector v such that G[v] <= 0."""

    def __init__(self, witness):
        super().__init__(f"form is not positive definite; witness {witness}")
        self.witness = witness


class GramMatrix:
    """Symmetric positive definite rational matrix with integer scaling.

    gram.gint equals gram.scale * gram.mat entrywise, where scale is the
    least positive integer clearing all denominators.
    """

    __slots__ = ("n", "mat", "scale", "gint")

    def __init__(self, entries):
        mat = entries if isinstance(entries, RatMatrix) else RatMatrix(entries)
        if mat.rows != mat.cols:
            raise ValueError("Gram matrix must be square")
        if mat.rows > MAX_DIMENSION:
            raise UnsupportedSize(
                f"dimension {mat.rows} exceeds supported maximum {MAX_DIMENSION}"
            )
        if not mat.is_symmetric():
            raise ValueError("Gram matrix must be symmetric")
        res = pd_check(mat)
        if not res.is_pd:
            raise NotPositiveDefinite(res.witness)
        self.n = mat.rows
        self.mat = mat
        self.gint, self.scale = mat.to_int()

    def __eq__(self, other):
        return isinstance(other, GramMatrix) and self.mat == other.mat

    def __hash__(self):
        return hash(self.mat)

    def __repr__(self):
        return f"GramMatrix(scale={self.scale}, gint={self.gint.entries})"


def eval_form(g: GramMatrix, a: Sequence[int]) -> Fraction:
    """The value G[a] = a^T G a."""
    return g.mat.value_at(a)


@dataclass(frozen=True)
class ShortVectorSet:
    """All minimal vectors of a form, one representative per +- pair.

    Representatives have positive first nonzero coordinate and are sorted
    lexicographically.
    """

    n: int
    min: Fraction
    vectors: tuple[tuple[int, ...], ...]

    @property
    def s(self) -> int:
        return len(self.vectors)


def _floor_plus_sqrt(p: Fraction, r: Fraction) -> int:
    """floor(p + sqrt(r)) computed exactly (r >= 0)."""
    a, b = p.numerator, p.denominator
    rn, rd = r.numerator, r.denominator
    return (a * rd + isqrt(rn * rd * b * b)) // (b * rd)


def _ldl(gint: IntMatrix) -> tuple[list[Fraction], list[list[Fraction]]]:
    """G = L D L^T for unit lower triangular L; returns (diag D, L)."""
    n = gint.rows
    s = [[Fraction(x) for x in row] for row in gint.entries]
    lower = [[Fraction(0)] * n for _ in range(n)]
    diag = []
    for k in range(n):
        d = s[k][k]
        assert d > 0  # caller guarantees positive definiteness
        diag.append(d)
        lower[k][k] = Fraction(1)
        row_k = s[k]
        for r in range(k + 1, n):
            f = s[r][k] / d
            lower[r][k] = f
            if f:
                row_r = s[r]
                for c in range(k + 1, n):
                    row_r[c] -= f * row_k[c]
    return diag, lower


def minimal_vectors(g: GramMatrix) -> ShortVectorSet:
    """Complete minimal vector enumeration by Fincke-Pohst.

    Runs on the integer-scaled form, with the search bound shrinking to the
    best value seen, so the tree stays tight even for skewed forms.
    """
    n = g.n
    gint = g.gint
    diag, lower = _ldl(gint)
    # Q(x) = sum_i diag[i] * (x_i + sum_{j>i} lower[j][i] x_j)^2
    mult = [[lower[j][i] for j in range(i + 1, n)] for i in range(n)]

    best = min(gint.entries[i][i] for i in range(n))
    found: list[tuple[int, ...]] = []
    x = [0] * n

    def rec(i: int, used: Fraction) -> None:
        nonlocal best, found
        if i < 0:
            if any(x):
                q = used
                assert q.denominator == 1
                q = int(q)
                if q < best:
                    best = q
                    found = [tuple(x)]
                elif q == best:
                    found.append(tuple(x))
            return
        c = Fraction(0)
        row = mult[i]
        for off, f in enumerate(row):
            if f:
                xv = x[i + 1 + off]
                if xv:
                    c += f * xv
        budget = (best - used) / diag[i]
        if budget < 0:
            return
        hi = _floor_plus_sqrt(-c, budget)
        lo = -_floor_plus_sqrt(c, budget)
        for xi in range(lo, hi + 1):
            x[i] = xi
            step = diag[i] * (xi + c) ** 2
            if used + step <= best:
                rec(i - 1, used + step)
        x[i] = 0

    rec(n - 1, Fraction(0))
    reps = sorted({canonical_sign(v) for v in found})
    return ShortVectorSet(n=n, min=Fraction(best, g.scale), vectors=tuple(reps))


def short_vectors(
    g: GramMatrix, bound: Fraction
) -> tuple[tuple[Fraction, tuple[int, ...]], ...]:
    """All vectors with G[v] <= bound, one per +- pair, sorted by value.

    Unlike minimal_vectors the search bound stays fixed, so vectors above
    the minimum are kept too.
    """
    n = g.n
    limit = Fraction(bound) * g.scale
    if limit < 0:
        return ()
    diag, lower = _ldl(g.gint)
    mult = [[lower[j][i] for j in range(i + 1, n)] for i in range(n)]
    found: list[tuple[int, tuple[int, ...]]] = []
    x = [0] * n

    def rec(i: int, used: Fraction) -> None:
        if i < 0:
            if any(x):
                assert used.denominator == 1
                found.append((int(used), tuple(x)))
            return
        c = Fraction(0)
        row = mult[i]
        for off, f in enumerate(row):
            if f:
                xv = x[i + 1 + off]
                if xv:
                    c += f * xv
        budget = (limit - used) / diag[i]
        if budget < 0:
            return
        hi = _floor_plus_sqrt(-c, budget)
        lo = -_floor_plus_sqrt(c, budget)
        for xi in range(lo, hi + 1):
            x[i] = xi
            step = diag[i] * (xi + c) ** 2
            if used + step <= limit:
                rec(i - 1, used + step)
        x[i] = 0

    rec(n - 1, Fraction(0))
    reps = {(q, canonical_sign(v)) for q, v in found}
    return tuple(
        sorted((Fraction(q, g.scale), v) for q, v in reps)
    )


def well_rounded(svs: ShortVectorSet) -> bool:
    """True when the minimal vectors span the full space."""
    return IntMatrix(svs.vectors).rank() == svs.n
