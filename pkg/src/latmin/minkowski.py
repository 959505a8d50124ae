"""Sublattices generated by minimal vectors.

Given the minimal vectors of a positive definite Gram matrix, these
routines decide whether the minimal vectors generate the whole lattice,
whether some subset of them forms a basis, and how large the index of a
sublattice spanned by n independent minimal vectors can get. Quotients
are described by their elementary divisors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .lattice import GramMatrix, ShortVectorSet, minimal_vectors, well_rounded
from .matrices import IntMatrix
from .normal_forms import hnf, snf


class DependentSubset(ValueError):
    """The chosen minimal vectors are linearly dependent."""


class NotWellRounded(ValueError):
    """The minimal vectors do not span the ambient space."""


@dataclass(frozen=True)
class SublatticeReport:
    """Full-rank sublattice spanned by a subset of the minimal vectors."""

    picks: tuple[int, ...]
    index: int
    divisors: tuple[int, ...]


def subset_index(svs: ShortVectorSet, picks: tuple[int, ...]) -> SublatticeReport:
    """Index and quotient structure of the sublattice spanned by picks.

    picks are positions into svs.vectors and must select n independent
    vectors.
    """
    if len(picks) != svs.n:
        raise DependentSubset("need exactly n vectors")
    m = IntMatrix([svs.vectors[i] for i in picks])
    index = abs(m.det())
    if index == 0:
        raise DependentSubset("chosen vectors are dependent")
    return SublatticeReport(tuple(picks), index, snf(m))


def generated_by_min(svs: ShortVectorSet) -> bool:
    """Whether the minimal vectors generate the full lattice Z^n."""
    if svs.s < svs.n:
        return False
    m = IntMatrix(list(svs.vectors))
    h, _ = hnf(m)
    top = h.entries[: svs.n]
    if any(not any(row) for row in top):
        return False
    # full rank forces the pivots onto the diagonal
    prod = 1
    for i in range(svs.n):
        prod *= top[i][i]
    return prod == 1


class _SubsetScan:
    """Depth-first scan over independent n-subsets of the minimal vectors.

    Keeps a rational row echelon of the chosen prefix so dependent
    extensions are pruned and the determinant at a leaf is the product of
    the pivots.
    """

    def __init__(self, svs: ShortVectorSet):
        self.svs = svs
        self.n = svs.n
        self.s = svs.s

    def run(self, leaf):
        echelon: list[tuple[int, list[Fraction]]] = []  # (pivot col, row)
        picks: list[int] = []
        prod = [Fraction(1)]

        def reduce(vec):
            row = [Fraction(x) for x in vec]
            for col, erow in echelon:
                f = row[col]
                if f:
                    fac = f / erow[col]
                    for c in range(col, self.n):
                        row[c] -= fac * erow[c]
            piv = next((c for c, x in enumerate(row) if x), None)
            return piv, row

        def rec(start):
            if len(picks) == self.n:
                return leaf(picks, abs(prod[0]))
            if self.s - start < self.n - len(picks):
                return False
            for i in range(start, self.s):
                piv, row = reduce(self.svs.vectors[i])
                if piv is None:
                    continue
                echelon.append((piv, row))
                picks.append(i)
                prod[0] *= row[piv]
                if rec(i + 1):
                    return True
                prod[0] /= row[piv]
                picks.pop()
                echelon.pop()
            return False

        rec(0)


def maximal_index(svs: ShortVectorSet) -> SublatticeReport:
    """Largest index of a sublattice spanned by n independent minimal
    vectors, with the lexicographically first witness."""
    if not well_rounded(svs):
        raise NotWellRounded("minimal vectors do not span")
    best: list[SublatticeReport | None] = [None]

    def leaf(picks, det):
        index = int(det)
        assert index == det
        if best[0] is None or index > best[0].index:
            best[0] = SublatticeReport(
                tuple(picks), index, snf(IntMatrix([svs.vectors[i] for i in picks]))
            )
        return False

    _SubsetScan(svs).run(leaf)
    assert best[0] is not None
    return best[0]


def quotient_census(svs: ShortVectorSet) -> dict[tuple[int, ...], int]:
    """Count elementary divisor patterns over all independent n-subsets."""
    if not well_rounded(svs):
        raise NotWellRounded("minimal vectors do not span")
    counts: dict[tuple[int, ...], int] = {}

    def leaf(picks, det):
        divs = snf(IntMatrix([svs.vectors[i] for i in picks]))
        counts[divs] = counts.get(divs, 0) + 1
        return False

    _SubsetScan(svs).run(leaf)
    return dict(sorted(counts.items()))


def find_minimal_basis(svs: ShortVectorSet) -> tuple[int, ...] | None:
    """First n-subset of minimal vectors forming a lattice basis, if any.

    Prunes any prefix that fails to be primitive, since a primitive
    completion requires a primitive start.
    """
    if not well_rounded(svs):
        return None
    echelon: list[tuple[int, list[Fraction]]] = []
    picks: list[int] = []

    def reduce(vec):
        row = [Fraction(x) for x in vec]
        for col, erow in echelon:
            f = row[col]
            if f:
                fac = f / erow[col]
                for c in range(col, svs.n):
                    row[c] -= fac * erow[c]
        piv = next((c for c, x in enumerate(row) if x), None)
        return piv, row

    def primitive_prefix():
        divs = snf(IntMatrix([svs.vectors[i] for i in picks]))
        return all(d == 1 for d in divs)

    def rec(start):
        if len(picks) == svs.n:
            return True
        if svs.s - start < svs.n - len(picks):
            return False
        for i in range(start, svs.s):
            piv, row = reduce(svs.vectors[i])
            if piv is None:
                continue
            echelon.append((piv, row))
            picks.append(i)
            if primitive_prefix() and rec(i + 1):
                return True
            picks.pop()
            echelon.pop()
        return False

    if rec(0):
        return tuple(picks)
    return None


@dataclass(frozen=True)
class AnalysisReport:
    """Everything analyze() determines about one Gram matrix."""

    n: int
    min: Fraction
    s: int
    well_rounded: bool
    generated: bool
    maximal: SublatticeReport | None
    basis: tuple[int, ...] | None
    census: dict[tuple[int, ...], int] | None
    vectors: tuple[tuple[int, ...], ...]


def analyze(g: GramMatrix, census: bool = False) -> AnalysisReport:
    """Minimal vector census for one positive definite Gram matrix."""
    svs = minimal_vectors(g)
    wr = well_rounded(svs)
    if not wr:
        return AnalysisReport(
            svs.n, svs.min, svs.s, False, False, None, None, None, svs.vectors
        )
    return AnalysisReport(
        n=svs.n,
        min=svs.min,
        s=svs.s,
        well_rounded=True,
        generated=generated_by_min(svs),
        maximal=maximal_index(svs),
        basis=find_minimal_basis(svs),
        census=quotient_census(svs) if census else None,
        vectors=svs.vectors,
    )
