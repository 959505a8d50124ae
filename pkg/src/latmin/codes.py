"""Lattices attached to codes over Z/dZ and their monomial symmetries.

A code word w of length n over Z/dZ determines the lattice generated by
Z^n together with (sum_i w_i e_i)/d. Everything here works in the basis
e_1, ..., e_n, producing a distinguished basis of the enlarged lattice
and the integer coordinate rows of e_1, ..., e_n in that basis.

Monomial (signed permutation) symmetries are found by backtracking on
coordinate images, matching prescribed vector families up to sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import gcd

from .matrices import IntMatrix, RatMatrix, canonical_sign
from .normal_forms import hnf


class NoUnitCoefficient(ValueError):
    """No coordinate of the word is a unit mod d."""


class InconsistentWords(ValueError):
    """A word is zero mod d or has the wrong length."""


@dataclass(frozen=True)
class CodeSpec:
    """A list of generating words of length n over Z/dZ."""

    n: int
    d: int
    words: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.d < 2:
            raise ValueError("d must be at least 2")
        if not self.words:
            raise InconsistentWords("need at least one word")
        for w in self.words:
            if len(w) != self.n:
                raise InconsistentWords("word length differs from n")
            if all(x % self.d == 0 for x in w):
                raise InconsistentWords("word is zero mod d")


def _sym_residue(x: int, d: int) -> int:
    """Representative of x mod d in (-d/2, d/2]."""
    r = x % d
    if 2 * r > d:
        r -= d
    return r


@dataclass(frozen=True)
class BasisEmbedding:
    """Coordinates of e_1, ..., e_n in a basis of the enlarged lattice.

    Row i of ebar gives the coordinates of e_{i+1}. The basis itself has
    rows basis[i] = (coordinates of basis vector in e) * d, kept integer.
    quotient is the order of (enlarged lattice)/Z^n.
    """

    n: int
    d: int
    ebar: tuple[tuple[int, ...], ...]
    basis_num: tuple[tuple[int, ...], ...]
    quotient: int
    word: tuple[int, ...] | None

    def coset_to_basis(
        self, numerators: tuple[int, ...], denominator: int
    ) -> tuple[int, ...]:
        """Rewrite (sum numerators_i e_i)/denominator in the basis.

        Raises ValueError when the result is not a lattice vector.
        """
        if len(numerators) != self.n:
            raise ValueError("wrong length")
        acc = [0] * self.n
        for c, row in zip(numerators, self.ebar):
            if c:
                for j in range(self.n):
                    acc[j] += c * row[j]
        if any(x % denominator for x in acc):
            raise ValueError("not a lattice vector")
        return tuple(x // denominator for x in acc)


def basis_embedding(spec: CodeSpec, style: str = "auto") -> BasisEmbedding:
    """Distinguished basis for the lattice of a code.

    style "cyclic" requires a single word with a unit coefficient; the
    unit position is permuted to slot 1 and the word scaled so that
    coefficient becomes 1, with the other coefficients reduced to
    symmetric residues. style "hnf" works for any word list. "auto"
    picks cyclic for a single word with a unit, else hnf.
    """
    n, d = spec.n, spec.d
    if style not in ("auto", "cyclic", "hnf"):
        raise ValueError("unknown style")
    cyclic_ok = len(spec.words) == 1 and any(
        gcd(x, d) == 1 for x in spec.words[0]
    )
    if style == "cyclic" and not cyclic_ok:
        if len(spec.words) != 1:
            raise ValueError("cyclic style needs a single word")
        raise NoUnitCoefficient("no coefficient is a unit mod d")
    if style == "auto":
        style = "cyclic" if cyclic_ok else "hnf"

    if style == "cyclic":
        w = list(spec.words[0])
        k = next(i for i, x in enumerate(w) if gcd(x, d) == 1)
        w[0], w[k] = w[k], w[0]
        inv = pow(w[0], -1, d)
        w = [_sym_residue(inv * x, d) for x in w]
        assert w[0] == 1
        ebar = [[0] * n for _ in range(n)]
        ebar[0][0] = d
        for i in range(1, n):
            ebar[0][i] = -w[i]
            ebar[i][i] = 1
        basis_num = [[0] * n for _ in range(n)]
        basis_num[0] = list(w)
        for i in range(1, n):
            basis_num[i][i] = d
        emb = BasisEmbedding(
            n=n,
            d=d,
            ebar=tuple(tuple(r) for r in ebar),
            basis_num=tuple(tuple(r) for r in basis_num),
            quotient=d,
            word=tuple(w),
        )
    else:
        stack = [[d * int(i == j) for j in range(n)] for i in range(n)]
        for w in spec.words:
            stack.append([x % d for x in w])
        h, _ = hnf(IntMatrix(stack))
        basis_num = tuple(tuple(h.entries[i]) for i in range(n))
        hdet = abs(IntMatrix(list(basis_num)).det())
        assert hdet and d**n % hdet == 0
        inv = RatMatrix(
            [[Fraction(x) for x in row] for row in basis_num]
        ).inverse()
        ebar_rows = []
        for i in range(n):
            row = [inv[(i, j)] * d for j in range(n)]
            assert all(x.denominator == 1 for x in row)
            ebar_rows.append(tuple(int(x) for x in row))
        emb = BasisEmbedding(
            n=n,
            d=d,
            ebar=tuple(ebar_rows),
            basis_num=basis_num,
            quotient=d**n // hdet,
            word=None,
        )

    assert abs(IntMatrix([list(r) for r in emb.ebar]).det()) == emb.quotient
    return emb


def coset_candidates(
    spec: CodeSpec,
    denominator: int,
    bound: int | None = None,
    word_index: int = 0,
    unit: int = 1,
):
    """Integer numerator vectors congruent to a scaled word.

    Yields, in lexicographic order, all integer tuples b with
    b_i = unit * w_i mod denominator and |b_i| <= bound, the candidates
    for numerators of lattice vectors (sum b_i e_i)/denominator lying in
    the coset of the word scaled by d/denominator. denominator must
    divide d and unit must be invertible mod denominator.
    """
    if spec.d % denominator or denominator < 1:
        raise ValueError("denominator must divide d")
    if gcd(unit, denominator) != 1:
        raise ValueError("unit must be invertible")
    if bound is None:
        bound = denominator
    w = spec.words[word_index]
    per_coord = []
    for x in w:
        r = (unit * x) % denominator
        per_coord.append([v for v in range(-bound, bound + 1) if v % denominator == r])
    return product(*per_coord)


def apply_monomial(
    sigma: tuple[int, ...], eps: tuple[int, ...], v: tuple[int, ...]
) -> tuple[int, ...]:
    """Image of v under the signed permutation (sigma, eps).

    Coordinate i is sent to coordinate sigma[i] with sign eps[i].
    """
    out = [0] * len(v)
    for i, x in enumerate(v):
        out[sigma[i]] = eps[i] * x
    return tuple(out)


def monomial_matrix(sigma: tuple[int, ...], eps: tuple[int, ...]) -> IntMatrix:
    n = len(sigma)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[sigma[i]][i] = eps[i]
    return IntMatrix(rows)


def matrix_monomial(u: IntMatrix) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Inverse of monomial_matrix; raises ValueError for non-monomial u."""
    n = u.rows
    if u.cols != n:
        raise ValueError("not square")
    sigma = [0] * n
    eps = [0] * n
    for i in range(n):
        hits = [(r, u.entries[r][i]) for r in range(n) if u.entries[r][i]]
        if len(hits) != 1 or abs(hits[0][1]) != 1:
            raise ValueError("not a signed permutation matrix")
        sigma[i], eps[i] = hits[0]
    if len(set(sigma)) != n:
        raise ValueError("not a signed permutation matrix")
    return tuple(sigma), tuple(eps)


def _family_signature(vectors: tuple[tuple[int, ...], ...], i: int):
    return tuple(sorted(abs(v[i]) for v in vectors))


def symmetry_group(
    emb: BasisEmbedding, extras: tuple[tuple[int, ...], ...] = ()
) -> tuple[IntMatrix, ...]:
    """All signed permutations preserving the embedding rows and extras.

    A matrix u qualifies when u maps {+-row : row of ebar} onto itself
    and likewise {+-a : a in extras}. Returned in a deterministic order.
    """
    families = [tuple(map(tuple, emb.ebar))]
    if extras:
        families.append(tuple(tuple(a) for a in extras))
    n = emb.n
    targets = [frozenset(canonical_sign(v) for v in fam) for fam in families]
    sigs = [
        [_family_signature(fam, i) for i in range(n)] for fam in families
    ]
    found: list[IntMatrix] = []
    sigma = [-1] * n
    eps = [0] * n
    used = [False] * n

    def feasible():
        # every partially mapped vector must still be able to land on a
        # target of its family, up to a global sign per vector
        for fam, tgt in zip(families, targets):
            for v in fam:
                ok = False
                for w in tgt:
                    for t in (1, -1):
                        if all(
                            sigma[i] < 0 or t * w[sigma[i]] == eps[i] * v[i]
                            for i in range(n)
                        ):
                            ok = True
                            break
                    if ok:
                        break
                if not ok:
                    return False
        return True

    def rec(i):
        if i == n:
            img = [
                frozenset(
                    canonical_sign(apply_monomial(tuple(sigma), tuple(eps), v))
                    for v in fam
                )
                for fam in families
            ]
            if all(a == b for a, b in zip(img, targets)):
                found.append(monomial_matrix(tuple(sigma), tuple(eps)))
            return
        for j in range(n):
            if used[j]:
                continue
            if any(s[i] != s[j] for s in sigs):
                continue
            used[j] = True
            sigma[i] = j
            for sign in (1, -1):
                eps[i] = sign
                if feasible():
                    rec(i + 1)
            sigma[i] = -1
            eps[i] = 0
            used[j] = False

    rec(0)
    return tuple(found)


def block_permutation_group(
    n: int, blocks: tuple[tuple[int, ...], ...]
) -> tuple[IntMatrix, ...]:
    """Generators of the group permuting coordinates within given blocks.

    Blocks are disjoint tuples of 1-based coordinate positions; unlisted
    coordinates stay fixed. Adjacent transpositions generate each block's
    full symmetric group, so the list stays short even for large blocks.
    """
    seen: set[int] = set()
    for b in blocks:
        for pos in b:
            if pos < 1 or pos > n or pos in seen:
                raise ValueError("blocks must be disjoint positions in 1..n")
            seen.add(pos)
    eps = tuple([1] * n)
    out = []
    for b in blocks:
        for a, c in zip(b, b[1:]):
            sigma = list(range(n))
            sigma[a - 1], sigma[c - 1] = c - 1, a - 1
            out.append(monomial_matrix(tuple(sigma), eps))
    return tuple(out)


def close_group(gens: tuple[IntMatrix, ...], cap: int = 100000) -> tuple[IntMatrix, ...]:
    """Closure of a generator list under multiplication."""
    n = gens[0].rows if gens else 0
    ident = IntMatrix.identity(n)
    frontier = [ident] + [g for g in gens]
    seen = {}
    for g in frontier:
        seen[tuple(map(tuple, g.entries))] = g
    queue = list(seen.values())
    while queue:
        g = queue.pop()
        for h in gens:
            prod_ = g @ h
            key = tuple(map(tuple, prod_.entries))
            if key not in seen:
                if len(seen) >= cap:
                    raise ValueError("group too large")
                seen[key] = prod_
                queue.append(prod_)
    return tuple(seen[k] for k in sorted(seen))
