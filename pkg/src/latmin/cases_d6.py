"""Batch feasibility scan for Z/6Z codes in dimension 9.

A class is a multiplicity triple (m1, m2, m3) with m1 + m2 + m3 = 9,
describing the word with m1 ones, m2 twos and m3 threes; the attached
lattice is Z^9 enlarged by word/6. Words whose entries all share a
factor with 6 generate a smaller quotient and are excluded. The class
list shipped with the package holds the triples whose nine unit vectors
are realizable as exact minimal vectors with generic minimal vector
count at most 17 pairs and maximal sublattice index exactly 6;
derive_classes recomputes that list from scratch.

A case adds two candidate minimal vectors on top of a class: y with
numerators over 3 congruent to the word mod 3, and z with numerators
over 2 congruent to the word mod 2, both bounded by their denominators.
Cases are enumerated up to the evident symmetries: permutations of
coordinates with equal (word, y, z) values, joint sign flips of (y, z)
numerators at word-3 positions, and global negation of z. Each case is
realized exactly; the scan tallies feasible cases and their class
parameters.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from itertools import combinations_with_replacement, product
from multiprocessing import Pool

from .codes import BasisEmbedding, CodeSpec, basis_embedding, block_permutation_group
from .lattice import minimal_vectors
from .matrices import IntMatrix, RatMatrix
from .minkowski import find_minimal_basis, maximal_index
from .realization import IterationLimitExceeded, RealizationProblem, realize

N = 9
D = 6


@dataclass(frozen=True)
class Case:
    klass: tuple[int, int, int]
    word: tuple[int, ...]
    y: tuple[int, ...]
    z: tuple[int, ...]


@dataclass(frozen=True)
class CaseResult:
    case: Case
    status: str  # "feasible" | "infeasible" | "cap"
    vertex_count: int = 0
    basis_found: bool | None = None


@dataclass(frozen=True)
class ClassReport:
    system: tuple[int, int, int]
    status: str  # "feasible" | "infeasible"
    s: int | None = None
    max_index: int | None = None


def word_of(system: tuple[int, int, int]) -> tuple[int, ...]:
    m1, m2, m3 = system
    return (1,) * m1 + (2,) * m2 + (3,) * m3


def candidate_systems() -> list[tuple[int, int, int]]:
    """Multiplicity triples whose word has additive order 6 mod 6.

    The order drops exactly when the word is all twos or all threes.
    """
    out = []
    for m1 in range(N, -1, -1):
        for m2 in range(N - m1, -1, -1):
            m3 = N - m1 - m2
            if m1 == 0 and (m2 == 0 or m3 == 0):
                continue
            out.append((m1, m2, m3))
    return out


def load_classes(text: str) -> list[tuple[int, int, int]]:
    """Classes from a JSON document {"classes": [[m1, m2, m3, ...], ...]}.

    Entries may carry extra trailing data (such as the generic minimal
    vector count); only the leading triple is used.
    """
    doc = json.loads(text)
    out = []
    for item in doc["classes"]:
        if len(item) < 3:
            raise ValueError(f"bad class {item!r}")
        m1, m2, m3 = (int(x) for x in item[:3])
        if m1 < 0 or m2 < 0 or m3 < 0 or m1 + m2 + m3 != N:
            raise ValueError(f"bad class {item!r}")
        out.append((m1, m2, m3))
    return out


def bundled_classes() -> list[tuple[int, int, int]]:
    """The class list shipped with the package."""
    text = (
        resources.files("latmin").joinpath("data/d6_classes.json").read_text("utf-8")
    )
    return load_classes(text)


def _scan_embedding(word) -> tuple[BasisEmbedding, frozenset[int]]:
    """Embedding plus the 1-based slots holding fractional basis vectors.

    With a unit entry present the word itself serves as the first basis
    vector. Otherwise the quotient splits into a part of order 3
    supported on the 2-entries and a part of order 2 on the 3-entries,
    and the first slot of each support carries the fractional generator;
    all other slots keep their unit vector.
    """
    n = len(word)
    spec = CodeSpec(n=n, d=D, words=(word,))
    if 1 in word:
        # entries are sorted, so the unit slot is already first
        return basis_embedding(spec, style="cyclic"), frozenset({1})
    twos = frozenset(i for i, a in enumerate(word) if a == 2)
    threes = frozenset(i for i, a in enumerate(word) if a == 3)
    i2, i3 = min(twos), min(threes)
    basis_num = [[6 * int(i == j) for j in range(n)] for i in range(n)]
    basis_num[i2] = [2 * int(j in twos) for j in range(n)]
    basis_num[i3] = [3 * int(j in threes) for j in range(n)]
    inv = RatMatrix([[Fraction(x) for x in row] for row in basis_num]).inverse()
    ebar = []
    for i in range(n):
        row = [inv[(i, j)] * D for j in range(n)]
        assert all(x.denominator == 1 for x in row)
        ebar.append(tuple(int(x) for x in row))
    emb = BasisEmbedding(
        n=n,
        d=D,
        ebar=tuple(ebar),
        basis_num=tuple(tuple(r) for r in basis_num),
        quotient=D,
        word=None,
    )
    assert abs(IntMatrix([list(r) for r in emb.ebar]).det()) == D
    return emb, frozenset({i2 + 1, i3 + 1})


def _blocks_for(keys, special) -> tuple[tuple[int, ...], ...]:
    """Group 1-based non-special positions by equal key, size 2 up."""
    groups: dict = {}
    for pos, key in enumerate(keys, start=1):
        if pos in special:
            continue
        groups.setdefault(key, []).append(pos)
    return tuple(tuple(g) for g in groups.values() if len(g) > 1)


def classify_system(
    system: tuple[int, int, int],
    iteration_cap: int | None = None,
    limit_s: int = 17,
) -> ClassReport:
    """Realize the unit-vector configuration of one system.

    Feasible systems report the generic minimal vector pair count s at
    the barycenter; the maximal index is only computed when s stays
    within limit_s, as larger sets are never kept anyway.
    """
    word = word_of(system)
    emb, special = _scan_embedding(word)
    group = block_permutation_group(N, _blocks_for(word, special))
    problem = RealizationProblem(
        embedding=emb,
        extras=(),
        group=group,
        preload_box_cuts=True,
        iteration_cap=iteration_cap,
    )
    res = realize(problem)
    if res.status != "feasible":
        return ClassReport(system, "infeasible")
    svs = minimal_vectors(res.barycenter)
    idx = maximal_index(svs).index if svs.s <= limit_s else None
    return ClassReport(system, "feasible", svs.s, idx)


def derive_classes(
    limit_s: int = 17, iteration_cap: int | None = None
) -> list[tuple[int, int, int, int]]:
    """Recompute the shipped class list, with s appended to each triple."""
    out = []
    for system in candidate_systems():
        rep = classify_system(system, iteration_cap, limit_s)
        if (
            rep.status == "feasible"
            and rep.s is not None
            and rep.s <= limit_s
            and rep.max_index == D
        ):
            out.append((*system, rep.s))
    return out


# per word value, the allowed (y, z) numerator pairs at one coordinate;
# at word-3 positions (y, z) and (-y, -z) give the same case, so only
# one representative of each such pair is listed
_PAIR_CHOICES = {
    1: tuple((y, z) for y in (-2, 1) for z in (-1, 1)),
    2: tuple((y, z) for y in (-1, 2) for z in (-2, 0, 2)),
    3: ((0, 1), (3, -1), (3, 1)),
}


def _negate_z(value: int, part) -> tuple:
    """Image of a sorted pair tuple under z -> -z, re-canonicalized."""
    if value == 3:
        flipped = [(y, -z) if y else (0, 1) for y, z in part]
    else:
        flipped = [(y, -z) for y, z in part]
    return tuple(sorted(flipped))


def enumerate_cases(classes) -> list[Case]:
    """All cases over the given classes, one per symmetry orbit.

    A case is stored as a multiset of (y, z) pairs within each word
    block, realized here as sorted tuples; candidates whose global
    z-negation is lexicographically smaller are skipped.
    """
    cases = []
    for klass in classes:
        word = word_of(klass)
        values = (1, 2, 3)
        pools = [
            tuple(combinations_with_replacement(_PAIR_CHOICES[v], m))
            for v, m in zip(values, klass)
        ]
        for picks in product(*pools):
            neg = tuple(_negate_z(v, part) for v, part in zip(values, picks))
            if picks > neg:
                continue
            y = tuple(p[0] for part in picks for p in part)
            z = tuple(p[1] for part in picks for p in part)
            cases.append(Case(klass, word, y, z))
    return cases


def run_case(
    case: Case,
    iteration_cap: int | None = None,
    preload: bool = False,
) -> CaseResult:
    emb, special = _scan_embedding(case.word)
    y_b = emb.coset_to_basis(case.y, 3)
    z_b = emb.coset_to_basis(case.z, 2)
    keys = tuple(zip(case.word, case.y, case.z))
    group = block_permutation_group(N, _blocks_for(keys, special))
    problem = RealizationProblem(
        embedding=emb,
        extras=(y_b, z_b),
        group=group,
        preload_box_cuts=preload,
        iteration_cap=iteration_cap,
    )
    try:
        res = realize(problem)
    except IterationLimitExceeded:
        return CaseResult(case, "cap")
    if res.status != "feasible":
        return CaseResult(case, "infeasible")
    svs = minimal_vectors(res.barycenter)
    return CaseResult(
        case,
        "feasible",
        vertex_count=len(res.vertices),
        basis_found=find_minimal_basis(svs) is not None,
    )


def _worker(args):
    case, cap = args
    return run_case(case, cap)


def scan_cases(
    classes,
    limit: int | None = None,
    parallel: int = 1,
    iteration_cap: int | None = None,
) -> list[CaseResult]:
    cases = enumerate_cases(classes)
    if limit is not None:
        cases = cases[:limit]
    jobs = [(c, iteration_cap) for c in cases]
    if parallel > 1:
        with Pool(parallel) as pool:
            return list(pool.imap(_worker, jobs))
    return [_worker(j) for j in jobs]
