"""Bundled reference configurations for the verify command.

Two code lattice problems over Z/5Z, in dimensions 9 and 10, together
with their published computational outcomes: the dimension 9 problem has
a 25-vertex realization polytope whose scaled barycenter and implied
minimal vectors are listed below; the dimension 10 problem has a
154-vertex polytope whose barycenter realizes a well rounded lattice
that is generated by its minimal vectors and has no basis among them.
All vectors are coordinates in the distinguished code basis.
"""

from __future__ import annotations

from .codes import CodeSpec, basis_embedding, block_permutation_group
from .lattice import GramMatrix
from .matrices import RatMatrix
from .realization import RealizationProblem

DIM9_CODE = CodeSpec(n=9, d=5, words=((1, 1, 1, 2, 2, 2, 2, 2, 0),))
DIM9_EXTRA = (-4, 0, 0, 2, 2, 1, 1, 1, 1)
DIM9_BLOCKS = ((2, 3), (4, 5), (6, 7, 8))
DIM9_VERTEX_COUNT = 25
DIM9_BARYCENTER_SCALE = 900
DIM9_BARYCENTER_SCALED = (
    (1104, 54, 54, 552, 552, 528, 528, 528, 312),
    (54, 900, 66, 27, 27, -142, -142, -142, 267),
    (54, 66, 900, 27, 27, -142, -142, -142, 267),
    (552, 27, 27, 900, 138, 102, 102, 102, -87),
    (552, 27, 27, 138, 900, 102, 102, 102, -87),
    (528, -142, -142, 102, 102, 900, 216, 216, 186),
    (528, -142, -142, 102, 102, 216, 900, 216, 186),
    (528, -142, -142, 102, 102, 216, 216, 900, 186),
    (312, 267, 267, -87, -87, 186, 186, 186, 900),
)
DIM9_IMPLIED = (
    (-1, 0, 0, 1, 1, 0, 0, 0, 1),
    (-1, 0, 0, 1, 0, 0, 0, 0, 0),
    (-1, 0, 0, 0, 1, 0, 0, 0, 0),
    (-2, 1, 0, 1, 1, 1, 1, 1, 0),
    (-2, 0, 1, 1, 1, 1, 1, 1, 0),
    (-2, 0, 0, 1, 1, 1, 1, 0, 0),
    (-2, 0, 0, 1, 1, 1, 0, 1, 0),
    (-2, 0, 0, 1, 1, 0, 1, 1, 0),
    (-3, 1, 1, 1, 1, 1, 1, 1, 0),
    (-3, 0, 0, 1, 1, 1, 1, 1, 1),
)
# index-one subset of the dim 9 minimal vectors: the fractional basis
# vector minus e_4, followed by e_2, ..., e_9
DIM9_BASIS_SUBSET = ((1, 0, 0, -1, 0, 0, 0, 0, 0),) + tuple(
    tuple(int(j == i) for j in range(9)) for i in range(1, 9)
)
DIM9_RELATION_RANK = 19

DIM10_CODE = CodeSpec(n=10, d=5, words=((1, 1, 1, 2, 2, 2, 2, 2, 2, 2),))
DIM10_EXTRA = (-4, 0, 0, 2, 2, 2, 1, 1, 1, 1)
DIM10_BLOCKS = ((2, 3), (4, 5, 6), (7, 8, 9, 10))
DIM10_VERTEX_COUNT = 154
DIM10_BARYCENTER_SCALED_MIN = 6209280
DIM10_S = 11
DIM10_MAXIMAL_INDEX = 5
DIM10_SAMPLE_MIN = 48
# midpoint of two polytope vertices, scaled so the minimum is 48 (the only
# vertex-pair midpoint with s = 11 that scales to integer entries this way)
DIM10_SAMPLE_SCALED = (
    (88, -3, -3, 40, 40, 40, 26, 26, 26, 26),
    (-3, 48, 10, 5, 5, 5, -13, -13, -13, -13),
    (-3, 10, 48, 5, 5, 5, -13, -13, -13, -13),
    (40, 5, 5, 48, 14, 14, 4, 4, 4, 4),
    (40, 5, 5, 14, 48, 14, 4, 4, 4, 4),
    (40, 5, 5, 14, 14, 48, 4, 4, 4, 4),
    (26, -13, -13, 4, 4, 4, 48, 8, 8, 8),
    (26, -13, -13, 4, 4, 4, 8, 48, 8, 8),
    (26, -13, -13, 4, 4, 4, 8, 8, 48, 8),
    (26, -13, -13, 4, 4, 4, 8, 8, 8, 48),
)


def dim9_problem(preload: bool = True) -> RealizationProblem:
    emb = basis_embedding(DIM9_CODE)
    return RealizationProblem(
        embedding=emb,
        extras=(DIM9_EXTRA,),
        group=block_permutation_group(9, DIM9_BLOCKS),
        preload_box_cuts=preload,
    )


def dim10_problem(preload: bool = True) -> RealizationProblem:
    emb = basis_embedding(DIM10_CODE)
    return RealizationProblem(
        embedding=emb,
        extras=(DIM10_EXTRA,),
        group=block_permutation_group(10, DIM10_BLOCKS),
        preload_box_cuts=preload,
    )


def dim9_barycenter_reference() -> GramMatrix:
    return GramMatrix(RatMatrix([list(r) for r in DIM9_BARYCENTER_SCALED]))


def dim10_sample_reference() -> GramMatrix:
    return GramMatrix(RatMatrix([list(r) for r in DIM10_SAMPLE_SCALED]))
