"""Exact incremental double description for polyhedral cones.

Maintains generators (lineality basis plus extreme rays) of
{x in Q^d : a . x >= 0 for all inserted a}, inserting one halfspace at a
time. All vectors are primitive integer tuples and all comparisons exact.
Adjacency of rays uses the standard combinatorial zero-set test with a
popcount prefilter.

Polyhedra {t : A t >= b} are handled by homogenizing with a final
coordinate s: insert s >= 0 first, then each row (a, -b); vertices are the
rays with s > 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _primitive(v: Iterable[int]) -> tuple[int, ...]:
    vec = tuple(v)
    g = 0
    for x in vec:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector")
    return tuple(x // g for x in vec)


@dataclass
class _Ray:
    vec: tuple[int, ...]
    active: int  # bitmask of constraints satisfied with equality


class Cone:
    """Double description pair for an intersection of halfspaces."""

    def __init__(self, dim: int):
        self.dim = dim
        self.lineality: list[tuple[int, ...]] = [
            tuple(int(i == j) for j in range(dim)) for i in range(dim)
        ]
        self.rays: list[_Ray] = []
        self.nconstraints = 0

    def insert(self, a: Sequence[int]) -> None:
        """Intersect with {x : a . x >= 0}."""
        a = tuple(a)
        if len(a) != self.dim:
            raise ValueError("constraint dimension mismatch")
        if not any(a):
            raise ValueError("zero constraint")
        idx = self.nconstraints
        self.nconstraints += 1
        bit = 1 << idx
        prev_mask = bit - 1

        lvals = [_dot(a, b) for b in self.lineality]
        k = next((i for i, v in enumerate(lvals) if v), None)
        if k is not None:
            b0 = self.lineality.pop(k)
            v0 = lvals.pop(k)
            if v0 < 0:
                b0 = tuple(-x for x in b0)
                v0 = -v0
            # remaining lineality is projected into the hyperplane of a;
            # b0 was tight for every earlier constraint, so it becomes a ray
            self.lineality = [
                _primitive(tuple(v0 * x - lv * y for x, y in zip(b, b0)))
                if lv
                else b
                for b, lv in zip(self.lineality, lvals)
            ]
            new_rays = []
            for r in self.rays:
                rv = _dot(a, r.vec)
                if rv:
                    vec = _primitive(
                        tuple(v0 * x - rv * y for x, y in zip(r.vec, b0))
                    )
                else:
                    vec = r.vec
                new_rays.append(_Ray(vec, r.active | bit))
            new_rays.append(_Ray(b0, prev_mask))
            self.rays = new_rays
            return

        plus: list[_Ray] = []
        zero: list[_Ray] = []
        minus: list[_Ray] = []
        vals: dict[int, int] = {}
        for i, r in enumerate(self.rays):
            v = _dot(a, r.vec)
            vals[id(r)] = v
            if v > 0:
                plus.append(r)
            elif v == 0:
                zero.append(r)
            else:
                minus.append(r)
        for r in zero:
            r.active |= bit
        if not minus:
            self.rays = plus + zero
            return
        # rank condition necessary for adjacency, used as a cheap prefilter
        need = self.dim - len(self.lineality) - 2
        all_rays = self.rays
        combos: list[_Ray] = []
        for p in plus:
            ap = vals[id(p)]
            for m in minus:
                z = p.active & m.active
                if need > 0 and z.bit_count() < need:
                    continue
                adjacent = True
                for r in all_rays:
                    if r is p or r is m:
                        continue
                    if z & r.active == z:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                am = vals[id(m)]
                w = tuple(
                    ap * x - am * y for x, y in zip(m.vec, p.vec)
                )
                combos.append(_Ray(_primitive(w), (p.active & m.active) | bit))
        self.rays = plus + zero + combos

    def cut_count(self, a: Sequence[int]) -> int:
        """How many generators inserting {x : a . x >= 0} would remove.

        Counts lineality directions leaving the hyperplane of a plus rays
        on the strictly negative side. Zero means the halfspace already
        contains the cone, and since the cone only ever shrinks, it then
        stays redundant forever.
        """
        cnt = sum(1 for b in self.lineality if _dot(a, b) != 0)
        cnt += sum(1 for r in self.rays if _dot(a, r.vec) < 0)
        return cnt

    # homogenized-polyhedron helpers; the last coordinate is the
    # homogenizing one and "s >= 0" must have been the first insertion

    def vertices(self) -> list[tuple[Fraction, ...]]:
        out = []
        for r in self.rays:
            s = r.vec[-1]
            if s > 0:
                out.append(tuple(Fraction(x, s) for x in r.vec[:-1]))
        return out

    def recession_dirs(self) -> list[tuple[int, ...]]:
        """Directions along which the polyhedron is unbounded.

        Lineality directions are reported in both orientations.
        """
        out = [r.vec[:-1] for r in self.rays if r.vec[-1] == 0]
        for b in self.lineality:
            assert b[-1] == 0  # s >= 0 kills any s-component of lineality
            out.append(b[:-1])
            out.append(tuple(-x for x in b[:-1]))
        return out

    def polyhedron_empty(self) -> bool:
        return not any(r.vec[-1] > 0 for r in self.rays)
