"""Gram matrices whose minimal vectors contain a prescribed configuration.

Input: the rows of a basis embedding, optional extra lattice vectors, and
a group of monomial matrices fixing those vectors up to sign. Sought: all
symmetric G, invariant under the group, positive definite, with minimum
min_value attained on every prescribed vector and on nothing shorter.

The feasible set is a polytope: it lives in the affine slice where the
prescribed vectors have exact norm min_value, intersected with the
inequalities G[v] >= min_value for every other integer vector v. Only
finitely many of those inequalities matter. Candidate rows live in a
pool (unit vectors, optionally the whole {-1, 0, 1} box, plus every
vector discovered later); an inconsistent pool is rejected up front by
an exact LP in Farkas form.

Two engines cooperate on the feasible side. For rich pools a sampling
engine shoots random objectives at the pool with a floating point LP,
snaps each optimum to an exact vertex (the tight rows must determine a
unique point that satisfies the whole pool in integer arithmetic), and
probes it exactly: definiteness, then full short vector enumeration
below min_value. Violations become new pooled rows; indefinite corners
are cut by bisecting towards a positive definite anchor until the
segment itself exposes short vectors, which keeps cut entries small.
When sampling stops finding dirty vertices and the polytope is full
dimensional, a completeness pass takes the convex hull of the exact
vertices and proves every facet valid for the pool via an exact
nonnegative combination of the rows active at one of its vertices;
any unproven facet directs one more LP shot behind it. If the polytope
is flat, or floating point fails anywhere, the engine just returns its
enriched pool. The second engine is an exact cutting loop over an
incremental double description: pooled rows are inserted
most-destructive-first and dropped for good once redundant, every
vertex probed as above, unbounded directions cut using an exact
witness of indefiniteness. At either engine's fixpoint every vertex
has minimum exactly min_value and the outer approximation equals the
feasible polytope, so vertex counts, barycenter and implied minimal
vectors are exact. Floats only ever propose candidates; every accepted
fact is re-derived in exact arithmetic. Infeasible problems end with a
verified nonnegative combination of constraints that sums to an
identically zero form with positive right hand side.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from .codes import BasisEmbedding, apply_monomial, close_group, matrix_monomial
from .dd import Cone
from .lattice import GramMatrix, ShortVectorSet, minimal_vectors, short_vectors
from .lp import LPProblem, lp_solve
from .matrices import (
    IntMatrix,
    RatMatrix,
    canonical_sign,
    negative_direction,
    nullspace,
    pd_check,
    primitive_vector,
    solve_affine,
)
from .minkowski import find_minimal_basis, generated_by_min

try:
    import numpy as np
    from scipy.optimize import linprog
    from scipy.spatial import ConvexHull, QhullError
except ImportError:  # screening only; decisions never depend on it
    np = None
    linprog = None

DEFAULT_ITERATION_CAP = 10000


class IterationLimitExceeded(RuntimeError):
    """The cutting loop hit its round cap before reaching a fixpoint."""

    def __init__(self, rounds: int, num_vertices: int, num_cuts: int):
        super().__init__(
            f"no fixpoint after {rounds} rounds "
            f"({num_vertices} vertices, {num_cuts} cuts)"
        )
        self.rounds = rounds
        self.num_vertices = num_vertices
        self.num_cuts = num_cuts


@dataclass(frozen=True)
class RealizationProblem:
    """Target configuration for realize().

    group entries must be monomial matrices; an empty group means only
    the identity. min_value fixes the scale of the forms sought.
    preload_box_cuts seeds the constraint pool with every vector with
    coordinates in {-1, 0, 1} up to sign (dimension at most 10), which
    shortens the cutting loop considerably. iteration_cap of None defers
    to the LATMIN_ITER_CAP environment variable, falling back to 10000.
    """

    embedding: BasisEmbedding
    extras: tuple[tuple[int, ...], ...] = ()
    group: tuple[IntMatrix, ...] = ()
    min_value: Fraction = Fraction(1)
    preload_box_cuts: bool = False
    iteration_cap: int | None = None


@dataclass(frozen=True)
class CertificateTerm:
    """One constraint row: the form value at vector, times multiplier."""

    kind: str  # "target" for an equality row, "cut" for an inequality row
    vector: tuple[int, ...]
    multiplier: Fraction


@dataclass(frozen=True)
class InfeasibilityCertificate:
    """Nonnegative combination of constraints with no solution.

    Feasibility would force sum(mult * G[vector]) >= sum(mult) * min_value
    with equality on target rows, but the combined form is identically
    zero while the right hand side is positive.
    """

    terms: tuple[CertificateTerm, ...]

    def verify(self, n: int, min_value: Fraction) -> bool:
        combo = [[Fraction(0)] * n for _ in range(n)]
        rhs = Fraction(0)
        for t in self.terms:
            if t.kind == "cut" and t.multiplier < 0:
                return False
            if t.kind not in ("target", "cut"):
                return False
            rhs += t.multiplier * min_value
            for i in range(n):
                vi = t.vector[i]
                if vi:
                    mvi = t.multiplier * vi
                    for j in range(n):
                        combo[i][j] += mvi * t.vector[j]
        if any(any(row) for row in combo):
            return False
        return rhs > 0


@dataclass(frozen=True)
class RealizationResult:
    status: str  # "feasible" | "infeasible"
    subspace_dim: int
    affine_dim: int
    rounds: int
    cuts: tuple[tuple[int, ...], ...]
    vertices: tuple[GramMatrix, ...] = ()
    barycenter: GramMatrix | None = None
    implied: tuple[tuple[int, ...], ...] = ()
    certificate: InfeasibilityCertificate | None = None


@dataclass(frozen=True)
class FaceReport:
    """Minimal vector behaviour at the barycenter of one face."""

    vertex_indices: tuple[int, ...]
    dim: int
    min: Fraction
    s: int
    generated: bool
    basis: tuple[int, ...] | None
    counterexample: bool


# ---------------------------------------------------------------------------
# invariant subspace of a monomial group, via sign-tracked orbits of
# symmetric coordinate pairs


def _pair_orbits(monos, n):
    """Orbits of entry positions under G -> U^T G U, with relative signs.

    Returns a list of (signs, alive) where signs maps each pair (i, j),
    i <= j, of the orbit to +-1 relative to the orbit root. An orbit is
    dead when some group element forces its entries to change sign, which
    pins them to zero.
    """
    seen: set[tuple[int, int]] = set()
    orbits = []
    for i in range(n):
        for j in range(i, n):
            if (i, j) in seen:
                continue
            signs = {(i, j): 1}
            queue = [(i, j)]
            alive = True
            while queue:
                a, b = queue.pop()
                sa = signs[(a, b)]
                for sigma, eps in monos:
                    ia, ib = sigma[a], sigma[b]
                    key = (ia, ib) if ia <= ib else (ib, ia)
                    s2 = eps[a] * eps[b] * sa
                    if key in signs:
                        if signs[key] != s2:
                            alive = False
                    else:
                        signs[key] = s2
                        queue.append(key)
            seen.update(signs)
            orbits.append((signs, alive))
    return orbits


def invariant_subspace(group) -> tuple[RatMatrix, ...]:
    """Basis of the symmetric matrices fixed by every group element.

    The group elements must be monomial (signed permutation) matrices.
    Each basis matrix has entries in {-1, 0, 1}, one per orbit of entry
    positions whose sign constraints are consistent.
    """
    group = tuple(group)
    if not group:
        raise ValueError("need at least one group element")
    n = group[0].rows
    monos = [matrix_monomial(u) for u in group]
    out = []
    for signs, alive in _pair_orbits(monos, n):
        if not alive:
            continue
        rows = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), s in signs.items():
            rows[i][j] = Fraction(s)
            rows[j][i] = Fraction(s)
        out.append(RatMatrix(rows))
    return tuple(out)


def _orbit_value(signs, v) -> int:
    """v^T E v for the orbit basis matrix E described by signs."""
    total = 0
    for (i, j), s in signs.items():
        if i == j:
            total += s * v[i] * v[i]
        else:
            total += 2 * s * v[i] * v[j]
    return total


def _matrix_from_coords(orbits, coords, n) -> RatMatrix:
    rows = [[Fraction(0)] * n for _ in range(n)]
    for signs, c in zip(orbits, coords):
        if c:
            for (i, j), s in signs.items():
                rows[i][j] = s * c
                rows[j][i] = s * c
    return RatMatrix(rows)


class _Setup:
    """Shared context: orbits, target rows and the solved equality slice."""

    def __init__(self, problem: RealizationProblem):
        emb = problem.embedding
        self.problem = problem
        self.n = emb.n
        self.m = Fraction(problem.min_value)
        if self.m <= 0:
            raise ValueError("min_value must be positive")
        group = tuple(problem.group) or (IntMatrix.identity(self.n),)
        if any(u.rows != self.n or u.cols != self.n for u in group):
            raise ValueError("group dimension mismatch")
        self.group = group
        self.monos = [matrix_monomial(u) for u in group]
        self.targets = tuple(tuple(r) for r in emb.ebar) + tuple(
            tuple(a) for a in problem.extras
        )
        if any(len(q) != self.n for q in self.targets):
            raise ValueError("target vector length mismatch")
        for fam in (emb.ebar, problem.extras):
            if not fam:
                continue
            canon = {canonical_sign(v) for v in fam}
            for mono in self.monos:
                image = {canonical_sign(apply_monomial(*mono, v)) for v in fam}
                if image != canon:
                    raise ValueError("group does not preserve the targets")
        self.orbits = [signs for signs, alive in _pair_orbits(self.monos, self.n) if alive]
        self.eq_rows = [
            tuple(Fraction(_orbit_value(o, q)) for o in self.orbits)
            for q in self.targets
        ]
        sol = solve_affine(
            RatMatrix(self.eq_rows), [self.m] * len(self.targets)
        )
        if sol is None:
            self.c0 = None
            self.null = ()
        else:
            self.c0 = sol[0]
            self.null = sol[1:]
        self.p = len(self.null)

    def coords_at(self, t):
        return tuple(
            self.c0[o] + sum(tj * nj[o] for tj, nj in zip(t, self.null))
            for o in range(len(self.orbits))
        )

    def matrix_at(self, t) -> RatMatrix:
        return _matrix_from_coords(self.orbits, self.coords_at(t), self.n)

    def direction_matrix(self, rdir) -> RatMatrix:
        cdir = tuple(
            sum(rj * nj[o] for rj, nj in zip(rdir, self.null))
            for o in range(len(self.orbits))
        )
        return _matrix_from_coords(self.orbits, cdir, self.n)

    def functional(self, vec):
        """The slice restriction of G -> G[vec] >= m, as integer (alpha, beta).

        Returns alpha (length p) and beta with alpha . t >= beta the exact
        restriction, scaled primitive. alpha may be all zero, meaning the
        constraint holds identically (beta <= 0) or never (beta > 0).
        """
        vals = [_orbit_value(o, vec) for o in self.orbits]
        alpha = [
            sum(v * nj[o] for o, v in enumerate(vals) if v)
            for nj in self.null
        ]
        beta = self.m - sum(v * self.c0[o] for o, v in enumerate(vals) if v)
        den = 1
        for x in alpha + [beta]:
            f = Fraction(x)
            den = den * f.denominator // gcd(den, f.denominator)
        ints = [int(x * den) for x in alpha] + [int(beta * den)]
        g = 0
        for x in ints:
            g = gcd(g, x)
        if g:
            ints = [x // g for x in ints]
        return tuple(ints[:-1]), ints[-1]

    def coords_of_matrix(self, g: RatMatrix):
        """Orbit coordinates of an invariant matrix."""
        out = []
        for signs in self.orbits:
            (i, j), s = min(signs.items())
            out.append(g.entries[i][j] * s)
        return tuple(out)

    def t_of_matrix(self, g: RatMatrix):
        """Slice parameters of an invariant matrix on the equality slice."""
        c = self.coords_of_matrix(g)
        rhs = [ci - c0i for ci, c0i in zip(c, self.c0)]
        if not self.null:
            assert not any(rhs)
            return ()
        cols = RatMatrix(list(zip(*self.null)))
        sol = solve_affine(cols, rhs)
        assert sol is not None and len(sol) == 1
        return sol[0]


def _iteration_cap(problem: RealizationProblem) -> int:
    if problem.iteration_cap is not None:
        return problem.iteration_cap
    return int(os.environ.get("LATMIN_ITER_CAP", str(DEFAULT_ITERATION_CAP)))


def _box_vectors(n: int):
    """Nonzero vectors with coordinates in {-1, 0, 1}, one per +- pair."""
    for v in product((0, 1, -1), repeat=n):
        nz = next((x for x in v if x), 0)
        if nz == 1:
            yield v


def realize(problem: RealizationProblem) -> RealizationResult:
    """Decide the target configuration and return exact witnesses."""
    setup = _Setup(problem)
    n, m, p = setup.n, setup.m, setup.p

    if setup.c0 is None:
        return _certify_equalities(setup)

    cone = Cone(p + 1)
    cone.insert((0,) * p + (1,))

    seen: set[tuple] = set()
    rows: dict[tuple, tuple[int, ...]] = {}  # every pooled functional
    pending: dict[tuple, tuple[int, ...]] = {}  # not yet in the cone
    inserted_rows: list[tuple[tuple[int, ...], int]] = []
    inserted_vecs: list[tuple[int, ...]] = []
    broken: list[tuple[int, ...]] = []  # identically violated constraints

    def add_vec(vec: tuple[int, ...]) -> bool:
        vec = canonical_sign(vec)
        alpha, beta = setup.functional(vec)
        key = (alpha, beta)
        if key in seen:
            return False
        seen.add(key)
        if any(alpha):
            rows[key] = vec
            pending[key] = vec
            return True
        if beta > 0:
            broken.append(vec)
            return True
        return False  # holds identically on the slice

    def greedy_insert() -> None:
        # move pooled rows into the cone while they remove generators,
        # most destructive first; a redundant row stays redundant because
        # the cone only shrinks, so it is dropped permanently
        while pending:
            best_key = None
            best_cnt = 0
            for key in sorted(pending):
                alpha, beta = key
                cnt = cone.cut_count(alpha + (-beta,))
                if cnt == 0:
                    del pending[key]
                elif cnt > best_cnt:
                    best_cnt = cnt
                    best_key = key
            if best_key is None:
                return
            vec = pending.pop(best_key)
            alpha, beta = best_key
            cone.insert(alpha + (-beta,))
            inserted_rows.append(best_key)
            inserted_vecs.append(vec)
            if cone.polyhedron_empty():
                return

    for i in range(n):
        add_vec(tuple(int(i == j) for j in range(n)))
    for q in setup.targets:
        add_vec(q)
    if problem.preload_box_cuts and n <= 10:
        for v in _box_vectors(n):
            add_vec(v)

    cap = _iteration_cap(problem)
    cache: dict[tuple, tuple] = {}
    reserve: dict[tuple, tuple[int, ...]] = {}
    if pending and not broken:
        pairs = _pool_farkas(setup, pending)
        if pairs is not None:
            return _finish_infeasible(setup, pairs, 0, ())
        if np is not None and len(pending) > 8 * p:
            # rich pools defeat incremental double description: the
            # intermediate cones can dwarf the final polytope. Sample and
            # certify vertices through floating point hulls instead, and
            # keep the cone route as the finisher, reusing the rows and
            # probe results collected there.
            res = _solve_by_hull(setup, rows, add_vec, broken, cap, cache)
            if res is not None:
                return res
        # rank facet candidates first so the intermediate cones hug the
        # feasible region; the reserve rows rejoin once those are in
        candidates = _shoot_candidates(setup, pending)
        reserve = {
            k: pending.pop(k) for k in list(pending) if k not in candidates
        }
    rounds = 0
    while True:
        if broken:
            return _certify_cuts(setup, [], [], broken, rounds, inserted_vecs)
        greedy_insert()
        if reserve:
            pending.update(reserve)
            reserve = {}
            greedy_insert()
        if cone.polyhedron_empty():
            return _certify_cuts(
                setup, inserted_rows, inserted_vecs, [], rounds, inserted_vecs
            )
        progress = False
        verts = cone.vertices()
        for t in verts:
            probe = cache.get(t)
            if probe is None:
                probe = _probe_vertex(setup, t)
                cache[t] = probe
            if probe[0] == "cut":
                for vec in probe[1]:
                    if add_vec(vec):
                        progress = True
        for rdir in cone.recession_dirs():
            if add_vec(_ray_cut(setup, rdir)):
                progress = True
        if not progress:
            break
        rounds += 1
        if rounds > cap:
            raise IterationLimitExceeded(rounds, len(verts), len(inserted_vecs))

    grams = []
    for t in cone.vertices():
        kind, gram, _svs = cache[t]
        assert kind == "clean"
        grams.append(gram)
    return _wrap_feasible(setup, rounds, inserted_vecs, grams)


def _wrap_feasible(setup: _Setup, rounds, cut_vecs, grams) -> RealizationResult:
    vertices = tuple(sorted(grams, key=lambda g: g.mat.entries))
    assert vertices, "nonempty polyhedron must have a vertex"
    total = vertices[0].mat
    for g in vertices[1:]:
        total = total + g.mat
    barycenter = GramMatrix(total.scale(Fraction(1, len(vertices))))
    bsvs = minimal_vectors(barycenter)
    target_set = {canonical_sign(q) for q in setup.targets}
    implied = tuple(v for v in bsvs.vectors if v not in target_set)
    return RealizationResult(
        status="feasible",
        subspace_dim=len(setup.orbits),
        affine_dim=setup.p,
        rounds=rounds,
        cuts=tuple(cut_vecs),
        vertices=vertices,
        barycenter=barycenter,
        implied=implied,
    )


def _probe_vertex(setup: _Setup, t, anchor=None):
    g = setup.matrix_at(t)
    res = pd_check(g)
    if not res.is_pd:
        if anchor is not None:
            vecs = _boundary_cuts(setup, anchor, t)
            if vecs:
                return ("cut", vecs)
        return ("cut", [canonical_sign(primitive_vector(res.witness))])
    gram = GramMatrix(g)
    pairs = short_vectors(gram, setup.m)
    assert pairs  # targets are vectors of norm exactly m
    if pairs[0][0] < setup.m:
        # cut with everything up to m, not just the minimum; cutting only
        # with minimal vectors can stall against a singular limit point
        return ("cut", [v for _, v in pairs])
    svs = ShortVectorSet(n=gram.n, min=pairs[0][0], vectors=tuple(v for _, v in pairs))
    return ("clean", gram, svs)


def _boundary_cuts(setup: _Setup, anchor, t):
    """Small vectors cutting off a corner with indefinite form.

    Walks the segment from the definite anchor form A to the corner form
    T, tracking G_s = (1-s) A + s T. Once the minimum of a definite G_s
    drops below s * min_value, each minimal vector v satisfies
    T[v] <= G_s[v] / s < min_value because A[v] > 0, so v cuts off the
    corner, with entries kept small by the enumeration. The negativity
    witness at the corner usually has huge entries; these cuts do not.
    """
    ga = setup.matrix_at(anchor)
    gt = setup.matrix_at(t)
    m = setup.m
    lo, hi = Fraction(0), Fraction(1)
    for _ in range(80):
        s = (lo + hi) / 2
        gs = ga.scale(1 - s) + gt.scale(s)
        if not pd_check(gs).is_pd:
            hi = s
            continue
        lo = s
        svs = minimal_vectors(GramMatrix(gs))
        if svs.min < s * m:
            return [canonical_sign(v) for v in svs.vectors]
    return []


def _ray_cut(setup: _Setup, rdir) -> tuple[int, ...]:
    d = setup.direction_matrix(rdir)
    w = negative_direction(d)
    # a direction vanishing on all targets cannot be positive semidefinite,
    # because the targets span the space
    assert w is not None
    return canonical_sign(primitive_vector(w))


def _average_terms(setup: _Setup, raw_terms):
    """Group-average certificate terms so the combination dies identically.

    The combined functional vanishes on the invariant subspace; averaging
    over the closed group makes it invariant, and an invariant functional
    vanishing on the invariant subspace is identically zero.
    """
    closed = close_group(setup.group)
    monos = [matrix_monomial(u) for u in closed]
    acc: dict[tuple[str, tuple[int, ...]], Fraction] = {}
    size = Fraction(len(monos))
    for kind, vec, mult in raw_terms:
        if not mult:
            continue
        share = mult / size
        for mono in monos:
            img = canonical_sign(apply_monomial(*mono, vec))
            key = (kind, img)
            acc[key] = acc.get(key, Fraction(0)) + share
    terms = tuple(
        CertificateTerm(kind, vec, mult)
        for (kind, vec), mult in sorted(acc.items())
        if mult
    )
    cert = InfeasibilityCertificate(terms)
    assert cert.verify(setup.n, setup.m)
    return cert


def _lift_cut_multipliers(setup: _Setup, pairs):
    """Equality multipliers cancelling a combination of cut rows.

    pairs is a list of (vector, lambda) with lambda >= 0 whose functional
    combination vanishes on the slice directions. Returns raw certificate
    terms over targets and cuts.
    """
    k = len(setup.orbits)
    w = [Fraction(0)] * k
    for vec, lam in pairs:
        if lam:
            for o in range(k):
                w[o] += lam * _orbit_value(setup.orbits[o], vec)
    at = RatMatrix(list(zip(*setup.eq_rows)))  # k x (number of targets)
    sol = solve_affine(at, [-x for x in w])
    assert sol is not None, "combination must lie in the target row space"
    nu = sol[0]
    raw = [("target", q, nu_q) for q, nu_q in zip(setup.targets, nu)]
    raw += [("cut", vec, lam) for vec, lam in pairs]
    return raw


def _shoot_candidates(setup, pending, shots=64):
    """Pool rows likely to matter, found by floating point shooting.

    Optimizing random directions over the pooled polyhedron lands on
    vertices; the rows tight there are facet candidates. Only insertion
    order depends on this: a misjudged row is re-ranked, never lost,
    because redundancy is always re-tested exactly against the cone.
    """
    if linprog is None or len(pending) <= 4 * setup.p:
        return set(pending)
    keys = sorted(pending)
    a_ub = []
    b_ub = []
    for alpha, beta in keys:
        af, bf = _float_scaled(alpha, beta)
        a_ub.append([-x for x in af])
        b_ub.append(-bf)
    rng = random.Random(0)
    p = setup.p
    chosen: set[tuple] = set()
    for _ in range(shots):
        c = [rng.gauss(0.0, 1.0) for _ in range(p)]
        res = linprog(
            c, A_ub=a_ub, b_ub=b_ub, bounds=(None, None), method="highs"
        )
        if not res.success:
            continue
        for key, slack in zip(keys, res.slack):
            if slack < 1e-6:
                chosen.add(key)
    return chosen or set(pending)


def _pool_farkas(setup, pending):
    """Farkas pairs for an inconsistent row pool, None when consistent.

    Some t satisfies every pooled row alpha . t >= beta exactly when no
    y >= 0 combines the alphas to zero with positive combined beta. A
    floating point solve screens for such a y; its support then seeds an
    exact simplex run, so the certificate stays exact and rounding error
    can only cost the shortcut, never correctness.
    """
    if linprog is None:
        return None
    keys = sorted(pending)
    cols = []
    obj = []
    for k in keys:
        af, bf = _float_scaled(k[0], k[1])
        cols.append(af + [1.0])
        obj.append(-bf)
    a_eq = list(map(list, zip(*cols)))  # p rows of alpha, then normalization
    b_eq = [0.0] * setup.p + [1.0]
    res = linprog(obj, A_eq=a_eq, b_eq=b_eq, bounds=(0.0, None), method="highs")
    if not res.success or -res.fun <= 1e-7:
        return None
    ranked = sorted(zip(res.x, keys), key=lambda it: -it[0])
    support = [k for y, k in ranked[: 3 * (setup.p + 2)] if y > 1e-9]
    return _exact_farkas(setup, {k: pending[k] for k in support})


def _exact_farkas(setup, rows):
    """Exact multiplier pairs over the given rows, None if consistent."""
    keys = sorted(rows)
    eqs = [([k[0][j] for k in keys], 0) for j in range(setup.p)]
    obj = ([k[1] for k in keys], "max")
    lp = LPProblem.build(
        num_vars=len(keys), equalities=eqs, objective=obj, nonneg_vars=True
    )
    res = lp_solve(lp)
    if res.status == "optimal":
        return None
    assert res.status == "unbounded"
    return [(rows[k], lam) for k, lam in zip(keys, res.ray) if lam]


# ---------------------------------------------------------------------------
# vertex enumeration through a floating point hull, certified exactly.
# Floats only propose: candidate vertices are re-solved from their tight
# rows and checked against the whole pool in exact arithmetic, and the
# candidate set is proven complete by expressing every facet of its hull
# as an exact nonnegative combination of pooled rows. Any failure falls
# back to the double description route, so no decision rests on floats.


class _HullFailed(Exception):
    """Internal: the floating point hull could not be certified."""


def _solve_by_hull(setup, rows, add_vec, broken, cap, cache):
    """Cutting loop over certified hull vertices, None to fall back."""
    anchor = _pd_anchor(setup, rows, add_vec)
    if anchor is None:
        return None
    p = setup.p

    def probe_cuts(t) -> bool:
        probe = cache.get(t)
        if probe is None:
            probe = _probe_vertex(setup, t, anchor)
            cache[t] = probe
        out = False
        if probe[0] == "cut":
            for vec in probe[1]:
                if add_vec(vec):
                    out = True
        return out

    rounds = 0
    while True:
        if broken:
            return _certify_cuts(setup, [], [], broken, rounds, ())
        keys = sorted(rows)
        try:
            fl = [_float_scaled(alpha, beta) for alpha, beta in keys]
            a_ub = [[-x for x in af] for af, _ in fl]
            b_ub = [-bf for _, bf in fl]
            verts = _sample_vertices(setup, keys, fl, a_ub, b_ub)
        except (_HullFailed, ValueError, OverflowError):
            return None
        progress = False
        for t in sorted(verts):
            if probe_cuts(t):
                progress = True
        if not progress:
            # fixpoint of the sampler. With interior, certify the vertex
            # set complete, probing each extra find; a flat polytope has
            # no hull to certify against, so the cone route finishes it,
            # working from the rows collected here.
            try:
                if _interior_point(fl, p) is None:
                    return None
                while True:
                    if len(verts) <= p:
                        raise _HullFailed
                    hunt = _uncovered_point(setup, keys, verts, a_ub, b_ub)
                    if hunt is None:
                        grams = [cache[t][1] for t in sorted(verts)]
                        active: set[tuple] = set()
                        for tight in verts.values():
                            active |= tight
                        cut_vecs = sorted(rows[k] for k in active)
                        return _wrap_feasible(setup, rounds, cut_vecs, grams)
                    got = _exact_vertex(setup, keys, fl, hunt)
                    if got is None or got[0] in verts:
                        raise _HullFailed
                    verts[got[0]] = got[1]
                    if probe_cuts(got[0]):
                        progress = True  # polytope shrinks, resample
                        break
            except (_HullFailed, QhullError, ValueError, OverflowError):
                return None
        rounds += 1
        if rounds > cap:
            raise IterationLimitExceeded(rounds, len(verts), len(rows))


def _sample_vertices(setup, keys, fl, a_ub, b_ub):
    """Exact pool vertices hit by optimizing random directions."""
    verts: dict[tuple, frozenset] = {}
    tried: set[tuple] = set()
    rng = random.Random(1)
    for _ in range(16 * setup.p + 64):
        cost = [rng.gauss(0.0, 1.0) for _ in range(setup.p)]
        res = linprog(
            cost, A_ub=a_ub, b_ub=b_ub, bounds=(None, None), method="highs"
        )
        if not res.success:
            raise _HullFailed  # unbounded or numerically lost
        pt = [float(x) for x in res.x]
        fkey = tuple(round(x, 7) for x in pt)
        if fkey in tried:
            continue
        tried.add(fkey)
        got = _exact_vertex(setup, keys, fl, pt)
        if got is not None:
            verts.setdefault(got[0], got[1])
    return verts


def _pd_anchor(setup, rows, add_vec, tries=200):
    """Rational slice point with positive definite form, None if stuck.

    Runs center cutting: while the form at the float center of the pooled
    region is indefinite, a vector of small form value there joins the
    pool (a valid row for the feasible region) and pushes the center
    away. The definite forms in the region have positive volume whenever
    the problem is feasible, so the center lands among them quickly. The
    anchor itself need not satisfy the pooled rows.
    """
    for _ in range(tries):
        fl = [_float_scaled(alpha, beta) for alpha, beta in sorted(rows)]
        c = _interior_point(fl, setup.p)
        if c is None:
            return None
        t = tuple(Fraction(x).limit_denominator(1 << 30) for x in c)
        g = setup.matrix_at(t)
        res = pd_check(g)
        if res.is_pd:
            return t
        w = _small_low_vec(setup, g)
        if w is None:
            w = canonical_sign(primitive_vector(res.witness))
        if not add_vec(w):
            return None  # row already pooled, the center cannot move
    return None


def _float_scaled(alpha, beta):
    """Row as floats of magnitude about one; safe for huge integers."""
    g = max(abs(beta), *(abs(a) for a in alpha)) or 1
    return [float(Fraction(a, g)) for a in alpha], float(Fraction(beta, g))


def _small_low_vec(setup, g):
    """Small integer vector with exact form value below min_value.

    Rounds multiples of the float eigenvector of the lowest eigenvalue;
    the exact value check makes the float part advisory only.
    """
    n = setup.n
    try:
        arr = np.array([[float(x) for x in row] for row in g.entries])
    except OverflowError:
        return None
    u = np.linalg.eigh(arr)[1][:, 0]
    mx = max(abs(float(x)) for x in u) or 1.0
    u = [float(x) / mx for x in u]
    for k in (1, 2, 3, 4, 6, 8, 12, 16, 24, 32):
        v = tuple(round(k * x) for x in u)
        if not any(v):
            continue
        val = sum(
            v[i] * v[j] * g.entries[i][j] for i in range(n) for j in range(n)
        )
        if val < setup.m:
            return canonical_sign(tuple(int(x) for x in v))
    return None


def _interior_point(fl, p):
    """Float point well inside the pooled polyhedron, None when flat.

    fl holds float rows prescaled to magnitude about one.
    """
    a_ub = []
    b_ub = []
    for af, bf in fl:
        nrm = sum(x * x for x in af) ** 0.5 or 1.0
        a_ub.append([-x / nrm for x in af] + [1.0])
        b_ub.append(-bf / nrm)
    a_ub.append([0.0] * p + [1.0])  # cap the inradius variable
    b_ub.append(1e9)
    cost = [0.0] * p + [-1.0]
    res = linprog(cost, A_ub=a_ub, b_ub=b_ub, bounds=(None, None), method="highs")
    if not res.success or res.x[-1] <= 1e-7:
        return None
    return [float(x) for x in res.x[:p]]


def _exact_vertex(setup, keys, fl, pt):
    """Exact pool vertex near a float point: (vertex, tight keys), or None.

    The tight rows are guessed from float slacks and their equality system
    is solved exactly; the solution only counts when it is unique and
    satisfies every pooled row. Tightness is then re-derived exactly, so a
    bad guess can only make this return None, never a wrong vertex.
    """
    guess = []
    for key, (af, bf) in zip(keys, fl):
        val = sum(a * x for a, x in zip(af, pt)) - bf
        if abs(val) < 1e-6:
            guess.append(key)
    if len(guess) < setup.p:
        return None
    a = RatMatrix([[Fraction(x) for x in alpha] for alpha, _ in guess])
    sol = solve_affine(a, [Fraction(beta) for _, beta in guess])
    if sol is None or len(sol) != 1:
        return None
    t = tuple(sol[0])
    den = 1
    for x in t:
        den = den * x.denominator // gcd(den, x.denominator)
    ti = [int(x * den) for x in t]
    tight = set()
    for key in keys:
        alpha, beta = key
        val = sum(a_ * x for a_, x in zip(alpha, ti))
        rhs = beta * den
        if val < rhs:
            return None
        if val == rhs:
            tight.add(key)
    return t, frozenset(tight)


def _uncovered_point(setup, keys, verts, a_ub, b_ub):
    """A float pool point beyond the hull of verts, None when none exists.

    Every facet of the hull of the candidate vertices is made exact and
    then proven valid for the whole pool; a facet that cannot be proven
    valid yields a float point past it, a fresh vertex candidate.
    """
    vlist = sorted(verts)
    hull = ConvexHull(np.array([[float(x) for x in t] for t in vlist]))
    eqs: dict[tuple, tuple] = {}
    for row in hull.equations:
        eqs.setdefault(tuple(round(float(x), 9) for x in row), tuple(row))
    for row in eqs.values():
        facet = _exact_facet(setup, vlist, row[:-1], row[-1])
        if facet is None:
            raise _HullFailed
        g, h, on_facet = facet
        if _dominated(setup, verts, on_facet, g, h):
            continue
        res = linprog(
            [-float(x) for x in g],
            A_ub=a_ub,
            b_ub=b_ub,
            bounds=(None, None),
            method="highs",
        )
        if not res.success:
            raise _HullFailed
        return [float(x) for x in res.x]
    return None


def _exact_facet(setup, vlist, g, off):
    """Exact supporting inequality matching a float hull facet, or None.

    Returns integer primitive (normal, rhs, tight vertices) with
    normal . t <= rhs on every candidate vertex.
    """
    tol = 1e-6 * (1.0 + abs(off))
    tight = [
        v
        for v in vlist
        if abs(sum(gi * float(x) for gi, x in zip(g, v)) + off) < tol
    ]
    if len(tight) < setup.p:
        return None
    base = tight[0]
    diffs = RatMatrix([[x - b for x, b in zip(v, base)] for v in tight[1:]])
    null = nullspace(diffs)
    if len(null) != 1:
        return None
    gex = primitive_vector(null[0])
    hex_ = sum(a * b for a, b in zip(gex, base))
    vals = [sum(a * x for a, x in zip(gex, v)) for v in vlist]
    if all(v <= hex_ for v in vals):
        return tuple(gex), hex_, tight
    if all(v >= hex_ for v in vals):
        return tuple(-a for a in gex), -hex_, tight
    return None


def _dominated(setup, verts, on_facet, g, h):
    """Exact proof that g . t <= h holds on the pooled polyhedron.

    A valid inequality tight on a face is a nonnegative combination of
    the rows active at any vertex of that face, so the candidate support
    is tiny and known in advance; no search over the pool is needed.
    """
    first = set(verts[on_facet[0]])
    union = set()
    for v in on_facet:
        union |= verts[v]
    supports = [sorted(first)]
    if union != first:
        supports.append(sorted(union))
    for support in supports:
        eqs = [([k[0][j] for k in support], -g[j]) for j in range(setup.p)]
        obj = ([-k[1] for k in support], "min")
        lp = LPProblem.build(
            num_vars=len(support),
            equalities=eqs,
            objective=obj,
            nonneg_vars=True,
        )
        out = lp_solve(lp)
        if out.status == "unbounded":
            return True
        if out.status == "optimal" and out.value <= h:
            return True
    return False


def _certify_cuts(setup, lp_rows, lp_vecs, broken, rounds, order):
    if broken:
        # a single identically violated constraint suffices
        pairs = [(broken[0], Fraction(1))]
    else:
        lp = LPProblem.build(
            num_vars=setup.p,
            inequalities=[(list(alpha), beta) for alpha, beta in lp_rows],
        )
        res = lp_solve(lp)
        assert res.status == "infeasible"
        pairs = [
            (vec, lam)
            for vec, lam in zip(lp_vecs, res.ineq_multipliers)
            if lam
        ]
    return _finish_infeasible(setup, pairs, rounds, order)


def _finish_infeasible(setup, pairs, rounds, order):
    cert = _average_terms(setup, _lift_cut_multipliers(setup, pairs))
    return RealizationResult(
        status="infeasible",
        subspace_dim=len(setup.orbits),
        affine_dim=setup.p,
        rounds=rounds,
        cuts=tuple(order),
        certificate=cert,
    )


def _certify_equalities(setup: _Setup) -> RealizationResult:
    a = RatMatrix(setup.eq_rows)
    left_null = nullspace(RatMatrix(list(zip(*a.entries))))
    nu = next((v for v in left_null if sum(v)), None)
    assert nu is not None, "inconsistent system has an unbalanced row relation"
    if sum(nu) < 0:
        nu = tuple(-x for x in nu)
    raw = [("target", q, nu_q) for q, nu_q in zip(setup.targets, nu)]
    cert = _average_terms(setup, raw)
    return RealizationResult(
        status="infeasible",
        subspace_dim=len(setup.orbits),
        affine_dim=0,
        rounds=0,
        cuts=(),
        certificate=cert,
    )


# ---------------------------------------------------------------------------
# faces of a feasible realization polytope


def _affine_rank(points) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    rows = [[x - b for x, b in zip(t, base)] for t in points[1:]]
    return RatMatrix(rows).rank()


def scan_faces(
    problem: RealizationProblem,
    result: RealizationResult,
    depth: int | None = 1,
) -> list[FaceReport]:
    """Minimal vector census at the barycenter of faces of the polytope.

    The whole polytope comes first. depth counts intersection stages:
    depth 1 adds every face that is the tight set of a single constraint
    (the facets in particular), higher depths intersect further, and
    depth None closes the whole face lattice. Faces are identified by the
    indices of their vertices in result.vertices.
    """
    if result.status != "feasible":
        raise ValueError("face scan needs a feasible result")
    setup = _Setup(problem)
    ts = [setup.t_of_matrix(g.mat) for g in result.vertices]
    functionals = []
    seen = set()
    for vec in result.cuts:
        alpha, beta = setup.functional(vec)
        if not any(alpha) or (alpha, beta) in seen:
            continue
        seen.add((alpha, beta))
        functionals.append((alpha, beta))

    all_idx = frozenset(range(len(ts)))
    tight_sets = []
    for alpha, beta in functionals:
        tight = frozenset(
            i
            for i, t in enumerate(ts)
            if sum(a * x for a, x in zip(alpha, t)) == beta
        )
        if tight and tight != all_idx and tight not in tight_sets:
            tight_sets.append(tight)

    faces = {all_idx}
    frontier = {all_idx}
    stage = 0
    while frontier and (depth is None or stage < depth):
        new = set()
        for f in frontier:
            for tight in tight_sets:
                g = f & tight
                if g and g not in faces:
                    new.add(g)
        faces |= new
        frontier = new
        stage += 1

    reports = []
    for face in faces:
        idx = tuple(sorted(face))
        pts = [ts[i] for i in idx]
        avg = tuple(sum(t[j] for t in pts) / len(pts) for j in range(setup.p))
        gram = GramMatrix(setup.matrix_at(avg))
        svs = minimal_vectors(gram)
        gen = generated_by_min(svs)
        basis = find_minimal_basis(svs)
        reports.append(
            FaceReport(
                vertex_indices=idx,
                dim=_affine_rank(pts),
                min=svs.min,
                s=svs.s,
                generated=gen,
                basis=basis,
                counterexample=gen and basis is None,
            )
        )
    reports.sort(key=lambda r: (-r.dim, r.vertex_indices))
    return reports


# ---------------------------------------------------------------------------
# perfection of a minimal vector configuration


def perfection_relation(svs: ShortVectorSet):
    """Rank of the projected forms v v^T and, at corank one, the relation.

    Returns (rank, coeffs) where coeffs are integer, content one, first
    nonzero positive, with sum(coeffs[k] * y_k y_k^T) = 0 over the minimal
    vectors y_k; coeffs is None unless the corank is exactly one.
    """
    n = svs.n
    rows = [
        [Fraction(v[i] * v[j]) for i in range(n) for j in range(i, n)]
        for v in svs.vectors
    ]
    a = RatMatrix(rows)
    rank = a.rank()
    if svs.s - rank != 1:
        return rank, None
    kernel = nullspace(a.transpose())
    assert len(kernel) == 1
    return rank, canonical_sign(primitive_vector(kernel[0]))


def norm_relation_check(svs: ShortVectorSet, coeffs) -> bool:
    """Whether the relation coefficients also kill the norms.

    Every vector in svs has norm svs.min, so the weighted norm sum is
    svs.min times the coefficient sum.
    """
    if len(coeffs) != svs.s:
        raise ValueError("coefficient length mismatch")
    return svs.min * sum(Fraction(c) for c in coeffs) == 0
