"""Exact rational linear programming with verifiable certificates.

Two-phase primal simplex over Fractions with Bland's rule, so termination
is guaranteed. Every returned certificate is checked by substitution before
it leaves this module:

  optimal    -> a feasible point and the exact objective value
  infeasible -> Farkas multipliers: free-signed on equalities, nonnegative
                on inequalities, combining the rows to 0 and the right hand
                sides to something positive
  unbounded  -> a recession direction along which the objective improves
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


Row = tuple[Fraction, ...]


def _frac_row(row: Sequence) -> Row:
    return tuple(Fraction(x) for x in row)


@dataclass(frozen=True)
class LPProblem:
    """min/max objective . x subject to eq rows = rhs and ineq rows >= rhs.

    Variables are free by default; nonneg_vars restricts all of them to
    x >= 0, which halves the tableau instead of adding rows.
    """

    num_vars: int
    equalities: tuple[tuple[Row, Fraction], ...] = ()
    inequalities: tuple[tuple[Row, Fraction], ...] = ()
    objective: tuple[Row, str] | None = None  # (coeffs, "max" or "min")
    nonneg_vars: bool = False

    @classmethod
    def build(cls, num_vars, equalities=(), inequalities=(), objective=None,
              nonneg_vars=False):
        eqs = tuple((_frac_row(a), Fraction(b)) for a, b in equalities)
        ineqs = tuple((_frac_row(a), Fraction(b)) for a, b in inequalities)
        if objective is not None:
            coeffs, sense = objective
            if sense not in ("max", "min"):
                raise ValueError("objective sense must be 'max' or 'min'")
            objective = (_frac_row(coeffs), sense)
        for row, _ in eqs + ineqs:
            if len(row) != num_vars:
                raise ValueError("constraint row width mismatch")
        return cls(num_vars, eqs, ineqs, objective, nonneg_vars)


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    point: Row | None = None
    value: Fraction | None = None
    eq_multipliers: Row | None = None
    ineq_multipliers: Row | None = None
    ray: Row | None = None


def verify_farkas(problem: LPProblem, eq_mults: Sequence, ineq_mults: Sequence) -> bool:
    """Exact check that the multipliers prove infeasibility."""
    if len(eq_mults) != len(problem.equalities):
        return False
    if len(ineq_mults) != len(problem.inequalities):
        return False
    if any(m < 0 for m in ineq_mults):
        return False
    combo = [Fraction(0)] * problem.num_vars
    rhs = Fraction(0)
    for m, (row, b) in zip(eq_mults, problem.equalities):
        if m:
            rhs += m * b
            for j, x in enumerate(row):
                combo[j] += m * x
    for m, (row, b) in zip(ineq_mults, problem.inequalities):
        if m:
            rhs += m * b
            for j, x in enumerate(row):
                combo[j] += m * x
    if problem.nonneg_vars:
        # with x >= 0, a nonpositive combination already bounds the
        # left side by zero, so the coefficients need not vanish
        if any(x > 0 for x in combo):
            return False
    elif any(combo):
        return False
    return rhs > 0


def verify_ray(problem: LPProblem, ray: Sequence) -> bool:
    """Exact check that ray is a feasible direction improving the objective."""
    if len(ray) != problem.num_vars or not any(ray):
        return False
    if problem.nonneg_vars and any(r < 0 for r in ray):
        return False
    for row, _ in problem.equalities:
        if sum(a * r for a, r in zip(row, ray)) != 0:
            return False
    for row, _ in problem.inequalities:
        if sum(a * r for a, r in zip(row, ray)) < 0:
            return False
    if problem.objective is None:
        return True
    coeffs, sense = problem.objective
    gain = sum(c * r for c, r in zip(coeffs, ray))
    return gain > 0 if sense == "max" else gain < 0


def _is_feasible(problem: LPProblem, x: Sequence) -> bool:
    if problem.nonneg_vars and any(v < 0 for v in x):
        return False
    for row, b in problem.equalities:
        if sum(a * v for a, v in zip(row, x)) != b:
            return False
    for row, b in problem.inequalities:
        if sum(a * v for a, v in zip(row, x)) < b:
            return False
    return True


class _Tableau:
    """Dense simplex tableau with Bland's rule pivoting."""

    def __init__(self, rows: list[list[Fraction]], basis: list[int], ncols: int):
        self.rows = rows  # each row: coefficients + rhs last
        self.basis = basis
        self.ncols = ncols  # number of variable columns

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        inv = 1 / row[c]
        self.rows[r] = row = [x * inv for x in row]
        for i, other in enumerate(self.rows):
            if i != r and other[c]:
                f = other[c]
                self.rows[i] = [x - f * y for x, y in zip(other, row)]
        self.basis[r] = c

    def minimize(self, cost: list[Fraction], allowed) -> tuple[str, list[Fraction], int | None]:
        """Run simplex steps for min cost.x over allowed columns.

        Returns ("optimal", reduced_costs, None) or
        ("unbounded", reduced_costs, entering_column).
        """
        m = len(self.rows)
        while True:
            red = list(cost)
            # reduced costs: cost minus cost of the basic solution expression
            for i in range(m):
                cb = cost[self.basis[i]]
                if cb:
                    row = self.rows[i]
                    for j in range(self.ncols):
                        if row[j]:
                            red[j] -= cb * row[j]
            enter = None
            for j in range(self.ncols):
                if allowed(j) and red[j] < 0:
                    enter = j
                    break
            if enter is None:
                return "optimal", red, None
            leave = None
            best = None
            for i in range(m):
                a = self.rows[i][enter]
                if a > 0:
                    ratio = self.rows[i][-1] / a
                    if best is None or ratio < best or (
                        ratio == best and self.basis[i] < self.basis[leave]
                    ):
                        best = ratio
                        leave = i
            if leave is None:
                return "unbounded", red, enter
            self.pivot(leave, enter)


def lp_solve(problem: LPProblem) -> LPResult:
    """Solve an exact rational LP; certificates are verified before return."""
    n = problem.num_vars
    split = not problem.nonneg_vars  # free variables become x+ minus x-
    nvar = 2 * n if split else n
    neq = len(problem.equalities)
    nineq = len(problem.inequalities)
    m = neq + nineq
    nslack = nineq
    nstruct = nvar + nslack
    ncols = nstruct + m  # plus artificial columns

    rows: list[list[Fraction]] = []
    flips: list[int] = []
    all_constraints = list(problem.equalities) + list(problem.inequalities)
    for i, (coeffs, b) in enumerate(all_constraints):
        row = [Fraction(0)] * (ncols + 1)
        for j, a in enumerate(coeffs):
            row[j] = a
            if split:
                row[n + j] = -a
        if i >= neq:
            row[nvar + (i - neq)] = Fraction(-1)  # surplus for >=
        row[-1] = b
        if b < 0:
            row = [-x for x in row]
        flips.append(-1 if b < 0 else 1)
        row[nstruct + i] = Fraction(1)
        rows.append(row)

    basis = [nstruct + i for i in range(m)]
    tab = _Tableau(rows, basis, ncols)

    # phase 1: drive the artificials to zero
    cost1 = [Fraction(0)] * ncols
    for i in range(m):
        cost1[nstruct + i] = Fraction(1)
    status, red, _ = tab.minimize(cost1, allowed=lambda j: True)
    assert status == "optimal"  # phase 1 is bounded below by 0
    value1 = sum(tab.rows[i][-1] * cost1[tab.basis[i]] for i in range(m))
    if value1 > 0:
        # infeasible; dual multipliers come from the artificial reduced costs
        y = [Fraction(1) - red[nstruct + i] for i in range(m)]
        mults = [y[i] * flips[i] for i in range(m)]
        eq_mults = tuple(mults[:neq])
        ineq_mults = tuple(mults[neq:])
        assert verify_farkas(problem, eq_mults, ineq_mults)
        return LPResult("infeasible", eq_multipliers=eq_mults, ineq_multipliers=ineq_mults)

    # remove artificials from the basis where possible, drop redundant rows
    keep: list[int] = []
    for i in range(m):
        if tab.basis[i] >= nstruct:
            piv = next((j for j in range(nstruct) if tab.rows[i][j]), None)
            if piv is None:
                continue  # redundant constraint row
            tab.pivot(i, piv)
        keep.append(i)
    if len(keep) < m:
        tab.rows = [tab.rows[i] for i in keep]
        tab.basis = [tab.basis[i] for i in keep]

    # phase 2
    if problem.objective is None:
        cost2 = [Fraction(0)] * ncols
        sense = "min"
    else:
        coeffs, sense = problem.objective
        cost2 = [Fraction(0)] * ncols
        for j, c in enumerate(coeffs):
            v = -c if sense == "max" else c
            cost2[j] = v
            if split:
                cost2[n + j] = -v
    status, red, enter = tab.minimize(cost2, allowed=lambda j: j < nstruct)

    if status == "unbounded":
        direction = [Fraction(0)] * ncols
        direction[enter] = Fraction(1)
        for i, b in enumerate(tab.basis):
            if tab.rows[i][enter]:
                direction[b] = -tab.rows[i][enter]
        if split:
            ray = tuple(direction[j] - direction[n + j] for j in range(n))
        else:
            ray = tuple(direction[:n])
        assert verify_ray(problem, ray)
        return LPResult("unbounded", ray=ray)

    point_std = [Fraction(0)] * ncols
    for i, b in enumerate(tab.basis):
        point_std[b] = tab.rows[i][-1]
    if split:
        point = tuple(point_std[j] - point_std[n + j] for j in range(n))
    else:
        point = tuple(point_std[:n])
    assert _is_feasible(problem, point)
    if problem.objective is None:
        value = Fraction(0)
    else:
        coeffs, _ = problem.objective
        value = sum(c * x for c, x in zip(coeffs, point))
    return LPResult("optimal", point=point, value=value)
