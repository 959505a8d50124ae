"""Hermite and Smith normal forms over the integers.

hnf computes the row-style Hermite normal form in the lower-triangular
convention: each row's last nonzero entry is its pivot, pivot columns
strictly increase, pivots are positive, entries below a pivot are reduced
into [0, pivot), and zero rows sit at the bottom. The returned transform U
is unimodular with H = U M.

snf returns the elementary divisors d1 | d2 | ... of the cokernel,
including zeros for rank deficiency.
"""

from __future__ import annotations

from .matrices import IntMatrix


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with g = gcd(a, b) >= 0 and a x + b y = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _hnf_upper(m: list[list[int]], u: list[list[int]]) -> int:
    """Upper echelon row HNF in place; identical row ops applied to u.

    Pivots are each row's first nonzero entry, made positive, with entries
    above them reduced into [0, pivot). Returns the rank.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    r = 0
    for j in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if m[i][j]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        u[r], u[piv] = u[piv], u[r]
        for i in range(r + 1, rows):
            while m[i][j]:
                g, x, y = _xgcd(m[r][j], m[i][j])
                a, b = m[r][j] // g, m[i][j] // g
                # rows (r, i) <- (x*r + y*i, -b*r + a*i); det of the 2x2 op is 1
                new_r = [x * p + y * q for p, q in zip(m[r], m[i])]
                new_i = [-b * p + a * q for p, q in zip(m[r], m[i])]
                m[r], m[i] = new_r, new_i
                new_ur = [x * p + y * q for p, q in zip(u[r], u[i])]
                new_ui = [-b * p + a * q for p, q in zip(u[r], u[i])]
                u[r], u[i] = new_ur, new_ui
        if m[r][j] < 0:
            m[r] = [-x for x in m[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = m[i][j] // m[r][j]
            if q:
                m[i] = [p - q * s for p, s in zip(m[i], m[r])]
                u[i] = [p - q * s for p, s in zip(u[i], u[r])]
        r += 1
    return r


def hnf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Lower-triangular row Hermite normal form (H, U) with H = U M."""
    rows, cols = m.rows, m.cols
    work = [list(r)[::-1] for r in m.entries]  # reverse columns
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    rank = _hnf_upper(work, u)
    # undo the column reversal and flip the pivot-row order
    perm = list(range(rank))[::-1] + list(range(rank, rows))
    h_rows = [work[i][::-1] for i in perm]
    u_rows = [u[i] for i in perm]
    return IntMatrix(h_rows), IntMatrix(u_rows)


def hnf_rank(m: IntMatrix) -> int:
    work = [list(r) for r in m.entries]
    u = [[int(i == j) for j in range(m.rows)] for i in range(m.rows)]
    return _hnf_upper(work, u)


def snf(m: IntMatrix) -> tuple[int, ...]:
    """Elementary divisors d1 | d2 | ... (nonnegative, zeros last)."""
    a = [list(r) for r in m.entries]
    rows, cols = m.rows, m.cols
    k = min(rows, cols)
    divisors: list[int] = []
    top = 0
    while top < k:
        # find a nonzero entry in the remaining block
        pos = None
        for i in range(top, rows):
            for j in range(top, cols):
                if a[i][j]:
                    pos = (i, j)
                    break
            if pos:
                break
        if pos is None:
            break
        i, j = pos
        a[top], a[i] = a[i], a[top]
        for row in a:
            row[top], row[j] = row[j], row[top]
        while True:
            # clear column top with row ops; rotate only when the pivot
            # does not divide, so each rotation strictly shrinks it
            for i in range(top + 1, rows):
                t = a[i][top]
                if not t:
                    continue
                s = a[top][top]
                if t % s == 0:
                    q = t // s
                    a[i] = [v - q * u for u, v in zip(a[top], a[i])]
                else:
                    g, x, y = _xgcd(s, t)
                    p, q = s // g, t // g
                    new_t = [x * u + y * v for u, v in zip(a[top], a[i])]
                    new_i = [-q * u + p * v for u, v in zip(a[top], a[i])]
                    a[top], a[i] = new_t, new_i
            # clear row top with column ops
            for j in range(top + 1, cols):
                t = a[top][j]
                if not t:
                    continue
                s = a[top][top]
                if t % s == 0:
                    q = t // s
                    for row in a:
                        row[j] -= q * row[top]
                else:
                    g, x, y = _xgcd(s, t)
                    p, q = s // g, t // g
                    for row in a:
                        u, v = row[top], row[j]
                        row[top] = x * u + y * v
                        row[j] = -q * u + p * v
            if all(a[i][top] == 0 for i in range(top + 1, rows)) and all(
                a[top][j] == 0 for j in range(top + 1, cols)
            ):
                break
        d = abs(a[top][top])
        # enforce the divisibility chain: fold any non-multiple into this pivot
        fixed = True
        for i in range(top + 1, rows):
            for j in range(top + 1, cols):
                if a[i][j] % d:
                    a[top] = [s + t for s, t in zip(a[top], a[i])]
                    fixed = False
                    break
            if not fixed:
                break
        if not fixed:
            continue
        divisors.append(d)
        top += 1
    divisors.extend([0] * (k - len(divisors)))
    return tuple(divisors)
