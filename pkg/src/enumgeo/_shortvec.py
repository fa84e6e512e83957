"""Exact short-vector enumeration for positive-definite integer lattices.

The Gram matrix is decomposed as G = L D L^T over the rationals and the
quadratic form written as Q(x) = sum_i d_i (x_i + sum_{j>i} L_ji x_j)^2.
All data is then rescaled to integers: with M_i the lcm of the denominators
in row i of L and LAM a global lcm, each level carries an integer weight
ehat_i = LAM*d_i/M_i**2 and the remaining budget stays an exact integer
throughout the depth-first scan.  No floating point anywhere, so counts are
exact for any norm bound.

The compiled kernel in _shortvec_c runs the same scan on C integers; the
``preflight_limit`` bound decides per call whether 64-bit arithmetic is safe.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt


class NotPositiveDefinite(ValueError):
    """Enumeration requested on a form that is not positive definite."""


def prepare(gram) -> dict:
    """Scaled-integer LDL^T data for the depth-first scan.

    Returns a dict with keys rank, lm (integer rows, lm[i][j] = M_i*L_ji for
    j > i), m (row denominators), ehat (level weights), lam (global scale).
    Raises NotPositiveDefinite unless all pivots are positive.
    """
    n = len(gram)
    a = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    lower = [[Fraction(0)] * n for _ in range(n)]
    diag = [Fraction(0)] * n
    for i in range(n):
        d = a[i][i] - sum(lower[i][k] * lower[i][k] * diag[k] for k in range(i))
        if d <= 0:
            raise NotPositiveDefinite(
                f"pivot {i} is {d}; the form has a non-positive direction")
        diag[i] = d
        for j in range(i + 1, n):
            s = a[j][i] - sum(lower[j][k] * lower[i][k] * diag[k]
                              for k in range(i))
            lower[j][i] = s / d

    m = []
    lm = []
    for i in range(n):
        den = 1
        for j in range(i + 1, n):
            den = den * lower[j][i].denominator // gcd(den, lower[j][i].denominator)
        m.append(den)
        lm.append([int(lower[j][i] * den) if j > i else 0 for j in range(n)])

    lam = 1
    scaled = [diag[i] / (m[i] * m[i]) for i in range(n)]
    for s in scaled:
        lam = lam * s.denominator // gcd(lam, s.denominator)
    ehat = [int(s * lam) for s in scaled]
    return {"rank": n, "lm": lm, "m": m, "ehat": ehat, "lam": lam}


def count_by_norm(data: dict, norm_max: int) -> list:
    """Counts[n] of lattice vectors with Q(x) = n, for 0 <= n <= norm_max."""
    rank = data["rank"]
    lm, m, ehat, lam = data["lm"], data["m"], data["ehat"], data["lam"]
    counts = [0] * (norm_max + 1)
    if norm_max < 0:
        return counts
    budget0 = lam * norm_max
    xs = [0] * rank

    def descend(i: int, budget: int) -> None:
        row = lm[i]
        chat = 0
        for j in range(i + 1, rank):
            if xs[j]:
                chat += row[j] * xs[j]
        s = isqrt(budget // ehat[i])
        mi = m[i]
        lo = -((s + chat) // mi)
        hi = (s - chat) // mi
        ei = ehat[i]
        if i == 0:
            for x in range(lo, hi + 1):
                t = mi * x + chat
                rem = budget - ei * t * t
                counts[(budget0 - rem) // lam] += 1
        else:
            for x in range(lo, hi + 1):
                xs[i] = x
                t = mi * x + chat
                descend(i - 1, budget - ei * t * t)
            xs[i] = 0

    if rank == 0:
        counts[0] = 1
        return counts
    descend(rank - 1, budget0)
    return counts


def preflight_limit(data: dict, norm_max: int) -> int:
    """Largest absolute integer the scan can produce, for overflow checks."""
    rank = data["rank"]
    lm, m, ehat, lam = data["lm"], data["m"], data["ehat"], data["lam"]
    budget = lam * norm_max
    # per-level |M_i x_i + C_i| <= isqrt(budget/ehat_i); |x_i| and |C_i| follow
    tmax = [isqrt(budget // e) if e else 0 for e in ehat]
    xmax = [0] * rank
    cmax = [0] * rank
    for i in range(rank - 1, -1, -1):
        cmax[i] = sum(abs(lm[i][j]) * xmax[j] for j in range(i + 1, rank))
        xmax[i] = (tmax[i] + cmax[i]) // m[i] + 1
    peak = budget
    for i in range(rank):
        peak = max(peak, cmax[i] + m[i] * xmax[i], ehat[i] * tmax[i] * tmax[i])
    return peak
