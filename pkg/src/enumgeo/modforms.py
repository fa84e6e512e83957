"""Quasi-modular forms as exact q-expansions.

Eisenstein series E2, E4, E6, eta quotients carrying their fractional
q-power in the series shift, the E8 theta series (by lattice point counts
or via E4), and exact linear fitting of quasi-homogeneous E2/E4/E6
polynomials against prescribed series coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

from . import lattice as _lattice
from .series import QSeries, product_family

#: weight -> (prefactor of the divisor sum, divisor power)
_EISENSTEIN = {2: (-24, 1), 4: (240, 3), 6: (-504, 5)}


class OddOrNonpositiveWeight(ValueError):
    """Monomial bases exist only for positive even weights."""


def divisor_sigma(n: int, k: int) -> int:
    """Sum of k-th powers of the divisors of n >= 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            e = n // d
            if e != d:
                total += e ** k
        d += 1
    return total


def eisenstein(weight: int, order: int) -> QSeries:
    """E_weight as a q-expansion; only weights 2, 4, 6 are constructible."""
    if weight not in _EISENSTEIN:
        raise OddOrNonpositiveWeight(
            f"Eisenstein weight must be 2, 4 or 6, got {weight}")
    c, k = _EISENSTEIN[weight]
    coeffs = [Fraction(1)] + [Fraction(c * divisor_sigma(n, k))
                              for n in range(1, order + 1)]
    return QSeries(coeffs, order=order)


def eta_quotient(exponent: int, order: int) -> QSeries:
    """The exponent-th power of the eta function: shift exponent/24 and
    coefficients prod(1 - q**m)**exponent."""
    if not isinstance(exponent, int):
        raise TypeError("eta exponent must be an integer")
    f = product_family(lambda m: exponent, order)
    return f.with_shift(Fraction(exponent, 24))


@lru_cache(maxsize=8)
def _theta_counts(order: int) -> tuple:
    counts = _lattice.enumerate_vectors(_lattice.e8_lattice(), 2 * order)
    odd = [n for n in counts if n % 2 and counts[n]]
    if odd:
        raise AssertionError(f"odd norms {odd} in an even lattice")
    return tuple(counts[2 * k] for k in range(order + 1))


def theta_e8(order: int, method: str = "eisenstein") -> QSeries:
    """Theta series of the E8 lattice.

    method='lattice' counts vectors of each even norm exactly;
    method='eisenstein' returns E4.  The two agree identically.
    """
    if method == "eisenstein":
        return eisenstein(4, order)
    if method == "lattice":
        return QSeries(_theta_counts(order), order=order)
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class MonomialBasis:
    """All E2^i E4^j E6^k with 2i + 4j + 6k = weight, in lex order."""

    weight: int
    monomials: tuple

    def labels(self) -> tuple:
        return tuple(monomial_label(m) for m in self.monomials)

    def __len__(self):
        return len(self.monomials)


def monomial_label(m: Sequence) -> str:
    i, j, k = m
    parts = [f"E{w}^{e}" if e > 1 else f"E{w}"
             for w, e in ((2, i), (4, j), (6, k)) if e]
    return "*".join(parts) if parts else "1"


def weight_monomials(weight: int) -> MonomialBasis:
    """Exponent triples (i, j, k) of the quasi-modular monomials of the
    given weight, lexicographically ordered."""
    if weight <= 0 or weight % 2:
        raise OddOrNonpositiveWeight(
            f"weight must be a positive even integer, got {weight}")
    triples = []
    for i in range(weight // 2, -1, -1):
        rem = weight - 2 * i
        for j in range(rem // 4, -1, -1):
            rem2 = rem - 4 * j
            if rem2 % 6 == 0:
                triples.append((i, j, rem2 // 6))
    return MonomialBasis(weight=weight, monomials=tuple(sorted(triples)))


def monomial_series(m: Sequence, order: int) -> QSeries:
    """The q-expansion of E2^i * E4^j * E6^k."""
    i, j, k = m
    out = QSeries.one(order)
    if i:
        out = out * eisenstein(2, order) ** i
    if j:
        out = out * eisenstein(4, order) ** j
    if k:
        out = out * eisenstein(6, order) ** k
    return out


@dataclass(frozen=True)
class FitResult:
    """Exact solution set of a coefficient-matching problem.

    ``particular`` is one solution (free variables set to zero) or None
    when the system is inconsistent; ``nullspace`` spans all homogeneous
    solutions, so the full solution set is particular + span(nullspace).
    """

    basis: MonomialBasis
    eta_exponent: int
    particular: tuple | None
    nullspace: tuple
    consistent: bool

    @property
    def nullity(self) -> int:
        return len(self.nullspace)

    def to_json_dict(self) -> dict:
        def vec(v):
            return {",".join(str(e) for e in m):
                    [str(c.numerator), str(c.denominator)]
                    for m, c in zip(self.basis.monomials, v)}
        return {
            "weight": self.basis.weight,
            "eta_exponent": self.eta_exponent,
            "monomials": [list(m) for m in self.basis.monomials],
            "consistent": self.consistent,
            "particular": vec(self.particular) if self.particular else None,
            "nullspace": [vec(v) for v in self.nullspace],
        }


def solve_exact(rows: Sequence, rhs: Sequence) -> tuple:
    """Solve A x = b exactly over the rationals.

    Returns (consistent, particular, nullspace).  Forward elimination is
    fraction-free (Bareiss) on denominator-cleared integer rows; back
    substitution runs over Fraction.  The particular solution sets all free
    variables to zero; the nullspace basis has one vector per free column.
    """
    m = len(rows)
    if m != len(rhs):
        raise ValueError("one right-hand side per row required")
    n = len(rows[0]) if m else 0
    exact_rows = [[Fraction(x) for x in row] for row in rows]
    exact_rhs = [Fraction(b) for b in rhs]
    aug = []
    for row, b in zip(exact_rows, exact_rhs):
        if len(row) != n:
            raise ValueError("ragged coefficient matrix")
        fr = row + [b]
        den = 1
        for x in fr:
            den = den * x.denominator // gcd(den, x.denominator)
        aug.append([int(x * den) for x in fr])

    pivots = []  # (row, col)
    r = 0
    prev = 1
    for c in range(n):
        p = next((i for i in range(r, m) if aug[i][c]), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        piv = aug[r][c]
        for i in range(r + 1, m):
            head = aug[i][c]
            aug[i] = [(piv * aug[i][k] - head * aug[r][k]) // prev
                      for k in range(n + 1)]
        prev = piv
        pivots.append((r, c))
        r += 1
        if r == m:
            break

    consistent = True
    for row in aug[r:]:
        if not any(row[:n]) and row[n]:
            consistent = False

    pivot_cols = [c for _, c in pivots]
    free_cols = [c for c in range(n) if c not in pivot_cols]

    def back_substitute(rhs_col, free_values):
        x = [Fraction(0)] * n
        for c, v in zip(free_cols, free_values):
            x[c] = Fraction(v)
        for row, c in reversed(pivots):
            acc = Fraction(aug[row][n]) if rhs_col else Fraction(0)
            for k in range(c + 1, n):
                if aug[row][k] and x[k]:
                    acc -= aug[row][k] * x[k]
            x[c] = acc / aug[row][c]
        return tuple(x)

    particular = back_substitute(True, [0] * len(free_cols)) if consistent else None
    nullspace = []
    for idx in range(len(free_cols)):
        unit = [1 if t == idx else 0 for t in range(len(free_cols))]
        nullspace.append(back_substitute(False, unit))

    # exact re-verification against the original system
    def residual(x, want_rhs):
        for row, b in zip(exact_rows, exact_rhs):
            lhs = sum(a * v for a, v in zip(row, x))
            if lhs != (b if want_rhs else 0):
                return False
        return True

    if particular is not None and not residual(particular, True):
        raise AssertionError("elimination produced a bad particular solution")
    for v in nullspace:
        if not residual(v, False):
            raise AssertionError("elimination produced a bad nullspace vector")
    return consistent, particular, tuple(nullspace)


def fit_quasi_homogeneous(weight: int, eta_exponent: int,
                          targets: Sequence) -> FitResult:
    """Match sum_m c_m * (E2^i E4^j E6^k) * prod(1-q**n)**eta_exponent
    against prescribed coefficients.

    ``targets`` is a sequence of (q_exponent, value) pairs indexing the
    coefficient array of the shift-stripped product.  The linear system is
    solved exactly; inconsistency is reported in the result, not raised.
    """
    targets = list(targets)
    if not targets:
        raise ValueError("at least one target coefficient required")
    exps = [int(e) for e, _ in targets]
    if any(e < 0 for e in exps):
        raise ValueError("target exponents must be >= 0")
    basis = weight_monomials(weight)
    order = max(exps)
    eta_part = product_family(lambda m: eta_exponent, order)
    columns = [monomial_series(mono, order) * eta_part
               for mono in basis.monomials]
    rows = [[col.coefficient(e) for col in columns] for e in exps]
    rhs = [Fraction(v) for _, v in targets]
    consistent, particular, nullspace = solve_exact(rows, rhs)
    return FitResult(basis=basis, eta_exponent=eta_exponent,
                     particular=particular, nullspace=nullspace,
                     consistent=consistent)
