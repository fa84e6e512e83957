"""Truncated power series with exact rational coefficients.

A series is stored as coefficients c_0..c_N of a named variable together
with a global rational exponent ``shift``, representing

    q**shift * (c_0 + c_1*q + ... + c_N*q**N).

The shift carries fractional prefactors such as q**(1/24) through products
exactly; ring operations (exp, log, q*d/dq, addition of scalars) require a
zero shift.  All arithmetic is exact over ``fractions.Fraction``; nothing
here ever rounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Union

Rational = Union[int, Fraction]

#: series order above which multiplication switches to Karatsuba
KARATSUBA_THRESHOLD = 512

_KARATSUBA_BASE = 32


class SeriesError(ValueError):
    """Base class for series-arithmetic errors."""


class VariableMismatch(SeriesError):
    """Operands use different variable names."""


class ShiftMismatch(SeriesError):
    """Addition of series whose exponent shifts differ."""


class NonUnitConstantTerm(SeriesError):
    """Inversion (or a negative power) of a series with c_0 = 0."""


class NonzeroConstantTerm(SeriesError):
    """exp() of a series whose constant term is not zero."""


class ConstantTermNotOne(SeriesError):
    """log() of a series whose constant term is not one."""


class OrderExceeded(SeriesError):
    """Coefficient index outside the stored truncation order."""


def _as_fraction(value: Rational) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _schoolbook(a: list, b: list, n_out: int) -> list:
    out = [Fraction(0)] * n_out
    for i in range(min(len(a), n_out)):
        ai = a[i]
        if not ai:
            continue
        for j in range(min(len(b), n_out - i)):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def _kara_full(a: list, b: list) -> list:
    """Full product of two coefficient lists, Karatsuba recursion."""
    na, nb = len(a), len(b)
    if not na or not nb:
        return []
    if min(na, nb) <= _KARATSUBA_BASE:
        return _schoolbook(a, b, na + nb - 1)
    m = max(na, nb) // 2
    a0, a1 = a[:m], a[m:]
    b0, b1 = b[:m], b[m:]
    z0 = _kara_full(a0, b0)
    z2 = _kara_full(a1, b1)
    sa = [x + y for x, y in zip(a0, a1)] + (a1[len(a0):] or a0[len(a1):])
    sb = [x + y for x, y in zip(b0, b1)] + (b1[len(b0):] or b0[len(b1):])
    z1 = _kara_full(sa, sb)
    for k, v in enumerate(z0):
        z1[k] -= v
    for k, v in enumerate(z2):
        z1[k] -= v
    out = [Fraction(0)] * (na + nb - 1)
    for k, v in enumerate(z0):
        out[k] += v
    for k, v in enumerate(z1):
        if v:
            out[k + m] += v
    for k, v in enumerate(z2):
        out[k + 2 * m] += v
    return out


def _convolve(a: list, b: list, n_out: int) -> list:
    if n_out > KARATSUBA_THRESHOLD:
        full = _kara_full(a[:n_out], b[:n_out])
        full = full[:n_out]
        return full + [Fraction(0)] * (n_out - len(full))
    return _schoolbook(a, b, n_out)


class QSeries:
    """An exact truncated power series q**shift * sum(c_k q**k, k=0..order)."""

    __slots__ = ("var", "order", "shift", "coeffs")

    def __init__(self, coeffs: Iterable[Rational], var: str = "q",
                 shift: Rational = 0, order: int | None = None):
        cs = [_as_fraction(c) for c in coeffs]
        if order is None:
            if not cs:
                raise SeriesError("empty coefficient list and no order given")
            order = len(cs) - 1
        if order < 0:
            raise SeriesError(f"order must be >= 0, got {order}")
        if len(cs) > order + 1:
            raise SeriesError(
                f"{len(cs)} coefficients exceed order {order}; truncate explicitly")
        cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "shift", _as_fraction(shift))
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, order: int, var: str = "q") -> "QSeries":
        return cls([0], var=var, order=order)

    @classmethod
    def one(cls, order: int, var: str = "q") -> "QSeries":
        return cls([1], var=var, order=order)

    @classmethod
    def constant(cls, value: Rational, order: int, var: str = "q") -> "QSeries":
        return cls([value], var=var, order=order)

    @classmethod
    def gen(cls, order: int, var: str = "q") -> "QSeries":
        """The variable itself, truncated at the given order."""
        if order < 1:
            raise SeriesError("gen needs order >= 1")
        return cls([0, 1], var=var, order=order)

    # -- basic access ------------------------------------------------------

    def coefficient(self, k: int) -> Fraction:
        """Coefficient of q**(shift + k); raises OrderExceeded outside 0..order."""
        if k < 0 or k > self.order:
            raise OrderExceeded(
                f"coefficient {k} requested, stored order is {self.order}")
        return self.coeffs[k]

    def coefficients(self) -> tuple:
        return self.coeffs

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def truncate(self, order: int) -> "QSeries":
        """Drop to a smaller order; extension is never silent."""
        if order > self.order:
            raise OrderExceeded(
                f"cannot extend order {self.order} to {order}")
        return QSeries(self.coeffs[: order + 1], var=self.var,
                       shift=self.shift, order=order)

    def with_shift(self, shift: Rational) -> "QSeries":
        """Same coefficients, different exponent shift."""
        return QSeries(self.coeffs, var=self.var, shift=shift, order=self.order)

    def absorb_shift(self) -> "QSeries":
        """Fold a non-negative integer shift into the coefficient array."""
        if self.shift.denominator != 1 or self.shift < 0:
            raise ShiftMismatch(
                f"cannot absorb shift {self.shift} into integer exponents")
        s = int(self.shift)
        return QSeries((Fraction(0),) * s + self.coeffs, var=self.var,
                       shift=0, order=self.order + s)

    # -- ring structure ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QSeries):
            if other.var != self.var:
                raise VariableMismatch(f"{self.var!r} vs {other.var!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return QSeries([other], var=self.var, order=self.order)
        return None

    def __add__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        if self.shift != g.shift:
            raise ShiftMismatch(f"{self.shift} vs {g.shift}")
        n = min(self.order, g.order)
        return QSeries([self.coeffs[k] + g.coeffs[k] for k in range(n + 1)],
                       var=self.var, shift=self.shift, order=n)

    __radd__ = __add__

    def __neg__(self):
        return QSeries([-c for c in self.coeffs], var=self.var,
                       shift=self.shift, order=self.order)

    def __sub__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return self.__add__(-g)

    def __rsub__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return g.__add__(-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            return QSeries([c * x for x in self.coeffs], var=self.var,
                           shift=self.shift, order=self.order)
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        n = min(self.order, g.order)
        out = _convolve(list(self.coeffs), list(g.coeffs), n + 1)
        return QSeries(out, var=self.var, shift=self.shift + g.shift, order=n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if c == 0:
                raise ZeroDivisionError("division of a series by zero")
            return self * (1 / c)
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return self * g.invert()

    def invert(self) -> "QSeries":
        """Multiplicative inverse; the constant term must be a unit."""
        a = self.coeffs
        if a[0] == 0:
            raise NonUnitConstantTerm("cannot invert: constant term is zero")
        inv0 = 1 / a[0]
        b = [inv0]
        n = self.order
        for k in range(1, n + 1):
            acc = Fraction(0)
            for i in range(1, k + 1):
                if a[i]:
                    acc += a[i] * b[k - i]
            b.append(-inv0 * acc)
        return QSeries(b, var=self.var, shift=-self.shift, order=n)

    def __pow__(self, e: int) -> "QSeries":
        if not isinstance(e, int):
            return NotImplemented
        if e == 0:
            return QSeries.one(self.order, var=self.var)
        base = self.invert() if e < 0 else self
        k = abs(e)
        result = None
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- transcendental maps -----------------------------------------------

    def exp(self) -> "QSeries":
        """exp of a series with zero constant term and zero shift."""
        if self.shift != 0:
            raise ShiftMismatch("exp requires shift 0")
        f = self.coeffs
        if f[0] != 0:
            raise NonzeroConstantTerm("exp requires constant term 0")
        n = self.order
        g = [Fraction(1)]
        for m in range(1, n + 1):
            acc = Fraction(0)
            for k in range(1, m + 1):
                if f[k]:
                    acc += k * f[k] * g[m - k]
            g.append(acc / m)
        return QSeries(g, var=self.var, order=n)

    def log(self) -> "QSeries":
        """log of a series with constant term one and zero shift."""
        if self.shift != 0:
            raise ShiftMismatch("log requires shift 0")
        f = self.coeffs
        if f[0] != 1:
            raise ConstantTermNotOne("log requires constant term 1")
        n = self.order
        h = [Fraction(0)]
        for m in range(1, n + 1):
            acc = Fraction(0)
            for k in range(1, m):
                if h[k] and f[m - k]:
                    acc += k * h[k] * f[m - k]
            h.append(f[m] - acc / m)
        return QSeries(h, var=self.var, order=n)

    def q_d_dq(self) -> "QSeries":
        """The operator q*d/dq: c_k -> k*c_k.  Needs shift 0."""
        if self.shift != 0:
            raise ShiftMismatch("q*d/dq requires shift 0")
        return QSeries([k * c for k, c in enumerate(self.coeffs)],
                       var=self.var, order=self.order)

    # -- comparison and display --------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        if self.var != other.var or self.shift != other.shift:
            return False
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    __hash__ = None

    def _term(self, k: int, c: Fraction) -> str:
        if k == 0:
            return str(c)
        v = self.var if k == 1 else f"{self.var}^{k}"
        if c == 1:
            return v
        if c == -1:
            return f"-{v}"
        return f"{c}*{v}"

    def __str__(self):
        terms = [self._term(k, c) for k, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        body = f"{body} + O({self.var}^{self.order + 1})"
        if self.shift:
            return f"{self.var}^({self.shift})*({body})"
        return body

    def __repr__(self):
        cs = ", ".join(str(c) for c in self.coeffs[:8])
        if self.order >= 8:
            cs += ", ..."
        return (f"QSeries({self.var!r}, order={self.order}, "
                f"shift={self.shift}, coeffs=({cs}))")

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        """Schema: numerator/denominator pairs as decimal strings."""
        return {
            "var": self.var,
            "shift": [str(self.shift.numerator), str(self.shift.denominator)],
            "order": self.order,
            "coeffs": [[str(c.numerator), str(c.denominator)]
                       for c in self.coeffs],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "QSeries":
        shift = Fraction(int(data["shift"][0]), int(data["shift"][1]))
        coeffs = [Fraction(int(num), int(den)) for num, den in data["coeffs"]]
        return cls(coeffs, var=data["var"], shift=shift, order=data["order"])


def int_binomial(e: int, j: int) -> int:
    """binomial(e, j) for any integer e, non-negative j."""
    if j < 0:
        raise ValueError("lower index must be non-negative")
    if e >= 0:
        return comb(e, j)
    return (-1) ** j * comb(-e + j - 1, j)


def product_family(exponent: Callable[[int], int], order: int,
                   var: str = "q") -> QSeries:
    """prod_{m=1..order} (1 - q**m)**exponent(m), truncated at ``order``.

    Each factor is expanded by the binomial theorem (sparse in q**m) and
    multiplied in; exponents must be integers.
    """
    if order < 0:
        raise SeriesError(f"order must be >= 0, got {order}")
    acc = [Fraction(1)] + [Fraction(0)] * order
    for m in range(1, order + 1):
        e = exponent(m)
        if not isinstance(e, int):
            raise TypeError(f"exponent({m}) = {e!r} is not an integer")
        if e == 0:
            continue
        # factor coefficients at q**(m*j): (-1)**j * binomial(e, j)
        terms = [(m * j, (-1) ** j * int_binomial(e, j))
                 for j in range(1, order // m + 1)]
        new = list(acc)
        for off, fc in terms:
            for k in range(order - off + 1):
                if acc[k]:
                    new[k + off] += fc * acc[k]
        acc = new
    return QSeries(acc, var=var, order=order)
