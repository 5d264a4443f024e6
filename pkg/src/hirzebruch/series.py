"""Exact truncated formal power series over a commutative Q-algebra.

Coefficients are either :class:`fractions.Fraction` or :class:`ParamPolynomial`
(polynomials in a formal parameter ``y``).  Every value is immutable and every
operation is exact.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest
from typing import Iterable, Sequence, Union

__all__ = [
    "SeriesError",
    "ParamPolynomial",
    "TruncatedSeries",
    "as_rational",
    "coefficient",
    "generalized_binomial",
    "series_add",
    "series_compose",
    "series_div_unit",
    "series_exp",
    "series_log",
    "series_mul",
    "series_pow",
]


class SeriesError(ValueError):
    """Raised when a series operation's precondition fails."""


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def _coerce(value):
    if isinstance(value, ParamPolynomial):
        return value
    return as_rational(value)


class ParamPolynomial:
    """Polynomial in a formal parameter ``y`` with rational coefficients.

    ``ParamPolynomial([a0, a1, a2])`` is ``a0 + a1*y + a2*y**2``.  Trailing zero
    coefficients are stripped, so the zero polynomial has no coefficients.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def y(cls) -> ParamPolynomial:
        return cls([0, 1])

    @classmethod
    def _lift(cls, other) -> ParamPolynomial:
        if isinstance(other, ParamPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return cls([other])
        return NotImplemented

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        other = ParamPolynomial._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if len(self._coeffs) <= 1:
            return hash(self[0])
        return hash(self._coeffs)

    def __add__(self, other):
        other = ParamPolynomial._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return ParamPolynomial(
            a + b for a, b in zip_longest(self._coeffs, other._coeffs, fillvalue=0)
        )

    __radd__ = __add__

    def __neg__(self) -> ParamPolynomial:
        return ParamPolynomial(-a for a in self._coeffs)

    def __sub__(self, other):
        other = ParamPolynomial._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = ParamPolynomial._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = ParamPolynomial._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._coeffs or not other._coeffs:
            return ParamPolynomial()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a:
                for j, b in enumerate(other._coeffs):
                    out[i + j] += a * b
        return ParamPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, m: int) -> ParamPolynomial:
        if not isinstance(m, int) or m < 0:
            raise ValueError("ParamPolynomial powers must be non-negative integers")
        result, base = ParamPolynomial([1]), self
        while m:
            if m & 1:
                result = result * base
            base = base * base
            m >>= 1
        return result

    def inverse(self) -> ParamPolynomial:
        """Multiplicative inverse; only non-zero constants are units."""
        if len(self._coeffs) != 1:
            raise SeriesError(f"{self} is not a unit in Q[y]")
        return ParamPolynomial([1 / self._coeffs[0]])

    def __call__(self, y) -> Fraction:
        y = as_rational(y)
        acc = Fraction(0)
        for a in reversed(self._coeffs):
            acc = acc * y + a
        return acc

    def derivative(self, times: int = 1) -> ParamPolynomial:
        cs = list(self._coeffs)
        for _ in range(times):
            cs = [i * c for i, c in enumerate(cs)][1:]
        return ParamPolynomial(cs)

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            mag = abs(a)
            if i == 0:
                body = str(mag)
            else:
                ymon = "y" if i == 1 else f"y^{i}"
                body = ymon if mag == 1 else f"{mag}*{ymon}"
            sign = "-" if a < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"ParamPolynomial({[str(c) for c in self._coeffs]})"


Coefficient = Union[Fraction, ParamPolynomial]


def _is_zero(c) -> bool:
    return not c


def _inverse(c) -> Coefficient:
    if isinstance(c, ParamPolynomial):
        return c.inverse()
    if c == 0:
        raise SeriesError("constant term 0 is not invertible")
    return 1 / c


class TruncatedSeries:
    """Formal power series ``sum a_i x^i`` known exactly for ``0 <= i <= order``."""

    __slots__ = ("_coeffs", "_order")

    def __init__(self, coeffs: Sequence = (), order: int | None = None):
        cs = [_coerce(c) for c in coeffs]
        if order is None:
            order = max(len(cs) - 1, 0)
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        cs = cs[: order + 1]
        zero = Fraction(0)
        # one coefficient ring per series
        if any(isinstance(c, ParamPolynomial) for c in cs):
            cs = [ParamPolynomial._lift(c) for c in cs]
            zero = ParamPolynomial()
        cs += [zero] * (order + 1 - len(cs))
        self._coeffs = tuple(cs)
        self._order = order

    @classmethod
    def variable(cls, order: int) -> TruncatedSeries:
        return cls([0, 1], order)

    @classmethod
    def constant(cls, c, order: int) -> TruncatedSeries:
        return cls([c], order)

    @property
    def coeffs(self) -> tuple[Coefficient, ...]:
        return self._coeffs

    @property
    def order(self) -> int:
        return self._order

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self._order:
            raise SeriesError(
                f"cannot extend a series known to order {self._order} to order {order}"
            )
        return TruncatedSeries(self._coeffs[: order + 1], order)

    def __getitem__(self, d: int) -> Coefficient:
        return coefficient(self, d)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self._order, other._order)
        return all(self._coeffs[i] == other._coeffs[i] for i in range(n + 1))

    __hash__ = None  # equality depends on the shared truncation order

    def __add__(self, other):
        return series_add(self, _as_series(other, self._order))

    __radd__ = __add__

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries([-c for c in self._coeffs], self._order)

    def __sub__(self, other):
        return series_add(self, -_as_series(other, self._order))

    def __rsub__(self, other):
        return series_add(_as_series(other, self._order), -self)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        c = _coerce(other)
        return TruncatedSeries([c * a for a in self._coeffs], self._order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_div_unit(self, other)
        inv = _inverse(_coerce(other))
        return TruncatedSeries([inv * a for a in self._coeffs], self._order)

    def __pow__(self, m) -> TruncatedSeries:
        return series_pow(self, m)

    def shift_down(self) -> TruncatedSeries:
        """Divide by ``x``; the constant term must vanish.  Loses one order."""
        if not _is_zero(self._coeffs[0]):
            raise SeriesError(
                f"cannot divide by x: constant term is {self._coeffs[0]}"
            )
        if self._order == 0:
            raise SeriesError("cannot divide an order-0 series by x")
        return TruncatedSeries(self._coeffs[1:], self._order - 1)

    def __repr__(self) -> str:
        terms = [f"({c})*x^{i}" for i, c in enumerate(self._coeffs) if not _is_zero(c)]
        return f"TruncatedSeries({' + '.join(terms) or '0'} + O(x^{self._order + 1}))"


def _as_series(value, order: int) -> TruncatedSeries:
    if isinstance(value, TruncatedSeries):
        return value
    return TruncatedSeries.constant(value, order)


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.order, b.order)
    return TruncatedSeries([a.coeffs[i] + b.coeffs[i] for i in range(n + 1)], n)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    out = []
    for d in range(n + 1):
        acc = ac[0] * bc[d]
        for i in range(1, d + 1):
            if not _is_zero(ac[i]):
                acc = acc + ac[i] * bc[d - i]
        out.append(acc)
    return TruncatedSeries(out, n)


def series_div_unit(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Quotient ``a / b``; ``b`` must have an invertible constant term."""
    n = min(a.order, b.order)
    b0 = b.coeffs[0]
    try:
        inv = _inverse(b0)
    except SeriesError as exc:
        raise SeriesError(f"divisor has non-invertible constant term {b0}") from exc
    ac, bc = a.coeffs, b.coeffs
    q: list = []
    for d in range(n + 1):
        acc = ac[d]
        for i in range(1, d + 1):
            if not _is_zero(bc[i]):
                acc = acc - bc[i] * q[d - i]
        q.append(inv * acc)
    return TruncatedSeries(q, n)


def series_exp(f: TruncatedSeries) -> TruncatedSeries:
    c0 = f.coeffs[0]
    if not _is_zero(c0):
        raise SeriesError(f"exp requires zero constant term, got {c0}")
    fc, n = f.coeffs, f.order
    e: list = [c0 + 1]
    for d in range(1, n + 1):
        acc = 0
        for k in range(1, d + 1):
            if not _is_zero(fc[k]):
                acc = acc + k * fc[k] * e[d - k]
        e.append(Fraction(1, d) * acc)
    return TruncatedSeries(e, n)


def series_log(f: TruncatedSeries) -> TruncatedSeries:
    c0 = f.coeffs[0]
    if not c0 == 1:
        raise SeriesError(f"log requires constant term 1, got {c0}")
    fc, n = f.coeffs, f.order
    log: list = [c0 - 1]
    for d in range(1, n + 1):
        acc = 0
        for k in range(1, d):
            if not _is_zero(log[k]):
                acc = acc + k * log[k] * fc[d - k]
        log.append(fc[d] - Fraction(1, d) * acc)
    return TruncatedSeries(log, n)


def series_compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """``f(g(x))``; requires ``g(0) = 0``."""
    g0 = g.coeffs[0]
    if not _is_zero(g0):
        raise SeriesError(f"compose requires inner constant term 0, got {g0}")
    n = min(f.order, g.order)
    acc = TruncatedSeries.constant(f.coeffs[n], n)
    for i in range(n - 1, -1, -1):
        acc = series_mul(acc, g) + TruncatedSeries.constant(f.coeffs[i], n)
    return acc


def series_pow(f: TruncatedSeries, m) -> TruncatedSeries:
    """``f**m`` for integer ``m`` or rational ``m`` (the latter needs ``f(0) = 1``)."""
    if isinstance(m, Fraction) and m.denominator == 1:
        m = m.numerator
    if isinstance(m, int):
        if m < 0:
            return series_pow(series_div_unit(TruncatedSeries.constant(1, f.order), f), -m)
        result = TruncatedSeries.constant(1, f.order)
        base = f
        while m:
            if m & 1:
                result = series_mul(result, base)
            base = series_mul(base, base)
            m >>= 1
        return result
    m = as_rational(m)
    c0 = f.coeffs[0]
    if not c0 == 1:
        raise SeriesError(f"rational power requires constant term 1, got {c0}")
    return series_exp(series_log(f) * m)


def coefficient(f: TruncatedSeries, d: int) -> Coefficient:
    if d < 0:
        raise SeriesError(f"degree must be non-negative, got {d}")
    if d > f.order:
        raise SeriesError(
            f"coefficient of degree {d} requested from a series truncated at order {f.order}"
        )
    return f.coeffs[d]


def generalized_binomial(j, n: int) -> Fraction:
    """``j (j-1) ... (j-n+1) / n!`` for rational ``j``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    j = as_rational(j)
    num = Fraction(1)
    den = 1
    for i in range(n):
        num *= j - i
        den *= i + 1
    return num / den
