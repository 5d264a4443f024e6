"""Hirzebruch multiplicative sequences and the built-in genera.

A genus is given by a normalized characteristic power series ``Q(x)``.  Its
multiplicative sequence ``K_0, K_1, ...`` expresses ``prod_i Q(x_i)`` in the
elementary symmetric functions of the formal roots ``x_i``, i.e. in Chern
classes ``c_1, c_2, ...`` (or, for even ``Q``, in Pontrjagin classes
``p_1, p_2, ...`` through the squared roots).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Callable, Iterable, Mapping, Sequence

from .series import (
    ParamPolynomial,
    SeriesError,
    TruncatedSeries,
    as_rational,
    series_compose,
    series_div_unit,
    series_exp,
    series_log,
)

__all__ = [
    "ClassValueError",
    "GradedClassPoly",
    "Genus",
    "LinearRelation",
    "ahat_genus",
    "builtin_genus",
    "c1cn1_constraint",
    "c1cn1_relation",
    "chi_y_genus",
    "chi_y_series_genus",
    "evaluate",
    "k_polynomials",
    "k_polynomials_pontrjagin",
    "l_genus",
    "todd_genus",
]

CHERN = "chern"
PONTRJAGIN = "pontrjagin"
_PREFIX = {CHERN: "c", PONTRJAGIN: "p"}

DEFAULT_ORDER = 18


class ClassValueError(ValueError):
    """A class polynomial was evaluated without a value for one of its variables."""


def _strip(exps: Iterable[int]) -> tuple[int, ...]:
    e = list(exps)
    while e and e[-1] == 0:
        e.pop()
    return tuple(e)


def _weight(exps: tuple[int, ...]) -> int:
    return sum((i + 1) * e for i, e in enumerate(exps))


def _grlex_key(exps: tuple[int, ...], width: int):
    padded = exps + (0,) * (width - len(exps))
    return (sum(padded), tuple(-e for e in padded))


class GradedClassPoly:
    """Polynomial in weighted class variables with exact coefficients.

    The variable with index ``i`` (``c_i`` or ``p_i``) has weight ``i``.
    Monomials are exponent vectors with trailing zeros stripped; zero
    coefficients are never stored.
    """

    __slots__ = ("kind", "_terms")

    def __init__(self, kind: str, terms: Mapping | None = None):
        if kind not in _PREFIX:
            raise ValueError(f"unknown variable kind {kind!r}")
        self.kind = kind
        clean: dict[tuple[int, ...], object] = {}
        for exps, coef in (terms or {}).items():
            key = _strip(exps)
            if any(e < 0 for e in key):
                raise ValueError(f"negative exponent in {exps}")
            if not isinstance(coef, ParamPolynomial):
                coef = as_rational(coef)
            coef = clean.get(key, 0) + coef
            if coef:
                clean[key] = coef
            else:
                clean.pop(key, None)
        self._terms = clean

    @classmethod
    def constant(cls, kind: str, value) -> GradedClassPoly:
        return cls(kind, {(): value})

    @classmethod
    def variable(cls, kind: str, index: int) -> GradedClassPoly:
        if index < 1:
            raise ValueError("class variables are indexed from 1")
        return cls(kind, {(0,) * (index - 1) + (1,): 1})

    @property
    def terms(self) -> dict[tuple[int, ...], object]:
        return dict(self._terms)

    @property
    def width(self) -> int:
        return max((len(e) for e in self._terms), default=0)

    def coefficient(self, exps: Sequence[int]):
        return self._terms.get(_strip(exps), Fraction(0))

    def weights(self) -> set[int]:
        return {_weight(e) for e in self._terms}

    def is_homogeneous(self, weight: int) -> bool:
        return all(_weight(e) == weight for e in self._terms)

    def component(self, weight: int) -> GradedClassPoly:
        return GradedClassPoly(
            self.kind, {e: c for e, c in self._terms.items() if _weight(e) == weight}
        )

    def truncate(self, max_weight: int) -> GradedClassPoly:
        return GradedClassPoly(
            self.kind, {e: c for e, c in self._terms.items() if _weight(e) <= max_weight}
        )

    def map_coefficients(self, fn: Callable) -> GradedClassPoly:
        return GradedClassPoly(self.kind, {e: fn(c) for e, c in self._terms.items()})

    def _check(self, other: GradedClassPoly) -> None:
        if other.kind != self.kind:
            raise ValueError(f"cannot combine {self.kind} and {other.kind} polynomials")

    def _lift(self, other) -> GradedClassPoly:
        if isinstance(other, GradedClassPoly):
            self._check(other)
            return other
        return GradedClassPoly.constant(self.kind, other)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, GradedClassPoly):
            return self.kind == other.kind and self._terms == other._terms
        if isinstance(other, (int, Fraction, ParamPolynomial)):
            return self._terms == GradedClassPoly.constant(self.kind, other)._terms
        return NotImplemented

    __hash__ = None

    def __add__(self, other) -> GradedClassPoly:
        other = self._lift(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return GradedClassPoly(self.kind, terms)

    __radd__ = __add__

    def __neg__(self) -> GradedClassPoly:
        return GradedClassPoly(self.kind, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> GradedClassPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> GradedClassPoly:
        return self._lift(other) + (-self)

    def mul(self, other, max_weight: int | None = None) -> GradedClassPoly:
        """Product, optionally dropping monomials of weight above ``max_weight``."""
        other = self._lift(other)
        terms: dict[tuple[int, ...], object] = {}
        for e1, a in self._terms.items():
            w1 = _weight(e1)
            for e2, b in other._terms.items():
                if max_weight is not None and w1 + _weight(e2) > max_weight:
                    continue
                n = max(len(e1), len(e2))
                key = tuple(
                    (e1[i] if i < len(e1) else 0) + (e2[i] if i < len(e2) else 0)
                    for i in range(n)
                )
                terms[key] = terms.get(key, 0) + a * b
        return GradedClassPoly(self.kind, terms)

    def __mul__(self, other) -> GradedClassPoly:
        return self.mul(other)

    __rmul__ = __mul__

    def __pow__(self, m: int) -> GradedClassPoly:
        if not isinstance(m, int) or m < 0:
            raise ValueError("powers must be non-negative integers")
        result = GradedClassPoly.constant(self.kind, 1)
        for _ in range(m):
            result = result * self
        return result

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        """Terms in graded lexicographic order on padded exponent vectors."""
        width = self.width
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0], width))

    def monomial_str(self, exps: tuple[int, ...]) -> str:
        prefix = _PREFIX[self.kind]
        parts = []
        for i, e in enumerate(exps):
            if e == 1:
                parts.append(f"{prefix}{i + 1}")
            elif e > 1:
                parts.append(f"{prefix}{i + 1}^{e}")
        return "*".join(parts) or "1"

    def to_str(self) -> str:
        """Render with the common rational content factored out when possible."""
        if not self._terms:
            return "0"
        items = self.sorted_terms()
        rational = all(isinstance(c, Fraction) for _, c in items)
        if rational:
            den = reduce(lcm, (c.denominator for _, c in items), 1)
            num = reduce(gcd, (c.numerator * (den // c.denominator) for _, c in items), 0)
            content = Fraction(num, den)
            body = _join_terms(
                [(c / content, self.monomial_str(e)) for e, c in items], rational=True
            )
            if content == 1:
                return body
            if len(items) == 1:
                return _join_terms([(c, self.monomial_str(e)) for e, c in items], True)
            return f"({content})*({body})"
        return _join_terms([(c, self.monomial_str(e)) for e, c in items], rational=False)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"GradedClassPoly({self.kind}, {self.to_str()})"


def _join_terms(items, rational: bool) -> str:
    out = ""
    for idx, (c, mono) in enumerate(items):
        if rational:
            neg = c < 0
            mag = -c if neg else c
            body = mono if mag == 1 and mono != "1" else (
                str(mag) if mono == "1" else f"{mag}*{mono}"
            )
        else:
            neg = False
            body = f"({c})" if mono == "1" else f"({c})*{mono}"
        if idx == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out


@dataclass(frozen=True, eq=False)
class Genus:
    """A multiplicative genus given by its normalized characteristic series."""

    name: str
    char_series: TruncatedSeries

    def __post_init__(self):
        if not self.char_series.coeffs[0] == 1:
            raise SeriesError(
                f"characteristic series of {self.name!r} must have constant term 1, "
                f"got {self.char_series.coeffs[0]}"
            )

    @property
    def is_even(self) -> bool:
        return all(not c for c in self.char_series.coeffs[1::2])


# write-once cache: (genus name, kind, coefficient prefix) -> (K_0, ..., K_m)
_K_CACHE: dict[tuple, tuple[GradedClassPoly, ...]] = {}
_K_LOCK = threading.Lock()


def _power_sums(kind: str, m: int) -> list[GradedClassPoly]:
    """Power sums of the formal roots in terms of elementary symmetric variables."""
    e = [GradedClassPoly.constant(kind, 1)] + [
        GradedClassPoly.variable(kind, i) for i in range(1, m + 1)
    ]
    p: list[GradedClassPoly] = [GradedClassPoly(kind)]
    for k in range(1, m + 1):
        acc = ((-1) ** (k - 1) * k) * e[k]
        for i in range(1, k):
            acc = acc + ((-1) ** (i - 1)) * (e[i] * p[k - i])
        p.append(acc)
    return p


def _multiplicative_sequence(name: str, kind: str, f: TruncatedSeries, m: int):
    key = (name, kind, tuple(f.coeffs[: m + 1]))
    cached = _K_CACHE.get(key)
    if cached is not None:
        return cached
    logf = series_log(f)
    p = _power_sums(kind, m)
    # weight-j part of sum_i log f(root_i)
    s = [GradedClassPoly(kind)] + [logf.coeffs[j] * p[j] for j in range(1, m + 1)]
    k_polys = [GradedClassPoly.constant(kind, f.coeffs[0])]  # 1 in the coefficient ring
    for j in range(1, m + 1):
        acc = GradedClassPoly(kind)
        for i in range(1, j + 1):
            if s[i]:
                acc = acc + i * (s[i] * k_polys[j - i])
        k_polys.append(Fraction(1, j) * acc)
    result = tuple(k_polys)
    with _K_LOCK:
        return _K_CACHE.setdefault(key, result)


def k_polynomials(genus: Genus, up_to: int) -> list[GradedClassPoly]:
    """``[K_0, ..., K_up_to]`` in the Chern classes ``c_1, c_2, ...``."""
    if up_to < 0:
        raise ValueError("degree must be non-negative")
    if up_to > genus.char_series.order:
        raise SeriesError(
            f"{genus.name} series is known to order {genus.char_series.order}, "
            f"degree {up_to} requested"
        )
    return list(
        _multiplicative_sequence(genus.name, CHERN, genus.char_series.truncate(up_to), up_to)
    )


def k_polynomials_pontrjagin(genus: Genus, up_to: int) -> list[GradedClassPoly]:
    """``[K_0, ..., K_up_to]`` in Pontrjagin classes; ``K_j`` has real degree ``4j``."""
    if not genus.is_even:
        raise SeriesError(f"{genus.name} series is not even; Pontrjagin form undefined")
    if up_to < 0:
        raise ValueError("degree must be non-negative")
    if 2 * up_to > genus.char_series.order:
        raise SeriesError(
            f"{genus.name} series is known to order {genus.char_series.order}, "
            f"Pontrjagin degree {up_to} needs order {2 * up_to}"
        )
    # Q(x) = P(x^2); the squared roots have the Pontrjagin classes as elementary symmetric functions
    squared = TruncatedSeries(genus.char_series.coeffs[0 : 2 * up_to + 1 : 2], up_to)
    return list(_multiplicative_sequence(genus.name, PONTRJAGIN, squared, up_to))


def _value_for(values, index: int, prefix: str):
    if isinstance(values, Mapping):
        for key in (index, f"{prefix}{index}"):
            if key in values:
                return values[key]
        raise ClassValueError(f"no value supplied for {prefix}{index}")
    if 1 <= index <= len(values):
        return values[index - 1]
    raise ClassValueError(f"no value supplied for {prefix}{index}")


def evaluate(poly: GradedClassPoly, class_values):
    """Substitute values for the class variables.

    ``class_values`` is either a mapping keyed by index (``1``) or name
    (``"c1"``), or a sequence ``(c_1, c_2, ...)``.
    """
    prefix = _PREFIX[poly.kind]
    total = Fraction(0)
    for exps, coef in poly.terms.items():
        term = coef
        for i, e in enumerate(exps):
            if e:
                term = term * as_rational(_value_for(class_values, i + 1, prefix)) ** e
        total = total + term
    return total


# --- built-in genera -------------------------------------------------------


def _exp_series(scale, order: int) -> TruncatedSeries:
    return series_exp(TruncatedSeries([0, scale], order))


def todd_genus(order: int = DEFAULT_ORDER) -> Genus:
    """Todd genus, ``x / (1 - e^{-x})``."""
    # (1 - e^{-x}) / x, inverted
    denom = (1 - _exp_series(-1, order + 1)).shift_down()
    return Genus("todd", series_div_unit(TruncatedSeries.constant(1, order), denom))


def _sinhc(scale: Fraction, order: int) -> TruncatedSeries:
    # sinh(s x) / (s x)
    e = _exp_series(scale, order + 1)
    e_inv = _exp_series(-scale, order + 1)
    return ((e - e_inv) * Fraction(1, 2)).shift_down() / scale


def ahat_genus(order: int = DEFAULT_ORDER) -> Genus:
    """A-hat genus, ``(x/2) / sinh(x/2)``."""
    one = TruncatedSeries.constant(1, order)
    return Genus("ahat", series_div_unit(one, _sinhc(Fraction(1, 2), order)))


def l_genus(order: int = DEFAULT_ORDER) -> Genus:
    """Hirzebruch L-genus, ``x / tanh(x)``."""
    e, e_inv = _exp_series(1, order), _exp_series(-1, order)
    cosh = (e + e_inv) * Fraction(1, 2)
    return Genus("L", series_div_unit(cosh, _sinhc(Fraction(1), order)))


def chi_y_series_genus(order: int = DEFAULT_ORDER) -> Genus:
    """The chi_y genus, ``x(1+y) / (1 - e^{-x(1+y)}) - x y`` over ``Q[y]``.

    Normalized so that ``y = 0`` gives Todd, ``y = 1`` gives L and ``y = -1``
    gives the Euler class.
    """
    y = ParamPolynomial.y()
    todd = todd_genus(order).char_series
    lifted = TruncatedSeries([ParamPolynomial([c]) for c in todd.coeffs], order)
    scaled = series_compose(lifted, TruncatedSeries([ParamPolynomial(), 1 + y], order))
    return Genus("chi_y", scaled - TruncatedSeries([ParamPolynomial(), y], order))


_BUILTIN = {
    "todd": todd_genus,
    "ahat": ahat_genus,
    "L": l_genus,
    "chi-y": chi_y_series_genus,
    "chi_y": chi_y_series_genus,
}


def builtin_genus(name: str, order: int = DEFAULT_ORDER) -> Genus:
    try:
        factory = _BUILTIN[name]
    except KeyError:
        raise ValueError(
            f"unknown genus {name!r}; choose from todd, ahat, L, chi-y"
        ) from None
    return factory(order)


def chi_y_genus(n: int) -> GradedClassPoly:
    """Degree-``n`` K-polynomial of the chi_y genus; coefficients lie in ``Q[y]``."""
    if n < 1:
        raise ValueError("dimension must be at least 1")
    return k_polynomials(chi_y_series_genus(max(n, 1)), n)[n]


@dataclass(frozen=True)
class LinearRelation:
    """``coeff_c1cn1 * c1c_{n-1} + coeff_cn * c_n = chi_y''(-1)``."""

    n: int
    coeff_c1cn1: Fraction
    coeff_cn: Fraction

    def __call__(self, c1cn1, cn) -> Fraction:
        return self.coeff_c1cn1 * as_rational(c1cn1) + self.coeff_cn * as_rational(cn)


def _c1cn1_exps(n: int) -> tuple[int, ...]:
    e = [0] * n
    e[0] += 1
    e[n - 2] += 1
    return _strip(e)


def c1cn1_relation(n: int) -> LinearRelation:
    """Second ``y``-derivative at ``y = -1`` of the universal chi_y polynomial.

    Raises ``ValueError`` if that derivative involves monomials other than
    ``c_1 c_{n-1}`` and ``c_n``.
    """
    if n < 2:
        raise ValueError("the c1*c_{n-1} relation needs n >= 2")
    second = chi_y_genus(n).map_coefficients(lambda c: c.derivative(2)(-1))
    target = _c1cn1_exps(n)
    top = _strip([0] * (n - 1) + [1])
    extra = {e: c for e, c in second.terms.items() if e not in (target, top)}
    if extra:
        shown = ", ".join(second.monomial_str(e) for e in extra)
        raise ValueError(f"second derivative at y=-1 involves unexpected monomials: {shown}")
    return LinearRelation(n, second.coefficient(target), second.coefficient(top))


def c1cn1_constraint(n: int, hodge) -> Fraction:
    """Value of the Chern number ``c_1 c_{n-1}`` forced by the Hodge numbers."""
    euler = hodge.euler_number()
    if n == 1:
        # c_1 c_0 is the monomial c_1 = c_n itself
        return Fraction(euler)
    rel = c1cn1_relation(n)
    if rel.coeff_c1cn1 == 0:
        raise ValueError(f"degenerate relation for n={n}: c1*c_{{n-1}} has coefficient 0")
    return (hodge.chi_y_second_derivative_at_minus_one() - rel.coeff_cn * euler) / rel.coeff_c1cn1
