"""Cohomological model of a Kähler manifold with the integral cohomology ring of CP^n.

Throughout, ``H*(M; Z) = Z[g] / (g^{n+1})`` with ``g`` the positive generator
and ``∫ g^n = 1``, so every characteristic class is an integer multiple of a
power of ``g`` and every characteristic number is an integer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .series import ParamPolynomial

__all__ = [
    "CPnModel",
    "HodgeTable",
    "ModelError",
    "binomial_chern",
    "chern_to_pontrjagin",
    "euler_characteristic",
    "infer_hodge",
    "standard_pontrjagin",
    "todd_from_hodge",
]


class ModelError(ValueError):
    """Inconsistent or malformed manifold data."""


@dataclass(frozen=True)
class HodgeTable:
    """Hodge numbers ``h^{p,q}``, stored as an ``(n+1) x (n+1)`` tuple of rows."""

    n: int
    h: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.h) != self.n + 1 or any(len(row) != self.n + 1 for row in self.h):
            raise ModelError(f"Hodge table for n={self.n} must be {self.n + 1}x{self.n + 1}")
        for p, row in enumerate(self.h):
            for q, v in enumerate(row):
                if v < 0:
                    raise ModelError(f"h^{{{p},{q}}} = {v} is negative")
                if v != self.h[q][p]:
                    raise ModelError(f"Hodge symmetry fails at ({p},{q})")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> HodgeTable:
        return cls(len(rows) - 1, tuple(tuple(int(v) for v in row) for row in rows))

    def __getitem__(self, pq: tuple[int, int]) -> int:
        p, q = pq
        return self.h[p][q]

    def betti(self, i: int) -> int:
        return sum(self.h[p][i - p] for p in range(self.n + 1) if 0 <= i - p <= self.n)

    def betti_numbers(self) -> list[int]:
        return [self.betti(i) for i in range(2 * self.n + 1)]

    def euler_number(self) -> int:
        return sum((-1) ** i * b for i, b in enumerate(self.betti_numbers()))

    def chi_p(self, p: int) -> int:
        """Holomorphic Euler characteristic ``chi(Omega^p) = sum_q (-1)^q h^{p,q}``."""
        return sum((-1) ** q * v for q, v in enumerate(self.h[p]))

    def chi_y(self) -> ParamPolynomial:
        """``sum_p chi(Omega^p) y^p``."""
        return ParamPolynomial(self.chi_p(p) for p in range(self.n + 1))

    def chi_y_second_derivative_at_minus_one(self) -> Fraction:
        return self.chi_y().derivative(2)(-1)


def infer_hodge(n: int) -> HodgeTable:
    """The only Hodge table compatible with the Betti numbers of CP^n.

    Kähler forces ``h^{p,p} >= 1`` and ``sum_{p+q=i} h^{p,q} = b_i``, and
    ``b_i`` is 1 for even ``i`` and 0 for odd ``i``.
    """
    if n < 1:
        raise ModelError("n must be at least 1")
    return HodgeTable(n, tuple(tuple(int(p == q) for q in range(n + 1)) for p in range(n + 1)))


def euler_characteristic(n: int) -> int:
    if n < 1:
        raise ModelError("n must be at least 1")
    return n + 1


def todd_from_hodge(hodge: HodgeTable) -> Fraction:
    return Fraction(sum((-1) ** q * hodge[0, q] for q in range(hodge.n + 1)))


def standard_pontrjagin(n: int) -> tuple[int, ...]:
    """``(p_1, ..., p_{n//2})`` for ``p = (1 + g^2)^{n+1}``."""
    if n < 1:
        raise ModelError("n must be at least 1")
    return tuple(comb(n + 1, i) for i in range(1, n // 2 + 1))


def binomial_chern(n: int, k: int | None = None) -> tuple[int, ...]:
    """Chern vector of ``(1+g)^{n+1}``; with ``k`` given, ``c_1`` is replaced by ``k``."""
    c = [comb(n + 1, i) for i in range(1, n + 1)]
    if k is not None:
        c[0] = k
    return tuple(c)


def chern_to_pontrjagin(c: Sequence, n: int | None = None) -> tuple:
    """Pontrjagin classes of a complex bundle from its Chern classes.

    ``(-1)^i p_i = sum_{a+b=2i} (-1)^a c_a c_b`` with ``c_0 = 1``.  Entries of
    ``c`` may be integers or any ring elements (e.g. class polynomials).  With
    ``n`` given, classes beyond real degree ``2n`` are dropped.
    """
    if n is None:
        n = len(c)
    if len(c) != n:
        raise ModelError(f"expected {n} Chern classes, got {len(c)}")
    cs = [1, *c]

    def ch(i):
        return cs[i] if i <= n else 0

    out = []
    for i in range(1, n // 2 + 1):
        acc = ch(i) * ch(i)
        for a in range(0, i):
            acc = acc + 2 * (-1) ** (a + i) * ch(a) * ch(2 * i - a)
        out.append(acc)
    return tuple(out)


@dataclass(frozen=True)
class CPnModel:
    """Characteristic-class data of a Kähler manifold with the cohomology ring of CP^n.

    ``k`` is the multiplier of ``c_1 = k g``; ``pontrjagin[i-1]`` is the
    multiplier of ``p_i``; ``chern`` optionally fixes every ``c_i``.
    """

    n: int
    k: int
    pontrjagin: tuple[int, ...]
    chern: tuple[int, ...] | None = None
    simply_connected: bool = False
    kaehler: bool = True
    hodge: HodgeTable = field(default=None)

    def __post_init__(self):
        if self.n < 1:
            raise ModelError("n must be at least 1")
        if not self.kaehler:
            raise ModelError("only Kähler models are supported")
        object.__setattr__(self, "pontrjagin", tuple(int(v) for v in self.pontrjagin))
        if len(self.pontrjagin) != self.n // 2:
            raise ModelError(
                f"n={self.n} needs {self.n // 2} Pontrjagin multipliers, got {len(self.pontrjagin)}"
            )
        if self.hodge is None:
            object.__setattr__(self, "hodge", infer_hodge(self.n))
        elif self.hodge.n != self.n:
            raise ModelError("Hodge table dimension does not match n")
        if self.chern is not None:
            chern = tuple(int(v) for v in self.chern)
            object.__setattr__(self, "chern", chern)
            if len(chern) != self.n:
                raise ModelError(f"expected {self.n} Chern multipliers, got {len(chern)}")
            if chern[0] != self.k:
                raise ModelError(f"c_1 = {chern[0]} g contradicts k = {self.k}")
            induced = chern_to_pontrjagin(chern, self.n)
            if induced != self.pontrjagin:
                raise ModelError(
                    f"Chern data induce Pontrjagin classes {induced}, model has {self.pontrjagin}"
                )

    @classmethod
    def standard(cls, n: int, k: int | None = None, simply_connected: bool = False) -> CPnModel:
        """Model with ``p = (1+g^2)^{n+1}``; ``k`` defaults to ``n + 1``."""
        k = n + 1 if k is None else k
        chern = binomial_chern(n) if k == n + 1 else None
        return cls(n, k, standard_pontrjagin(n), chern, simply_connected)

    @property
    def is_fano(self) -> bool:
        return self.k > 0

    @property
    def euler_number(self) -> int:
        return self.hodge.euler_number()

    def to_record(self) -> dict:
        return {
            "n": str(self.n),
            "k": str(self.k),
            "pontrjagin": [str(v) for v in self.pontrjagin],
            "chern": None if self.chern is None else [str(v) for v in self.chern],
            "simply_connected": self.simply_connected,
            "kaehler": self.kaehler,
            "hodge": [[str(v) for v in row] for row in self.hodge.h],
        }

    @classmethod
    def from_record(cls, record: dict) -> CPnModel:
        try:
            chern = record.get("chern")
            hodge = record.get("hodge")
            return cls(
                n=int(record["n"]),
                k=int(record["k"]),
                pontrjagin=tuple(int(v) for v in record["pontrjagin"]),
                chern=None if chern is None else tuple(int(v) for v in chern),
                simply_connected=bool(record.get("simply_connected", False)),
                kaehler=bool(record.get("kaehler", True)),
                hodge=None if hodge is None else HodgeTable.from_rows(hodge),
            )
        except (KeyError, TypeError) as exc:
            raise ModelError(f"malformed model record: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> CPnModel:
        return cls.from_record(json.loads(text))
