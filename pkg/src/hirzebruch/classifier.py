"""Classification of Kähler manifolds with the cohomology ring of CP^n.

The pipelines here decide which first Chern classes ``c_1 = k g`` survive the
arithmetic constraints (Todd genus one, integrality of ``c_2``, Yau's Chern
number inequality, the Fano index bound) and report each elimination with a
machine-readable reason.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd, isqrt

from .cpn import euler_characteristic, infer_hodge, standard_pontrjagin
from .genus import ahat_genus, c1cn1_constraint, evaluate, k_polynomials, k_polynomials_pontrjagin, todd_genus
from .series import TruncatedSeries, coefficient, generalized_binomial, series_exp, series_mul, series_pow

__all__ = [
    "CandidateResult",
    "ClassificationReport",
    "FanoStatus",
    "InternalDisagreement",
    "Mode",
    "Reason",
    "Verdict",
    "YauStatus",
    "YauVerdict",
    "classify_cp4",
    "classify_general",
    "cp4_candidates",
    "cp4_discriminant",
    "cp4_quadratic",
    "cp4_solve_c2",
    "fano_index_check",
    "solve_todd_one",
    "todd_from_c1_pontrjagin",
    "todd_paths",
    "yau_check",
]


class InternalDisagreement(AssertionError):
    """Independent computations of the same quantity disagree."""


class YauStatus(str, enum.Enum):
    NOT_APPLICABLE = "not_applicable"
    STRICT = "strict"
    EQUALITY = "equality"
    VIOLATED = "violated"


class FanoStatus(str, enum.Enum):
    CONSISTENT = "consistent"
    EQUALITY_FORCES_CPN = "equality_forces_CPn"
    EXCEEDS_BOUND = "exceeds_bound"


class Reason(str, enum.Enum):
    TODD_NOT_ONE = "todd_not_one"
    C2_NOT_INTEGRAL = "c2_not_integral"
    YAU_VIOLATED = "yau_violated"
    YAU_EQUALITY_VS_SIMPLY_CONNECTED = "yau_equality_vs_simply_connected"
    FANO_INDEX_EXCEEDS_BOUND = "fano_index_exceeds_bound"
    PARITY_FILTER = "parity_filter"


class Mode(str, enum.Enum):
    COHOMOLOGY_RING = "cohomology_ring"
    HOMOTOPY_EQUIVALENCE = "homotopy_equivalence"

    @classmethod
    def parse(cls, value) -> Mode:
        if isinstance(value, Mode):
            return value
        aliases = {"ring": cls.COHOMOLOGY_RING, "homotopy": cls.HOMOTOPY_EQUIVALENCE}
        if value in aliases:
            return aliases[value]
        return cls(value)


class Verdict(str, enum.Enum):
    BIHOLOMORPHIC = "biholomorphic_to_CPn"
    INCONCLUSIVE = "inconclusive"
    NO_CANDIDATE = "no_candidate"


# --- Todd genus of a model with standard Pontrjagin classes ----------------


def _todd_by_series(n: int, k: int) -> Fraction:
    order = 2 * n + 2
    x = TruncatedSeries.variable(order + 1)
    # g / (e^g - 1)
    bern = TruncatedSeries.constant(1, order) / (series_exp(x) - 1).shift_down()
    twist = series_exp(TruncatedSeries([0, Fraction(k + n + 1, 2)], order))
    return coefficient(series_mul(twist, series_pow(bern, n + 1)), n)


def _todd_by_binomial(n: int, k: int) -> Fraction:
    return generalized_binomial(Fraction(k + n - 1, 2), n)


def _todd_by_ahat(n: int, k: int) -> Fraction:
    # td = ∫ e^{c1/2} Â(p); Â_j lives in degree g^{2j}
    ahat = k_polynomials_pontrjagin(ahat_genus(max(2 * (n // 2), 2)), n // 2)
    p = standard_pontrjagin(n)
    total = Fraction(0)
    for j in range(n // 2 + 1):
        i = n - 2 * j
        total += Fraction(k, 2) ** i / factorial(i) * evaluate(ahat[j], p)
    return total


def todd_paths(n: int, k: int) -> dict[str, Fraction]:
    """The Todd genus computed along three independent routes."""
    return {
        "coefficient_chain": _todd_by_series(n, k),
        "generalized_binomial": _todd_by_binomial(n, k),
        "ahat_factorization": _todd_by_ahat(n, k),
    }


def todd_from_c1_pontrjagin(n: int, k: int) -> Fraction:
    """Todd genus of a model with ``c_1 = k g`` and ``p = (1+g^2)^{n+1}``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    values = todd_paths(n, k)
    if len(set(values.values())) != 1:
        raise InternalDisagreement(f"Todd genus paths disagree for n={n}, k={k}: {values}")
    return values["coefficient_chain"]


def solve_todd_one(n: int) -> set[int]:
    """All integers ``k`` with ``todd_from_c1_pontrjagin(n, k) == 1``.

    The falling factorial ``j (j-1) ... (j-n+1)`` with ``j = (k+n-1)/2`` grows
    strictly in ``|j|`` once ``j >= n`` or ``j <= -1``, so the scan stops at the
    first ``k`` past those points whose value exceeds ``n!`` in magnitude.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    target = Fraction(factorial(n))
    k0 = 1 - n  # j = 0
    found = set()

    def falling(k):
        return generalized_binomial(Fraction(k + n - 1, 2), n) * target

    k = k0
    while True:
        v = falling(k)
        if v == target:
            found.add(k)
        if Fraction(k + n - 1, 2) >= n and abs(v) > target:
            break
        k += 1
    k = k0 - 1
    while True:
        v = falling(k)
        if v == target:
            found.add(k)
        if Fraction(k + n - 1, 2) <= -1 and abs(v) > target:
            break
        k -= 1
    for k in found:
        if todd_from_c1_pontrjagin(n, k) != 1:
            raise InternalDisagreement(f"k={k} passed the scan but Todd genus is not 1")
    expected = {n + 1} if n % 2 else {n + 1, -(n + 1)}
    if found != expected:
        raise InternalDisagreement(f"scan found {sorted(found)}, closed form {sorted(expected)}")
    return found


# --- Yau and Fano ----------------------------------------------------------


@dataclass(frozen=True)
class YauVerdict:
    status: YauStatus
    lhs: Fraction
    rhs: Fraction


def yau_check(n: int, k: int, m: int) -> YauVerdict:
    """Compare ``2(n+1)/n (-c1)^{n-2} c2`` with ``(-c1)^n`` for ``c1 = k g, c2 = m g^2``."""
    if n < 2:
        raise ValueError("Yau's inequality is checked for n >= 2")
    lhs = Fraction(2 * (n + 1), n) * Fraction(-k) ** (n - 2) * m
    rhs = Fraction(-k) ** n
    if k >= 0:
        status = YauStatus.NOT_APPLICABLE
    elif lhs == rhs:
        status = YauStatus.EQUALITY
    elif lhs > rhs:
        status = YauStatus.STRICT
    else:
        status = YauStatus.VIOLATED
    return YauVerdict(status, lhs, rhs)


def fano_index_check(n: int, k: int) -> FanoStatus:
    if k <= 0:
        raise ValueError(f"c1 = {k} g is not positive; the Fano index is undefined")
    if k == n + 1:
        return FanoStatus.EQUALITY_FORCES_CPN
    if k > n + 1:
        return FanoStatus.EXCEEDS_BOUND
    return FanoStatus.CONSISTENT


# --- reports ---------------------------------------------------------------


@dataclass
class CandidateResult:
    k: int
    status: str  # "eliminated" | "survives"
    reasons: list[Reason] = field(default_factory=list)
    c2: int | None = None
    details: dict = field(default_factory=dict)

    @property
    def eliminated(self) -> bool:
        return self.status == "eliminated"


@dataclass
class ClassificationReport:
    n: int
    mode: Mode
    simply_connected: bool
    candidates: list[CandidateResult]
    verdict: Verdict
    verdict_k: int | None = None
    excluded: list[CandidateResult] = field(default_factory=list)
    trace: list[dict] = field(default_factory=list)

    @property
    def survivors(self) -> list[int]:
        return [c.k for c in self.candidates if not c.eliminated]

    def candidate(self, k: int) -> CandidateResult:
        for c in self.candidates:
            if c.k == k:
                return c
        raise KeyError(k)


def _eliminate(cand: CandidateResult, reason: Reason) -> None:
    cand.status = "eliminated"
    if reason not in cand.reasons:
        cand.reasons.append(reason)


def _conclude(n: int, candidates: list[CandidateResult]) -> tuple[Verdict, int | None]:
    alive = [c for c in candidates if not c.eliminated]
    if not alive:
        return Verdict.NO_CANDIDATE, None
    if len(alive) == 1 and alive[0].k > 0:
        if fano_index_check(n, alive[0].k) is FanoStatus.EQUALITY_FORCES_CPN:
            return Verdict.BIHOLOMORPHIC, alive[0].k
    return Verdict.INCONCLUSIVE, None


def _apply_sign_checks(n: int, cand: CandidateResult, m: int, simply_connected: bool) -> None:
    if cand.k < 0:
        yau = yau_check(n, cand.k, m)
        cand.details["yau"] = {"status": yau.status.value, "lhs": yau.lhs, "rhs": yau.rhs}
        if yau.status is YauStatus.VIOLATED:
            _eliminate(cand, Reason.YAU_VIOLATED)
        elif yau.status is YauStatus.EQUALITY and simply_connected:
            # equality means a ball quotient, which is never simply connected
            _eliminate(cand, Reason.YAU_EQUALITY_VS_SIMPLY_CONNECTED)
    elif cand.k > 0:
        fano = fano_index_check(n, cand.k)
        cand.details["fano"] = fano.value
        if fano is FanoStatus.EXCEEDS_BOUND:
            _eliminate(cand, Reason.FANO_INDEX_EXCEEDS_BOUND)


def classify_general(n: int, simply_connected: bool) -> ClassificationReport:
    """Kähler manifold with the cohomology ring and Pontrjagin classes of CP^n."""
    hodge = infer_hodge(n)
    trace = [
        {"stage": "infer_hodge", "hodge_diagonal": True, "todd_from_hodge": 1},
        {"stage": "standard_pontrjagin", "pontrjagin": list(standard_pontrjagin(n))},
    ]
    assert hodge.euler_number() == euler_characteristic(n)
    roots = sorted(solve_todd_one(n), reverse=True)
    trace.append({"stage": "solve_todd_one", "solutions": roots})
    p1 = standard_pontrjagin(n)[0] if n >= 2 else None
    candidates = []
    for k in roots:
        cand = CandidateResult(k, "survives")
        cand.details["todd"] = todd_from_c1_pontrjagin(n, k)
        if p1 is not None:
            # p_1 = c_1^2 - 2 c_2
            twice_c2 = k * k - p1
            if twice_c2 % 2:
                _eliminate(cand, Reason.C2_NOT_INTEGRAL)
                candidates.append(cand)
                continue
            cand.c2 = twice_c2 // 2
            _apply_sign_checks(n, cand, cand.c2, simply_connected)
        else:
            cand.details["fano"] = fano_index_check(n, k).value
        candidates.append(cand)
    trace.append({"stage": "eliminate", "eliminated": [c.k for c in candidates if c.eliminated]})
    verdict, vk = _conclude(n, candidates)
    return ClassificationReport(
        n, Mode.COHOMOLOGY_RING, simply_connected, candidates, verdict, vk, trace=trace
    )


# --- CP^4 without Pontrjagin hypotheses ------------------------------------


def _divisors(m: int) -> list[int]:
    m = abs(m)
    return [d for d in range(1, m + 1) if m % d == 0]


def _cp4_c1c3() -> int:
    value = c1cn1_constraint(4, infer_hodge(4))
    if value.denominator != 1:
        raise InternalDisagreement(f"c1c3 = {value} is not an integer")
    return value.numerator


def cp4_candidates(mode=Mode.COHOMOLOGY_RING) -> list[int]:
    """Multipliers ``k`` with ``k | c1c3`` and ``k <= n + 1`` when positive."""
    mode = Mode.parse(mode)
    c1c3 = _cp4_c1c3()
    out = []
    for d in _divisors(c1c3):
        for k in (d, -d):
            if k > 0 and k > 5:
                continue
            if mode is Mode.HOMOTOPY_EQUIVALENCE and k % 2 == 0:
                continue
            out.append(k)
    return out


def cp4_quadratic(k: int) -> tuple[int, int, int]:
    """Integer coefficients ``(a, b, c)`` of ``a c2^2 + b c2 + c = 0`` from ``td_4 = 1``.

    Built from the engine's ``td_4`` with ``c1 = k``, ``c1c3 = 50``, ``c4 = 5``.
    """
    td4 = k_polynomials(todd_genus(4), 4)[4]
    c1c3, c4 = _cp4_c1c3(), euler_characteristic(4)
    a = td4.coefficient((0, 2))
    b = td4.coefficient((2, 1)) * k * k
    c = (
        td4.coefficient((4,)) * k**4
        + td4.coefficient((1, 0, 1)) * c1c3
        + td4.coefficient((0, 0, 0, 1)) * c4
        - 1
    )
    scale = 1
    for v in (a, b, c):
        scale = scale * v.denominator // gcd(scale, v.denominator)
    a, b, c = (int(v * scale) for v in (a, b, c))
    g = gcd(gcd(a, b), c)
    return a // g, b // g, c // g


def cp4_discriminant(k: int) -> int:
    """Quarter discriminant of the ``c2`` quadratic, ``7 k^4 + 2025``."""
    a, b, c = cp4_quadratic(k)
    disc = b * b - 4 * a * c
    if disc % 4:
        raise InternalDisagreement(f"discriminant {disc} is not divisible by 4")
    return disc // 4


def cp4_solve_c2(k: int) -> list[int]:
    """Integral roots ``c2`` of the quadratic; empty if none."""
    a, b, c = cp4_quadratic(k)
    quarter = cp4_discriminant(k)
    if quarter < 0:
        return []
    s = isqrt(quarter)
    if s * s != quarter:
        return []
    # b is even, so roots are (-b/2 ± s) / a
    half_b = b // 2
    roots = set()
    for num in (-half_b + s, -half_b - s):
        if num % a == 0:
            roots.add(num // a)
    for m in roots:
        if a * m * m + b * m + c != 0:
            raise InternalDisagreement(f"c2 = {m} does not satisfy the quadratic for k={k}")
    return sorted(roots, reverse=True)


def classify_cp4(simply_connected: bool, mode=Mode.COHOMOLOGY_RING) -> ClassificationReport:
    """Simply-connected (or not) Kähler manifold with the cohomology ring of CP^4."""
    mode = Mode.parse(mode)
    n = 4
    c1c3 = _cp4_c1c3()
    td4 = k_polynomials(todd_genus(4), 4)[4]
    trace = [
        {"stage": "infer_hodge", "hodge_diagonal": True, "todd_from_hodge": 1},
        {"stage": "c1cn1_constraint", "c1c3": c1c3, "c4": euler_characteristic(n)},
    ]
    excluded = []
    if mode is Mode.HOMOTOPY_EQUIVALENCE:
        for k in cp4_candidates(Mode.COHOMOLOGY_RING):
            if k % 2 == 0:
                excluded.append(CandidateResult(k, "eliminated", [Reason.PARITY_FILTER]))
    ks = cp4_candidates(mode)
    trace.append({"stage": "cp4_candidates", "candidates": ks})
    candidates = []
    for k in ks:
        cand = CandidateResult(k, "survives")
        a, b, c = cp4_quadratic(k)
        quarter = cp4_discriminant(k)
        s = isqrt(quarter)
        cand.details.update(
            quadratic=[a, b, c], discriminant=quarter, is_square=s * s == quarter
        )
        roots = cp4_solve_c2(k)
        if not roots:
            _eliminate(cand, Reason.C2_NOT_INTEGRAL)
            candidates.append(cand)
            continue
        # at most one root survives for every candidate in practice; report the first
        cand.c2 = roots[0]
        cand.details["c2_roots"] = roots
        _apply_sign_checks(n, cand, cand.c2, simply_connected)
        td = evaluate(td4, {1: k, 2: cand.c2, 3: Fraction(c1c3, k), 4: euler_characteristic(n)})
        cand.details["td4"] = td
        if td != 1:
            _eliminate(cand, Reason.TODD_NOT_ONE)
        if k * k - 2 * cand.c2 == standard_pontrjagin(n)[0]:
            cand.details["todd_standard_pontrjagin"] = todd_from_c1_pontrjagin(n, k)
        candidates.append(cand)
    trace.append({"stage": "cp4_solve_c2", "integral": [c.k for c in candidates if c.c2 is not None]})
    trace.append({"stage": "eliminate", "eliminated": [c.k for c in candidates if c.eliminated]})
    verdict, vk = _conclude(n, candidates)
    return ClassificationReport(
        n, mode, simply_connected, candidates, verdict, vk, excluded=excluded, trace=trace
    )
