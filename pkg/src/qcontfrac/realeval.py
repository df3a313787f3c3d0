"""Floating-point evaluation of numeric continued fractions and products."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

from .errors import DomainError, UsageError

PHI = (math.sqrt(5) + 1) / 2
RESCALE_AT = 1e150


@dataclass(frozen=True)
class RealCF:
    """b0 + a_1/(b_1 + a_2/(b_2 + ...)); ``terms(k)`` returns (a_k, b_k) for k >= 1."""

    b0: float
    terms: Callable[[int], tuple[float, float]]
    depth: int


def convergents_real(cf: RealCF, depth: int | None = None, rescale: float | None = RESCALE_AT) -> Iterator[float]:
    """Yield P_k/Q_k for k = 1..depth by the forward recurrence.

    (P, Q) pairs are divided by max(|P|, |Q|) whenever that exceeds
    ``rescale``; pass ``None`` to disable.
    """
    D = cf.depth if depth is None else depth
    if D < 1:
        raise UsageError("depth must be >= 1")
    p0, p1 = 1.0, float(cf.b0)
    q0, q1 = 0.0, 1.0
    terms = cf.terms
    for k in range(1, D + 1):
        a, b = terms(k)
        p0, p1 = p1, b * p1 + a * p0
        q0, q1 = q1, b * q1 + a * q0
        if rescale is not None:
            m = max(abs(p1), abs(q1))
            if m > rescale:
                p0 /= m
                p1 /= m
                q0 /= m
                q1 /= m
        if q1 == 0:
            raise DomainError(f"denominator vanishes at depth {k}")
        yield p1 / q1


def eval_cf_real(cf: RealCF, depth: int | None = None, rescale: float | None = RESCALE_AT) -> float:
    """P_D/Q_D by the forward recurrence; only the final denominator must be nonzero."""
    D = cf.depth if depth is None else depth
    if D < 1:
        raise UsageError("depth must be >= 1")
    limit = math.inf if rescale is None else rescale
    p0, p1 = 1.0, float(cf.b0)
    q0, q1 = 0.0, 1.0
    terms = cf.terms
    for k in range(1, D + 1):
        a, b = terms(k)
        p0, p1 = p1, b * p1 + a * p0
        q0, q1 = q1, b * q1 + a * q0
        if abs(q1) > limit or abs(p1) > limit:
            m = max(abs(p1), abs(q1))
            p0 /= m
            p1 /= m
            q0 /= m
            q1 /= m
    if q1 == 0:
        raise DomainError(f"denominator vanishes at depth {D}")
    return p1 / q1


def pi_cf(depth: int = 1000) -> RealCF:
    """4/(1 + 1^2/(2 + 3^2/(2 + 5^2/(2 + ...))))"""

    def terms(k: int) -> tuple[float, float]:
        if k == 1:
            return 4.0, 1.0
        m = 2 * k - 3
        return float(m * m), 2.0

    return RealCF(0.0, terms, depth)


def exp_cf(z: float, depth: int = 30) -> RealCF:
    """1/(1 - z/(1 + z - z/(2 + z - 2z/(3 + z - ...))))"""

    def terms(k: int) -> tuple[float, float]:
        if k == 1:
            return 1.0, 1.0
        if k == 2:
            return -z, 1.0 + z
        return -(k - 2) * z, (k - 1) + z

    return RealCF(0.0, terms, depth)


def log_cf(z: float, depth: int = 30) -> RealCF:
    """log((1+z)/(1-z)) = 2z/(1 - z^2/(z^2 + 3 - (3z)^2/(3z^2 + 5 - ...)))"""
    z2 = z * z

    def terms(k: int) -> tuple[float, float]:
        if k == 1:
            return 2.0 * z, 1.0
        if k == 2:
            return -z2, z2 + 3.0
        m = 2 * k - 3
        return -(m * m) * z2, m * z2 + (2 * k - 1)

    return RealCF(0.0, terms, depth)


def rr_cf(q: float, depth: int = 60) -> RealCF:
    """q^(1/5)/(1 + q/(1 + q^2/(1 + ...)))"""
    if not 0 < q < 1:
        raise UsageError("need 0 < q < 1")
    head = q ** 0.2

    def terms(k: int) -> tuple[float, float]:
        if k == 1:
            return head, 1.0
        return q ** (k - 1), 1.0

    return RealCF(0.0, terms, depth)


def rr_product(q: float) -> float:
    """q^(1/5) prod (1-q^(5n-4))(1-q^(5n-1)) / ((1-q^(5n-3))(1-q^(5n-2)))."""
    if not 0 < q < 1:
        raise UsageError("need 0 < q < 1")
    value = q ** 0.2
    n = 1
    while True:
        f = (1 - q ** (5 * n - 4)) * (1 - q ** (5 * n - 1)) / ((1 - q ** (5 * n - 3)) * (1 - q ** (5 * n - 2)))
        value *= f
        if abs(f - 1) < 1e-17 or q ** (5 * n - 4) < 1e-17:
            return value
        n += 1


def rr_value(q: float, depth: int = 60) -> tuple[float, float]:
    """Rogers-Ramanujan R(q) from the fraction and from the product."""
    return eval_cf_real(rr_cf(q, depth)), rr_product(q)


@dataclass(frozen=True)
class SingularValueCase:
    name: str
    q: float
    closed_form: float


SINGULAR_CASES = {
    "e-pi": SingularValueCase(
        "e-pi",
        math.exp(-math.pi),
        0.5 * PHI * (math.sqrt(5) - PHI**1.5) * (5**0.25 + PHI**1.5),
    ),
    "e-2pi": SingularValueCase("e-2pi", math.exp(-2 * math.pi), 5**0.25 * math.sqrt(PHI) - PHI),
    "e-4pi": SingularValueCase(
        "e-4pi",
        math.exp(-4 * math.pi),
        0.5 * PHI * (math.sqrt(5) - PHI**1.5) * (-(5**0.25) + PHI**1.5),
    ),
}


def singular_value_check(case: SingularValueCase | str, depth: int = 60) -> tuple[float, float, float, float]:
    """(fraction value, product value, closed form, largest pairwise gap)."""
    if isinstance(case, str):
        try:
            case = SINGULAR_CASES[case]
        except KeyError:
            raise UsageError(f"unknown case {case!r}; expected one of {', '.join(SINGULAR_CASES)}") from None
    cf, prod = rr_value(case.q, depth)
    closed = case.closed_form
    delta = max(abs(cf - prod), abs(cf - closed), abs(prod - closed))
    return cf, prod, closed, delta
