"""Catalog of series, product and continued-fraction identities with an exact checker.

Each :class:`IdentityCase` pairs two independent builders.  A builder takes
``(order, seed)`` and returns a :class:`QSeries`, a list of exact rationals
(randomized cases) or a :class:`Side` carrying either of those plus the
continued-fraction depth it needed.  Lists of series are compared
componentwise.
"""

from __future__ import annotations

import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Callable, Mapping, Sequence

from .contfrac import (
    CFSpec,
    build_catalog_cf,
    convergents,
    eval_series_with_depth,
    euler_cf_from_terms,
    evaluate_nested,
    finite_value_series,
    limit_pair,
)
from .errors import DomainError, UsageError
from .partitions import colored_series
from .qseries import QSeries, pochhammer, product_build

RANDOM_INSTANCES = 24
RANDOM_BOUND = 9
THREE_PARAM_DEPTH = 20
COLORED_MAX_ORDER = 25


@dataclass(frozen=True)
class Side:
    value: object
    depth: int = 0


Builder = Callable[[int, int], object]


@dataclass(frozen=True)
class IdentityCase:
    id: str
    description: str
    anchor: str
    lhs: Builder
    rhs: Builder
    default_order: int = 40
    param_mode: str = "none"  # none | generic | random
    max_order: int | None = None

    def effective_order(self, order: int) -> int:
        return order if self.max_order is None else min(order, self.max_order)


@dataclass(frozen=True)
class Mismatch:
    q: int
    ea: int
    eb: int
    lhs: str
    rhs: str

    def to_dict(self) -> dict:
        return {"q": self.q, "ea": self.ea, "eb": self.eb, "lhs": self.lhs, "rhs": self.rhs}


@dataclass(frozen=True)
class IdentityReport:
    id: str
    status: str  # pass | fail | error
    order: int
    depth: int
    first_mismatch: Mismatch | None = None
    elapsed_ms: int = 0
    seed: int | None = None
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self, timings: bool = True) -> dict:
        out = {
            "id": self.id,
            "status": self.status,
            "order": self.order,
            "depth": self.depth,
            "first_mismatch": None if self.first_mismatch is None else self.first_mismatch.to_dict(),
            "elapsed_ms": self.elapsed_ms if timings else 0,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if self.error is not None:
            out["error"] = self.error
        return out


# ---------------------------------------------------------------------------
# comparison


def _fmt(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _unwrap(result) -> tuple[list, int]:
    depth = 0
    if isinstance(result, Side):
        depth = result.depth
        result = result.value
    if isinstance(result, QSeries):
        return [result], depth
    return list(result), depth


def _first_series_mismatch(lhs: QSeries, rhs: QSeries) -> Mismatch | None:
    if lhs.order != rhs.order:
        raise UsageError(f"sides have orders {lhs.order} and {rhs.order}")
    for n in range(lhs.order + 1):
        x, y = lhs[n], rhs[n]
        if x == y:
            continue
        keys = set(x.terms()) | set(y.terms())
        for ea, eb, ec in sorted(keys):
            u, v = x.coeff(ea, eb, ec), y.coeff(ea, eb, ec)
            if u != v:
                return Mismatch(n, ea, eb, _fmt(u), _fmt(v))
    return None


def compare_sides(lhs: Sequence, rhs: Sequence) -> Mismatch | None:
    """First disagreement between two lists of series (or of rationals).

    For rational lists the mismatch's ``q`` field is the instance index.
    """
    if len(lhs) != len(rhs):
        raise UsageError(f"sides have {len(lhs)} and {len(rhs)} components")
    for idx, (x, y) in enumerate(zip(lhs, rhs)):
        if isinstance(x, QSeries) or isinstance(y, QSeries):
            for s in (x, y):
                if s.has_negative_exponents():
                    raise DomainError("compared series has a negative parameter exponent")
            hit = _first_series_mismatch(x, y)
            if hit is not None:
                return hit
        elif Fraction(x) != Fraction(y):
            return Mismatch(idx, 0, 0, _fmt(x), _fmt(y))
    return None


# ---------------------------------------------------------------------------
# shared building blocks (inputs only; no side reuses the other's results)


def _mono(coeff, qexp: int, N: int, ea: int = 0, eb: int = 0, ec: int = 0) -> QSeries:
    return QSeries.monomial(coeff, qexp, ea, eb, ec, order=N)


def _inv_qfactorials(N: int, kmax: int, step: int = 1) -> list[QSeries]:
    """1/(q^step; q^step)_k for k = 0..kmax."""
    out = [QSeries.one(N)]
    for k in range(1, kmax + 1):
        out.append(out[-1] * product_build([step * k], -1, order=N).inverse())
    return out


def _exps(N: int, residues: Sequence[int], modulus: int) -> list[int]:
    return [e for e in range(1, N + 1) if e % modulus in residues]


def _ratio_product(N: int, num: Sequence[int], den: Sequence[int]) -> QSeries:
    """prod (1 - q^e) over num / prod (1 - q^e) over den."""
    return product_build(num, -1, order=N) * product_build(den, -1, order=N).inverse()


def _random_rational(rng: random.Random, exclude=(0,)) -> Fraction:
    while True:
        x = Fraction(rng.randint(-RANDOM_BOUND, RANDOM_BOUND), rng.randint(1, RANDOM_BOUND))
        if x not in exclude:
            return x


def _instances(seed: int, tag: str, nmin: int, nmax: int, exclude) -> list[list[Fraction]]:
    rng = random.Random(f"{tag}:{seed}")
    return [[_random_rational(rng, exclude) for _ in range(rng.randint(nmin, nmax))] for _ in range(RANDOM_INSTANCES)]


def _prod(xs, start=1):
    return reduce(lambda u, v: u * v, xs, start)


# Euler's fraction -----------------------------------------------------------


def _euler_instances(seed: int) -> list[list[Fraction]]:
    rng = random.Random(f"euler:{seed}")
    out = []
    while len(out) < RANDOM_INSTANCES:
        terms = [_random_rational(rng, exclude=()) for _ in range(rng.randint(1, 11))]
        cf = euler_cf_from_terms(terms)
        try:
            evaluate_nested(cf)
        except (DomainError, ZeroDivisionError):
            continue
        if any(pair.Q == 0 for pair in convergents(cf)):
            continue
        if any(1 + t == 0 for t in terms[2:]):
            continue
        out.append(terms)
    return out


def _euler_convergents(N: int, seed: int) -> Side:
    values, depth = [], 0
    for terms in _euler_instances(seed):
        cf = euler_cf_from_terms(terms)
        depth = max(depth, cf.depth)
        values.extend(pair.ratio() for pair in convergents(cf))
    return Side(values, depth)


def _euler_partial_sums(N: int, seed: int) -> list[Fraction]:
    values = []
    for terms in _euler_instances(seed):
        running, total = Fraction(1), Fraction(0)
        for t in terms:
            running *= t
            total += running
            values.append(total)
    return values


# telescoping identities -----------------------------------------------------


def _tele_unrestricted_sum(N: int, seed: int) -> list[Fraction]:
    out = []
    for a in _instances(seed, "tele1", 1, 8, (0, 1)):
        total, den = Fraction(1), Fraction(1)
        for x in a:
            den *= 1 - x
            total += x / den
        out.append(total)
    return out


def _tele_unrestricted_product(N: int, seed: int) -> list[Fraction]:
    return [1 / _prod(1 - x for x in a) for a in _instances(seed, "tele1", 1, 8, (0, 1))]


def _tele_distinct_sum(N: int, seed: int) -> list[Fraction]:
    out = []
    for a in _instances(seed, "tele2", 1, 8, (0, -1)):
        total, run = Fraction(1), Fraction(1)
        for x in a:
            total += x * run
            run *= 1 + x
        out.append(total)
    return out


def _tele_distinct_product(N: int, seed: int) -> list[Fraction]:
    return [_prod(1 + x for x in a) for a in _instances(seed, "tele2", 1, 8, (0, -1))]


def _thm_instances(seed: int, cf_id: str) -> list[list[Fraction]]:
    rng = random.Random(f"{cf_id}:{seed}")
    out = []
    while len(out) < RANDOM_INSTANCES:
        a = [_random_rational(rng, (0, 1, -1)) for _ in range(rng.randint(1, 8))]
        try:
            evaluate_nested(build_catalog_cf(cf_id, {"terms": a}))
        except (DomainError, ZeroDivisionError):
            continue
        out.append(a)
    return out


def _thm_cf(cf_id: str) -> Builder:
    def build(N: int, seed: int) -> Side:
        vals, depth = [], 0
        for a in _thm_instances(seed, cf_id):
            cf = build_catalog_cf(cf_id, {"terms": a})
            depth = max(depth, cf.depth)
            vals.append(evaluate_nested(cf))
        return Side(vals, depth)

    return build


def _thm_product(cf_id: str) -> Builder:
    def build(N: int, seed: int) -> list[Fraction]:
        if cf_id == "THM_2_1":
            return [1 / _prod(1 - x for x in a) for a in _thm_instances(seed, cf_id)]
        return [_prod(1 + x for x in a) for a in _thm_instances(seed, cf_id)]

    return build


# corollaries: telescoping fractions with q-power terms -------------------------


def _telescoping_series(cf_id: str, exponents: Sequence[int]) -> Builder:
    exps = tuple(exponents)

    def build(N: int, seed: int) -> Side:
        def make(M: int) -> CFSpec:
            return build_catalog_cf(cf_id, {"exponents": exps}, order=max(M, max(exps)))

        value, depth = finite_value_series(make, N)
        return Side(value, depth)

    return build


def _product_side(exponents: Sequence[int], sign: int) -> Builder:
    exps = tuple(exponents)

    def build(N: int, seed: int) -> QSeries:
        p = product_build(exps, 1 if sign > 0 else -1, order=N)
        return p if sign > 0 else p.inverse()

    return build


def _binary_closed_form(n: int) -> Builder:
    def build(N: int, seed: int) -> QSeries:
        top = 1 - _mono(1, 2 ** (n + 1), N) if 2 ** (n + 1) <= N else QSeries.one(N)
        return top * (1 - _mono(1, 1, N)).inverse()

    return build


def _odd_unrestricted_cf(N: int, seed: int) -> Side:
    return _telescoping_series("THM_2_1", range(1, max(N, 1) + 1, 2))(N, seed)


def _distinct_cf(N: int, seed: int) -> Side:
    return _telescoping_series("THM_2_2", range(1, max(N, 1) + 1))(N, seed)


# Rogers-Ramanujan -----------------------------------------------------------


def _rr_sum(shift: int) -> Builder:
    """sum_n q^(n^2 + shift*n) / (q)_n"""

    def build(N: int, seed: int) -> QSeries:
        kmax = math.isqrt(N) + 1
        inv = _inv_qfactorials(N, kmax)
        total = QSeries.zero(N)
        for n in range(kmax + 1):
            e = n * n + shift * n
            if e > N:
                break
            total = total + _mono(1, e, N) * inv[n]
        return total

    return build


def _rr_product(residues: Sequence[int]) -> Builder:
    def build(N: int, seed: int) -> QSeries:
        return product_build(_exps(N, residues, 5), -1, order=N).inverse()

    return build


def _series_of(cf_id: str, params: Mapping | None = None) -> Builder:
    def build(N: int, seed: int) -> Side:
        value, depth = eval_series_with_depth(build_catalog_cf(cf_id, params, order=N))
        return Side(value, depth)

    return build


def _rr_cf_product(N: int, seed: int) -> QSeries:
    return _ratio_product(N, _exps(N, (1, 4), 5), _exps(N, (2, 3), 5))


# Lebesgue and the a = 1 products -----------------------------------------------


def _lebesgue_sum(N: int, seed: int) -> QSeries:
    """sum_k q^(k(k+1)/2) (-bq; q)_k / (q)_k"""
    kmax = math.isqrt(2 * N) + 1
    inv = _inv_qfactorials(N, kmax)
    total = QSeries.zero(N)
    for k in range(kmax + 1):
        e = k * (k + 1) // 2
        if e > N:
            break
        total = total + _mono(1, e, N) * pochhammer((-1, 0, 1, 0, 1), k, N) * inv[k]
    return total


def _lebesgue_product(N: int, seed: int) -> QSeries:
    return product_build(range(2, N + 1, 2), 1, param="b", order=N) * product_build(range(1, N + 1), 1, order=N)


def _r1b_product(N: int, seed: int) -> QSeries:
    return product_build(range(1, N + 1, 2), 1, param="b", order=N) * product_build(
        range(2, N + 1, 2), 1, param="b", order=N
    ).inverse()


def _r1b_q2_product(N: int, seed: int) -> QSeries:
    return product_build(_exps(N, (1,), 4), 1, param="b", order=N) * product_build(
        _exps(N, (3,), 4), 1, param="b", order=N
    ).inverse()


# numerator / denominator expansions of R(a, b) ---------------------------------


def _lemma_sum(shift: int) -> Builder:
    """sum_k a^k q^(k(k+1)/2) (-a^-1 b q^shift; q)_k / (q)_k"""

    def build(N: int, seed: int) -> QSeries:
        kmax = math.isqrt(2 * N) + 1
        inv = _inv_qfactorials(N, kmax)
        total = QSeries.zero(N)
        for k in range(kmax + 1):
            e = k * (k + 1) // 2
            if e > N:
                break
            poch = pochhammer((-1, -1, 1, 0, shift), k, N)
            total = total + _mono(1, e, N, ea=k) * poch * inv[k]
        return total

    return build


def _double_sum(extra_j: int) -> Builder:
    """sum_{i,j} a^i b^j q^((i^2+i)/2 + ij + j^2 + extra_j*j) / ((q)_i (q)_j)"""

    def build(N: int, seed: int) -> QSeries:
        kmax = math.isqrt(2 * N) + 1
        inv = _inv_qfactorials(N, kmax)
        total = QSeries.zero(N)
        for i in range(kmax + 1):
            for j in range(kmax + 1):
                e = (i * i + i) // 2 + i * j + j * j + extra_j * j
                if e > N:
                    break
                total = total + _mono(1, e, N, ea=i, eb=j) * inv[i] * inv[j]
        return total

    return build


def _limit_parts(cf_id: str, params: Mapping | None = None) -> Callable[[int], tuple[QSeries, QSeries, int]]:
    def parts(N: int):
        pair = limit_pair(build_catalog_cf(cf_id, params, order=N), N)
        return pair.P, pair.Q, pair.depth

    return parts


def _lemma_limit(which: str) -> Builder:
    def build(N: int, seed: int) -> Side:
        P, Q, depth = _limit_parts("R_AB")(N)
        return Side(P if which == "P" else Q, depth)

    return build


def _expansions_lhs(N: int, seed: int) -> list[QSeries]:
    return [_double_sum(0)(N, seed), _double_sum(1)(N, seed)]


def _expansions_rhs(N: int, seed: int) -> list[QSeries]:
    return [_lemma_sum(0)(N, seed), _lemma_sum(1)(N, seed)]


def _shifted_numerator(N: int, seed: int) -> QSeries:
    return _double_sum(0)(N, seed).subst_param_qshift("b", 1)


# f(a, c) ---------------------------------------------------------------------


def _f_sum(a_shift: int) -> Builder:
    """f(a q^a_shift, c) = sum_k a^k q^(k(k-1)/2 + a_shift*k) (-cq; q)_k / (q)_k"""

    def build(N: int, seed: int) -> QSeries:
        kmax = math.isqrt(2 * N) + 2
        inv = _inv_qfactorials(N, kmax)
        total = QSeries.zero(N)
        for k in range(kmax + 1):
            e = k * (k - 1) // 2 + a_shift * k
            if e > N:
                break
            total = total + _mono(1, e, N, ea=k) * pochhammer((-1, 0, 0, 1, 1), k, N) * inv[k]
        return total

    return build


def _f_recurrence_rhs(N: int, seed: int) -> QSeries:
    """(1 + a) f(aq, c) + a c q f(aq^2, c), with the shifts applied as substitutions."""
    f = _f_sum(0)(N, seed)
    a = QSeries.param("a", N)
    return (1 + a) * f.subst_param_qshift("a", 1) + _mono(1, 1, N, ea=1, ec=1) * f.subst_param_qshift("a", 2)


def _f_limit(N: int, seed: int) -> Side:
    P, Q, depth = _limit_parts("F_AC")(N)
    return Side([P, Q], depth)


def _f_pair(N: int, seed: int) -> list[QSeries]:
    return [_f_sum(0)(N, seed), _f_sum(1)(N, seed)]


# the q -> q^2, b -> b/q specialization ------------------------------------------


def _gollnitz_sum(numerator: bool) -> Callable[[int], QSeries]:
    """sum_k q^(k(k+1)) (-b q^s; q^2)_k / (q^2; q^2)_k with s = -1 (numerator) or 1.

    The q^-1 factor is absorbed: q^(k(k+1)) (1 + b/q) = q^(k(k+1) - 1) (q + b).
    """

    def build(N: int) -> QSeries:
        kmax = math.isqrt(N) + 1
        inv = _inv_qfactorials(N, kmax, step=2)
        total = QSeries.zero(N)
        for k in range(kmax + 1):
            e = k * (k + 1)
            if e - (1 if numerator and k else 0) > N:
                break
            if numerator and k:
                head = _mono(1, e - 1, N) * (_mono(1, 1, N) + QSeries.param("b", N))
                poch = pochhammer((-1, 0, 1, 0, 1), k - 1, N, step=2)
            else:
                head = _mono(1, e, N)
                poch = pochhammer((-1, 0, 1, 0, 1), k, N, step=2)
            total = total + head * poch * inv[k]
        return total

    return build


def _gollnitz_lhs(numerator: bool) -> Builder:
    def build(N: int, seed: int) -> Side:
        P, Q, depth = _limit_parts("R1B_Q2")(N)
        return Side([_gollnitz_sum(numerator)(N), P if numerator else Q], depth)

    return build


def _gollnitz_rhs(numerator: bool) -> Builder:
    def build(N: int, seed: int) -> list[QSeries]:
        b_res = 1 if numerator else 3
        b_part = product_build(_exps(N, (b_res,), 4), 1, param="b", order=N)
        first = b_part * product_build(range(2, N + 1, 2), 1, order=N)
        second = b_part * product_build(_exps(N, (2, 0), 4), 1, order=N)
        return [first, second]

    return build


def _mod8_product(num: Sequence[int], den: Sequence[int]) -> Builder:
    def build(N: int, seed: int) -> QSeries:
        return _ratio_product(N, _exps(N, num, 8), _exps(N, den, 8))

    return build


# three-parameter fraction ------------------------------------------------------


def _three_param_ratio_sides(N: int) -> tuple[QSeries, QSeries, int]:
    """P_D * Den and Q_D * Num, kept to total (a, b)-degree <= 2D + 1.

    Each partial numerator is homogeneous of degree 2 in (a, b), so
    P_D/Q_D and the limit differ by a series of (a, b)-order >= 2D + 2,
    and the Q_D are units.  Below that degree the two products must agree.
    """
    D = THREE_PARAM_DEPTH
    cap = 2 * D + 1

    def tr(s: QSeries) -> QSeries:
        return s.truncate_param_degree(cap)

    cf = build_catalog_cf("THREE_PARAM", depth=D, order=N)
    p_prev, p = QSeries.one(N), tr(cf.b0)
    q_prev, q = QSeries.zero(N), QSeries.one(N)
    for a_k, b_k in cf.partials:
        p_prev, p = p, tr(b_k * p) + tr(a_k * p_prev)
        q_prev, q = q, tr(b_k * q) + tr(a_k * q_prev)

    num, den = QSeries.one(N), QSeries.one(N)
    for name in ("a", "b"):
        num = tr(num * product_build(_exps(N, (1,), 4), -1, param=name, order=N, param_exp=2))
        den = tr(den * product_build(_exps(N, (3,), 4), -1, param=name, order=N, param_exp=2))
    return tr(p * den), tr(q * num), D


def _three_param_lhs(N: int, seed: int) -> Side:
    lhs, _, depth = _three_param_ratio_sides(N)
    return Side(lhs, depth)


def _three_param_rhs(N: int, seed: int) -> QSeries:
    return _three_param_ratio_sides(N)[1]


def halve_b_negated(s: QSeries) -> QSeries:
    """Replace b^2 by -b: b^(2k) -> (-1)^k b^k; odd b-exponents are rejected."""

    def fn(n, exps, v):
        ea, eb, ec = exps
        if eb % 2:
            raise DomainError("odd b-exponent; b^2 -> -b is undefined")
        k = eb // 2
        return n, (ea, k, ec), -v if k % 2 else v

    return s.map_terms(fn)


def _three_param_special(N: int, seed: int) -> Side:
    value, depth = eval_series_with_depth(build_catalog_cf("THREE_PARAM", {"a": 0}, order=N))
    mapped = halve_b_negated(value)
    return Side([mapped, mapped], depth)


def _three_param_special_rhs(N: int, seed: int) -> list[QSeries]:
    return [_series_of("R1B_Q2")(N, seed).value, _r1b_q2_product(N, seed)]


# coloured partitions ---------------------------------------------------------


def _colored_lhs(side: str) -> Builder:
    def build(N: int, seed: int) -> list[QSeries]:
        return [colored_series(kind + side, N) for kind in "ABC"]

    return build


def _colored_rhs(side: str) -> Builder:
    def build(N: int, seed: int) -> list[QSeries]:
        s = _double_sum(0 if side == "N" else 1)(N, seed)
        return [s, s, s]

    return build


# ---------------------------------------------------------------------------
# the catalog


def _case(id, description, anchor, lhs, rhs, order=40, mode="none", max_order=None) -> IdentityCase:
    return IdentityCase(id, description, anchor, lhs, rhs, order, mode, max_order)


def _build_catalog() -> dict[str, IdentityCase]:
    cases = [
        _case("EULER_CF_FINITE", "Euler fraction convergents equal partial sums of prod a_i",
              "Euler continued fraction", _euler_convergents, _euler_partial_sums, mode="random"),
        _case("TELESCOPE_1", "1 + sum a_k/prod_{i<=k}(1-a_i) = 1/prod(1-a_i)",
              "telescoping sum (unrestricted)", _tele_unrestricted_sum, _tele_unrestricted_product, mode="random"),
        _case("TELESCOPE_2", "1 + sum a_k prod_{i<k}(1+a_i) = prod(1+a_i)",
              "telescoping sum (distinct)", _tele_distinct_sum, _tele_distinct_product, mode="random"),
        _case("THM_2_1", "telescoping fraction equals 1/prod(1-a_i)",
              "telescoping fraction (unrestricted)", _thm_cf("THM_2_1"), _thm_product("THM_2_1"), mode="random"),
        _case("THM_2_2", "telescoping fraction equals prod(1+a_i)",
              "telescoping fraction (distinct)", _thm_cf("THM_2_2"), _thm_product("THM_2_2"), mode="random"),
        _case("COR_16", "fraction with a_i = q^i, n = 12, equals 1/prod_{i<=12}(1-q^i)",
              "partitions into parts <= n", _telescoping_series("THM_2_1", range(1, 13)),
              _product_side(range(1, 13), -1), order=100),
        _case("COR_18", "fraction with a_i = q^i, n = 12, equals prod_{i<=12}(1+q^i)",
              "distinct partitions into parts <= n", _telescoping_series("THM_2_2", range(1, 13)),
              _product_side(range(1, 13), 1), order=100),
        _case("COR_20", "fraction with a_i = q^(2i-1), n = 10, equals 1/prod(1-q^(2i-1))",
              "partitions into odd parts", _telescoping_series("THM_2_1", range(1, 20, 2)),
              _product_side(range(1, 20, 2), -1), order=100),
        _case("COR_22", "fraction with a_i = q^(2i-1), n = 10, equals prod(1+q^(2i-1))",
              "distinct partitions into odd parts", _telescoping_series("THM_2_2", range(1, 20, 2)),
              _product_side(range(1, 20, 2), 1), order=100),
        _case("COR_24", "fraction with a_i = q^(2^i), i = 0..6, equals 1/prod(1-q^(2^i))",
              "binary partitions", _telescoping_series("THM_2_1", [2**i for i in range(7)]),
              _product_side([2**i for i in range(7)], -1), order=100),
        _case("COR_26", "fraction with a_i = q^(2^i), i = 0..5, equals (1-q^64)/(1-q)",
              "distinct binary partitions", _telescoping_series("THM_2_2", [2**i for i in range(6)]),
              _binary_closed_form(5), order=100),
        _case("COR_26B", "fraction with a_i = q^(3^i), i = 0..4, equals prod(1+q^(3^i))",
              "distinct ternary partitions", _telescoping_series("THM_2_2", [3**i for i in range(5)]),
              _product_side([3**i for i in range(5)], 1), order=100),
        _case("EULER_ODD_EQ_DISTINCT", "odd-part fraction equals distinct-part fraction",
              "Euler odd/distinct theorem", _odd_unrestricted_cf, _distinct_cf, order=60),
        _case("RR_G", "sum q^(n^2)/(q)_n = 1/((q;q^5)(q^4;q^5))",
              "first Rogers-Ramanujan identity", _rr_sum(0), _rr_product((1, 4)), order=100),
        _case("RR_H", "sum q^(n^2+n)/(q)_n = 1/((q^2;q^5)(q^3;q^5))",
              "second Rogers-Ramanujan identity", _rr_sum(1), _rr_product((2, 3)), order=100),
        _case("RR_CF_PRODUCT", "1/(1 + q/(1 + q^2/...)) equals the mod-5 product ratio",
              "Rogers-Ramanujan continued fraction", _series_of("RR"), _rr_cf_product, order=100),
        _case("LEBESGUE", "sum q^(k(k+1)/2)(-bq)_k/(q)_k = prod(1+bq^(2m))(1+q^m)",
              "Lebesgue identity", lambda N, s: _lebesgue_sum(N, s), _lebesgue_product, mode="generic"),
        _case("R1B_PRODUCT", "R(1, b) = prod(1+bq^(2m-1))/(1+bq^(2m))",
              "Lebesgue product for R(1, b)", _series_of("R_AB", {"a": 1}), _r1b_product, mode="generic"),
        _case("R1B_Q2", "R(1, b) at q -> q^2, b -> b/q equals prod(1+bq^(4m-3))/(1+bq^(4m-1))",
              "q^2 specialization of R(1, b)", _series_of("R1B_Q2"), _r1b_q2_product, mode="generic"),
        _case("LEMMA_NUM", "limit numerator of R(a, b) = sum a^k q^(k(k+1)/2)(-b/a)_k/(q)_k",
              "numerator of R(a, b)", _lemma_limit("P"), _lemma_sum(0), mode="generic"),
        _case("LEMMA_DEN", "limit denominator of R(a, b) = sum a^k q^(k(k+1)/2)(-bq/a)_k/(q)_k",
              "denominator of R(a, b)", _lemma_limit("Q"), _lemma_sum(1), mode="generic"),
        _case("EXPANSIONS_IJ", "double-sum expansions of numerator and denominator equal the single sums",
              "q-binomial expansion", _expansions_lhs, _expansions_rhs, mode="generic"),
        _case("NUM_DEN_SHIFT", "numerator double sum at b -> bq equals the denominator double sum",
              "numerator/denominator shift", _shifted_numerator, _double_sum(1), mode="generic"),
        _case("F_RECURRENCE", "f(a,c) = (1+a) f(aq,c) + acq f(aq^2,c)",
              "functional equation for f(a, c)", _f_sum(0), _f_recurrence_rhs, mode="generic"),
        _case("F_ITERATION", "limit numerator and denominator of F(a, c) are f(a,c) and f(aq,c)",
              "numerator/denominator of F(a, c)", _f_limit, _f_pair, mode="generic"),
        _case("GOLLNITZ_NUM", "numerator sum and limit numerator equal prod(1+bq^(4m-3))(1+q^(2m))",
              "Gollnitz-type numerator product", _gollnitz_lhs(True), _gollnitz_rhs(True), mode="generic"),
        _case("GOLLNITZ_DEN", "denominator sum and limit denominator equal prod(1+bq^(4m-1))(1+q^(2m))",
              "Gollnitz-type denominator product", _gollnitz_lhs(False), _gollnitz_rhs(False), mode="generic"),
        _case("CF_37A", "1 + q/(1 + q^2 + q^3/(1 + q^4 + ...)) equals the (2,3,7)/(1,5,6) mod-8 ratio",
              "mod-8 continued fraction", _series_of("R1B_Q2", {"b": 1}), _mod8_product((2, 3, 7), (1, 5, 6)),
              order=100),
        _case("GORDON_GOLLNITZ_38", "1 + q + q^2/(1 + q^3 + q^4/(1 + q^5 + ...)) equals the (3,4,5)/(1,4,7) ratio",
              "Gordon-Gollnitz continued fraction", _series_of("GG_38"), _mod8_product((3, 4, 5), (1, 4, 7)),
              order=100),
        _case("THREE_PARAM_39", "three-parameter fraction equals prod(1-a^2q^(4m-3))(1-b^2q^(4m-3))/(...(4m-1))",
              "three-parameter continued fraction", _three_param_lhs, _three_param_rhs, mode="generic"),
        _case("THREE_PARAM_SPEC", "three-parameter fraction at a = 0, b^2 -> -b equals the q^2 case of R(1, b)",
              "three-parameter specialization", _three_param_special, _three_param_special_rhs, mode="generic"),
        _case("COLORED_NUM", "coloured partition counts A, B, C of the numerator match its double sum",
              "coloured partitions (numerator)", _colored_lhs("N"), _colored_rhs("N"),
              max_order=COLORED_MAX_ORDER),
        _case("COLORED_DEN", "coloured partition counts A, B, C of the denominator match its double sum",
              "coloured partitions (denominator)", _colored_lhs("D"), _colored_rhs("D"),
              max_order=COLORED_MAX_ORDER),
    ]
    return {c.id: c for c in sorted(cases, key=lambda c: c.id)}


CATALOG: dict[str, IdentityCase] = _build_catalog()
UNIVARIATE_IDS = (
    "COR_16", "COR_18", "COR_20", "COR_22", "COR_24", "COR_26", "COR_26B",
    "RR_G", "RR_H", "RR_CF_PRODUCT", "CF_37A", "GORDON_GOLLNITZ_38",
)


def list_identities(catalog: Mapping[str, IdentityCase] | None = None) -> list[tuple[str, str, str]]:
    catalog = CATALOG if catalog is None else catalog
    return [(c.id, c.description, c.anchor) for c in sorted(catalog.values(), key=lambda c: c.id)]


def run_case(case: IdentityCase, order: int, seed: int = 1) -> IdentityReport:
    if order < 0:
        raise UsageError("order must be >= 0")
    N = case.effective_order(order)
    seed_field = seed if case.param_mode == "random" else None
    start = time.perf_counter()
    try:
        lhs, d1 = _unwrap(case.lhs(N, seed))
        rhs, d2 = _unwrap(case.rhs(N, seed))
        mismatch = compare_sides(lhs, rhs)
        status = "pass" if mismatch is None else "fail"
        error = None
    except (ArithmeticError, ValueError) as exc:
        mismatch, status, d1, d2 = None, "error", 0, 0
        error = f"{type(exc).__name__}: {exc}"
    elapsed = int(round((time.perf_counter() - start) * 1000))
    return IdentityReport(case.id, status, N, max(d1, d2), mismatch, elapsed, seed_field, error)


def verify_identity(
    id: str, order: int | None = None, seed: int = 1, catalog: Mapping[str, IdentityCase] | None = None
) -> IdentityReport:
    catalog = CATALOG if catalog is None else catalog
    try:
        case = catalog[id]
    except KeyError:
        raise UsageError(f"unknown identity {id!r}; valid ids: {', '.join(sorted(catalog))}") from None
    return run_case(case, case.default_order if order is None else order, seed)


def _verify_default(args: tuple[str, int, int]) -> IdentityReport:
    id, order, seed = args
    return verify_identity(id, order, seed)


def verify_all(
    order: int = 40,
    parallel: bool = False,
    seed: int = 1,
    catalog: Mapping[str, IdentityCase] | None = None,
    ids: Sequence[str] | None = None,
) -> list[IdentityReport]:
    """One report per catalog entry, sorted by id.

    Worker processes rebuild the default catalog themselves, so a custom
    ``catalog`` always runs in-process.
    """
    cat = CATALOG if catalog is None else catalog
    wanted = sorted(cat if ids is None else ids)
    for id in wanted:
        if id not in cat:
            raise UsageError(f"unknown identity {id!r}; valid ids: {', '.join(sorted(cat))}")
    if parallel and catalog is None and len(wanted) > 1:
        with ProcessPoolExecutor() as pool:
            reports = list(pool.map(_verify_default, [(i, order, seed) for i in wanted]))
    else:
        reports = [run_case(cat[i], order, seed) for i in wanted]
    return sorted(reports, key=lambda r: r.id)
