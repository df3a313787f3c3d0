"""Finite continued fractions over the truncated series ring (or over rationals).

A fraction is stored as ``b0 + a1/(b1 + a2/(b2 + ...))`` and evaluated with the
three-term recurrence

    P_k = b_k P_{k-1} + a_k P_{k-2},   Q_k = b_k Q_{k-1} + a_k Q_{k-2},

seeded with P_{-1} = 1, P_0 = b0, Q_{-1} = 0, Q_0 = 1.  Entries may be
:class:`~qcontfrac.qseries.QSeries` of a common order or plain rationals; the
recurrence only needs ``+`` and ``*``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Mapping, Sequence

from .errors import ConvergenceError, DomainError, UsageError
from .qseries import QSeries, as_rational

DEPTH_SLACK = 8


@dataclass(frozen=True)
class CFSpec:
    b0: object
    partials: tuple[tuple[object, object], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "partials", tuple((a, b) for a, b in self.partials))
        orders = {x.order for x in self._entries() if isinstance(x, QSeries)}
        if len(orders) > 1:
            raise UsageError(f"continued fraction mixes series orders {sorted(orders)}")

    def _entries(self):
        yield self.b0
        for a, b in self.partials:
            yield a
            yield b

    @property
    def depth(self) -> int:
        return len(self.partials)

    @property
    def order(self) -> int | None:
        return self.b0.order if isinstance(self.b0, QSeries) else None

    def truncated(self, depth: int) -> "CFSpec":
        if depth > self.depth:
            raise UsageError(f"depth {depth} exceeds fraction depth {self.depth}")
        return CFSpec(self.b0, self.partials[:depth])


@dataclass(frozen=True)
class ConvergentPair:
    P: object
    Q: object
    depth: int

    def ratio(self):
        """P/Q as a rational (scalar fractions) or a series (Q must be a unit)."""
        if isinstance(self.Q, QSeries):
            return self.P * self.Q.inverse()
        if self.Q == 0:
            raise DomainError(f"convergent denominator vanishes at depth {self.depth}")
        return Fraction(self.P) / Fraction(self.Q)


def _unit(x):
    if isinstance(x, QSeries):
        return QSeries.one(x.order), QSeries.zero(x.order)
    return 1, 0


def convergents(cf: CFSpec) -> Iterator[ConvergentPair]:
    """Yield the convergents at depths 0, 1, ..., cf.depth."""
    one, zero = _unit(cf.b0)
    p_prev, p = one, cf.b0
    q_prev, q = zero, one
    yield ConvergentPair(p, q, 0)
    for k, (a, b) in enumerate(cf.partials, start=1):
        p_prev, p = p, b * p + a * p_prev
        q_prev, q = q, b * q + a * q_prev
        yield ConvergentPair(p, q, k)


def convergent(cf: CFSpec, n: int) -> ConvergentPair:
    if n < 0 or n > cf.depth:
        raise UsageError(f"depth {n} outside 0..{cf.depth}")
    for pair in convergents(cf.truncated(n)):
        pass
    return pair


def evaluate_nested(cf: CFSpec):
    """Evaluate from the innermost level outwards; raises on any zero denominator.

    This is the literal reading of the nested display, so unlike the
    convergent ratio it notices a vanishing intermediate denominator.
    """
    if not cf.partials:
        return cf.b0
    x = cf.partials[-1][1]
    for i in range(cf.depth - 1, 0, -1):
        if x == 0:
            raise DomainError("zero denominator in nested evaluation")
        x = cf.partials[i - 1][1] + Fraction(cf.partials[i][0]) / x
    if x == 0:
        raise DomainError("zero denominator in nested evaluation")
    return cf.b0 + Fraction(cf.partials[0][0]) / x


# ---------------------------------------------------------------------------
# Euler's construction and equivalence transformations


def euler_cf_display(terms: Sequence) -> CFSpec:
    """Euler's fraction in its displayed nesting:

        t0 / (1 - t1/(1 + t1 - t2/(1 + t2 - ...)))

    Its depth-(k+1) convergent is the partial sum through k of
    sum_j prod_{i<=j} t_i.
    """
    if not terms:
        raise UsageError("need at least one term")
    t = list(terms)
    one, zero = _unit(t[0])
    partials = [(t[0], one)]
    for tk in t[1:]:
        partials.append((-tk, one + tk))
    return CFSpec(zero, partials)


def euler_cf_from_terms(terms: Sequence) -> CFSpec:
    """Euler's fraction with the leading quotient contracted.

    ``t0 + t0*t1/(1 - t2/(1 + t2 - t3/(1 + t3 - ...)))`` is the same value as
    :func:`euler_cf_display` but indexed so that the depth-k convergent equals
    sum_{j<=k} prod_{i<=j} t_i exactly.
    """
    if not terms:
        raise UsageError("need at least one term")
    t = list(terms)
    one, _ = _unit(t[0])
    if len(t) == 1:
        return CFSpec(t[0])
    partials = [(t[0] * t[1], one)]
    for tk in t[2:]:
        partials.append((-tk, one + tk))
    return CFSpec(t[0], partials)


def _check_invertible(c) -> None:
    if isinstance(c, QSeries):
        c0 = c.constant_term()
        if not c0.is_constant() or c0 == 0:
            raise DomainError("scale factor is not a unit in the series ring")
    elif c == 0:
        raise DomainError("scale factor is zero")


def equivalence_transform(cf: CFSpec, scales: Sequence) -> CFSpec:
    """Rescale level k by c_k: a_k -> c_k c_{k-1} a_k, b_k -> c_k b_k (c_0 = 1).

    Every convergent P_n/Q_n is multiplied top and bottom by c_1...c_n, so all
    ratios are unchanged.
    """
    if len(scales) != cf.depth:
        raise UsageError(f"need {cf.depth} scale factors, got {len(scales)}")
    for c in scales:
        _check_invertible(c)
    prev = 1
    out = []
    for (a, b), c in zip(cf.partials, scales):
        out.append((c * prev * a, c * b))
        prev = c
    return CFSpec(cf.b0, out)


# ---------------------------------------------------------------------------
# series evaluation


def eval_series(cf: CFSpec, order: int | None = None, max_depth: int | None = None) -> QSeries:
    """Expand an infinite fraction (given to sufficient depth) as a series.

    Consecutive convergents differ by (-1)^n a_1...a_{n+1} / (Q_n Q_{n+1}), so
    with unit denominators depths n and n+1 agree through q^N exactly when the
    q-valuations of a_1..a_{n+1} sum past N.  The first such n is used.
    """
    return eval_series_with_depth(cf, order, max_depth)[0]


def eval_series_with_depth(
    cf: CFSpec, order: int | None = None, max_depth: int | None = None
) -> tuple[QSeries, int]:
    N = cf.order if order is None else order
    if N is None:
        raise UsageError("eval_series needs a series-valued fraction")
    if N > cf.order:
        raise UsageError(f"requested order {N} exceeds fraction order {cf.order}")
    guard = N + DEPTH_SLACK if max_depth is None else max_depth
    total = 0
    pending = None
    for pair in convergents(cf):
        if pending is not None:
            if not _is_unit(pair.Q):
                raise DomainError(f"convergent denominator at depth {pair.depth} is not a unit")
            P, Q = pending.P.truncate(N), pending.Q.truncate(N)
            return P * Q.inverse(), pending.depth
        n = pair.depth
        if n >= cf.depth or n > guard:
            break
        total += cf.partials[n][0].valuation()
        if total > N:
            if not _is_unit(pair.Q):
                raise DomainError(f"convergent denominator at depth {n} is not a unit")
            pending = pair
    raise ConvergenceError(
        f"no stabilization through q^{N} within depth {min(cf.depth, guard)}"
    )


def _is_unit(s: QSeries) -> bool:
    c0 = s.constant_term()
    return c0.is_constant() and c0 != 0


def limit_pair(cf: CFSpec, order: int | None = None) -> ConvergentPair:
    """Numerator and denominator limits through q^order.

    P_m - P_{m-1} = (b_m - 1) P_{m-1} + a_m P_{m-2}, so once every later partial
    has a_m and b_m - 1 vanishing through q^N the convergents are frozen.  The
    fraction must be supplied deep enough that its last partial already
    satisfies this; partials beyond the supplied depth are assumed to keep
    (non-strictly) growing q-valuations.
    """
    N = cf.order if order is None else order
    last_bad = 0
    for m, (a, b) in enumerate(cf.partials, start=1):
        if a.valuation() <= N or (b - 1).valuation() <= N:
            last_bad = m
    if last_bad == cf.depth:
        raise ConvergenceError(f"numerator/denominator not frozen through q^{N} at depth {cf.depth}")
    pair = convergent(cf, last_bad)
    return ConvergentPair(pair.P.truncate(N), pair.Q.truncate(N), last_bad)


def stable_order(cf: CFSpec, n: int) -> float:
    """Highest q-power on which P_n, Q_n already agree with all deeper convergents."""
    if n >= cf.depth:
        raise UsageError("need partials beyond depth n to bound the tail")
    worst = math.inf
    for a, b in cf.partials[n:]:
        worst = min(worst, a.valuation(), (b - 1).valuation())
    return worst - 1


def finite_value_series(build: Callable[[int], CFSpec], order: int, slack: int = 16) -> tuple[QSeries, int]:
    """Value of a finite fraction whose convergent denominator may lack a constant term.

    ``build(M)`` must return the fraction with entries truncated at order M and
    exact there (polynomial partials).  P and Q share a power q^v; after
    dividing it out the quotient is correct through q^(M - v).  M grows until
    that covers ``order``.
    """
    M = order + slack
    while True:
        cf = build(M)
        pair = convergent(cf, cf.depth)
        v = pair.Q.valuation()
        if v != math.inf and M - v >= order:
            if pair.P.valuation() < v:
                raise DomainError("fraction has a pole at q = 0")
            shift = int(v)
            P = _shift_down(pair.P, shift, order)
            Q = _shift_down(pair.Q, shift, order)
            return P * Q.inverse(), cf.depth
        M = 2 * M + (0 if v == math.inf else int(v))


def _shift_down(s: QSeries, v: int, order: int) -> QSeries:
    return QSeries(s.coeffs[v : v + order + 1], order)


# ---------------------------------------------------------------------------
# catalog constructors


def _lift(x, N: int) -> QSeries:
    if isinstance(x, QSeries):
        if x.order != N:
            raise UsageError(f"parameter order {x.order} != {N}")
        return x
    return QSeries.constant(as_rational(x), N)


def _qm(e: int, N: int, coeff=1) -> QSeries:
    return QSeries.monomial(coeff, e, order=N)


def _param(params: Mapping, name: str, N: int) -> QSeries:
    if name in params:
        return _lift(params[name], N)
    return QSeries.param(name, N)


def telescoping_partials(terms: Sequence, kind: str) -> tuple[object, list]:
    """Partials of the equivalence-transformed telescoping fractions.

    kind "unrestricted": value 1/prod(1 - a_i),
        1/(1 - a1/(1 - (1-a1)a2/(a1+a2-a1a2 - a1(1-a2)a3/(a2+a3-a2a3 - ...))))
    kind "distinct": value prod(1 + a_i),
        1/(1 - a1/(1 + a1 - (1+a1)a2/(a1+a2+a1a2 - a1(1+a2)a3/(a2+a3+a2a3 - ...))))
    """
    if kind not in ("unrestricted", "distinct"):
        raise UsageError(f"unknown kind {kind!r}")
    a = [None] + list(terms)
    n = len(terms)
    one, zero = _unit(a[1]) if n else (1, 0)
    s = -1 if kind == "unrestricted" else 1
    partials = [(one, one)]
    if n >= 1:
        partials.append((-a[1], one if s < 0 else one + a[1]))
    for k in range(2, n + 1):
        prev2 = one if k == 2 else a[k - 2]
        num = prev2 * a[k] * (one + s * a[k - 1])
        den = a[k - 1] + a[k] + s * a[k - 1] * a[k]
        partials.append((-num, den))
    return zero, partials


def _terms_from(params: Mapping, N: int) -> list:
    if "terms" in params:
        return list(params["terms"])
    if "exponents" in params:
        return [_qm(e, N) for e in params["exponents"]]
    raise UsageError("telescoping fraction needs 'terms' or 'exponents'")


def build_catalog_cf(
    id: str, params: Mapping | None = None, depth: int | None = None, order: int = 40
) -> CFSpec:
    """Construct one of the named fractions.

    R_AB         1 + bq/(1 + aq + bq^2/(1 + aq^2 + ...))           params a, b
    F_AC         1 + a + acq/(1 + aq + acq^2/(1 + aq^2 + ...))     params a, c
    RR           1/(1 + q/(1 + q^2/(1 + q^3/...)))
    R1B_Q2       1 + bq/(1 + q^2 + bq^3/(1 + q^4 + ...))           param b
    GG_38        1 + q + q^2/(1 + q^3 + q^4/(1 + q^5 + ...))
    THREE_PARAM  1 - ab + (a - bq)(b - aq)/((1 - ab)(1 + q^2) + ...) params a, b
    THM_2_1      telescoping fraction for 1/prod(1 - a_i)          terms | exponents
    THM_2_2      telescoping fraction for prod(1 + a_i)            terms | exponents
    EXP, LOG     cleared fractions for exp(z), log((1+z)/(1-z))    param z (rational)
    PI           4/(1 + 1^2/(2 + 3^2/(2 + ...)))

    Parameters not supplied stay symbolic.  ``depth`` defaults to order + 8
    for the infinite fractions.
    """
    params = dict(params or {})
    N = order
    if depth is None:
        depth = N + DEPTH_SLACK
    if depth < 0 or N < 0:
        raise UsageError("depth and order must be >= 0")

    if id == "R_AB":
        a, b = _param(params, "a", N), _param(params, "b", N)
        return CFSpec(
            QSeries.one(N),
            [(b * _qm(k, N), 1 + a * _qm(k, N)) for k in range(1, depth + 1)],
        )
    if id == "F_AC":
        a, c = _param(params, "a", N), _param(params, "c", N)
        ac = a * c
        return CFSpec(1 + a, [(ac * _qm(k, N), 1 + a * _qm(k, N)) for k in range(1, depth + 1)])
    if id == "RR":
        one = QSeries.one(N)
        partials = [(one, one)] + [(_qm(k - 1, N), one) for k in range(2, depth + 1)]
        return CFSpec(QSeries.zero(N), partials[:depth])
    if id == "R1B_Q2":
        b = _param(params, "b", N)
        return CFSpec(
            QSeries.one(N),
            [(b * _qm(2 * k - 1, N), 1 + _qm(2 * k, N)) for k in range(1, depth + 1)],
        )
    if id == "GG_38":
        return CFSpec(
            1 + _qm(1, N),
            [(_qm(2 * k, N), 1 + _qm(2 * k + 1, N)) for k in range(1, depth + 1)],
        )
    if id == "THREE_PARAM":
        a, b = _param(params, "a", N), _param(params, "b", N)
        lead = 1 - a * b
        partials = []
        for k in range(1, depth + 1):
            qk = _qm(2 * k - 1, N)
            partials.append(((a - b * qk) * (b - a * qk), lead * (1 + _qm(2 * k, N))))
        return CFSpec(lead, partials)
    if id in ("THM_2_1", "THM_2_2"):
        kind = "unrestricted" if id == "THM_2_1" else "distinct"
        terms = _terms_from(params, N)
        if terms and isinstance(terms[0], QSeries) or "exponents" in params:
            terms = [_lift(t, N) for t in terms]
        b0, partials = telescoping_partials(terms, kind)
        return CFSpec(b0, partials)
    if id == "EXP":
        z = as_rational(params.get("z", 1))
        partials = [(1, 1), (-z, 1 + z)] + [(-(k - 2) * z, (k - 1) + z) for k in range(3, depth + 1)]
        return CFSpec(0, partials[:depth])
    if id == "LOG":
        z = as_rational(params.get("z", Fraction(1, 3)))
        z2 = z * z
        partials = [(2 * z, 1), (-z2, z2 + 3)]
        partials += [(-((2 * k - 3) ** 2) * z2, (2 * k - 3) * z2 + (2 * k - 1)) for k in range(3, depth + 1)]
        return CFSpec(0, partials[:depth])
    if id == "PI":
        partials = [(4, 1)] + [((2 * k - 3) ** 2, 2) for k in range(2, depth + 1)]
        return CFSpec(0, partials[:depth])
    raise UsageError(f"unknown fraction id {id!r}; known: {', '.join(CATALOG_CF_IDS)}")


CATALOG_CF_IDS = (
    "R_AB",
    "F_AC",
    "RR",
    "R1B_Q2",
    "GG_38",
    "THREE_PARAM",
    "THM_2_1",
    "THM_2_2",
    "EXP",
    "LOG",
    "PI",
)
