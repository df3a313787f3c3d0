"""Exact truncated power series in q.

Coefficients are Laurent polynomials in the fixed parameters ``a``, ``b``, ``c``
with rational coefficients.  A series of order N carries the coefficients of
q^0 .. q^N inclusive; every operation silently drops anything past q^N.

Scalars are ``int`` or ``fractions.Fraction``.  Integral values are kept as
``int`` internally because almost every coefficient met in practice is an
integer and ``int`` arithmetic is several times faster than ``Fraction``.

Internally a parameter monomial a^i b^j c^k is packed into a single integer so
that multiplying monomials is integer addition.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Sequence, Union

from .errors import DomainError, UsageError

PARAMS = ("a", "b", "c")

Scalar = Union[int, Fraction]

_M = 1 << 20
_H = _M >> 1


def pack(ea: int, eb: int, ec: int) -> int:
    if not (-_H < ea < _H and -_H < eb < _H and -_H < ec < _H):
        raise UsageError("parameter exponent out of range")
    return (ea * _M + eb) * _M + ec


def unpack(key: int) -> tuple[int, int, int]:
    ec = (key + _H) % _M - _H
    key = (key - ec) // _M
    eb = (key + _H) % _M - _H
    ea = (key - eb) // _M
    return ea, eb, ec


_UNIT_KEY = {"a": pack(1, 0, 0), "b": pack(0, 1, 0), "c": pack(0, 0, 1)}
_AXIS = {"a": 0, "b": 1, "c": 2}


def as_rational(x) -> Scalar:
    """Validate a scalar and return it in canonical form."""
    if isinstance(x, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


def _norm(v):
    if type(v) is Fraction and v.denominator == 1:
        return v.numerator
    return v


def _param_key(name: str) -> int:
    try:
        return _UNIT_KEY[name]
    except KeyError:
        raise UsageError(f"unknown parameter {name!r}; expected one of a, b, c") from None


# ---------------------------------------------------------------------------
# polynomial kernels on raw dicts {packed key: coefficient}


def _padd(x: dict, y: dict, sign: int = 1) -> dict:
    out = dict(x)
    for k, v in y.items():
        s = out.get(k, 0) + (v if sign > 0 else -v)
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _pmul_into(acc: dict, x: dict, y: dict) -> None:
    if len(x) > len(y):
        x, y = y, x
    get = acc.get
    for kx, vx in x.items():
        for ky, vy in y.items():
            k = kx + ky
            acc[k] = get(k, 0) + vx * vy


def _clean(d: dict) -> dict:
    return {k: _norm(v) for k, v in d.items() if v}


def _pscale(x: dict, c) -> dict:
    if not c:
        return {}
    return {k: _norm(v * c) for k, v in x.items()}


# ---------------------------------------------------------------------------


class ParamPoly:
    """Laurent polynomial in a, b, c with rational coefficients.

    Built from a mapping ``{(ea, eb, ec): coefficient}``; zero coefficients are
    never stored.
    """

    __slots__ = ("_t",)

    def __init__(self, terms: Mapping[tuple[int, int, int], Scalar] | None = None):
        t: dict[int, Scalar] = {}
        for (ea, eb, ec), c in (terms or {}).items():
            k = pack(ea, eb, ec)
            t[k] = t.get(k, 0) + as_rational(c)
        self._t = _clean(t)

    @classmethod
    def _raw(cls, t: dict) -> "ParamPoly":
        obj = object.__new__(cls)
        obj._t = t
        return obj

    @classmethod
    def constant(cls, value: Scalar) -> "ParamPoly":
        value = as_rational(value)
        return cls._raw({0: value} if value else {})

    @classmethod
    def monomial(cls, coeff: Scalar = 1, ea: int = 0, eb: int = 0, ec: int = 0) -> "ParamPoly":
        return cls({(ea, eb, ec): coeff})

    def terms(self) -> dict[tuple[int, int, int], Fraction]:
        return {unpack(k): Fraction(v) for k, v in self._t.items()}

    def items(self) -> Iterator[tuple[tuple[int, int, int], Scalar]]:
        for k in sorted(self._t, key=unpack):
            yield unpack(k), self._t[k]

    def coeff(self, ea: int = 0, eb: int = 0, ec: int = 0) -> Fraction:
        return Fraction(self._t.get(pack(ea, eb, ec), 0))

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    def __eq__(self, other) -> bool:
        if isinstance(other, ParamPoly):
            return self._t == other._t
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._t == ParamPoly.constant(other)._t
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._t.items()))

    @staticmethod
    def _lift(other) -> "ParamPoly":
        if isinstance(other, ParamPoly):
            return other
        return ParamPoly.constant(other)

    def __add__(self, other):
        return ParamPoly._raw(_padd(self._t, ParamPoly._lift(other)._t))

    __radd__ = __add__

    def __sub__(self, other):
        return ParamPoly._raw(_padd(self._t, ParamPoly._lift(other)._t, -1))

    def __rsub__(self, other):
        return ParamPoly._lift(other) - self

    def __neg__(self):
        return ParamPoly._raw({k: -v for k, v in self._t.items()})

    def __mul__(self, other):
        other = ParamPoly._lift(other)
        acc: dict = {}
        _pmul_into(acc, self._t, other._t)
        return ParamPoly._raw(_clean(acc))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"ParamPoly({self})"

    def __str__(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for (ea, eb, ec), c in self.items():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(PARAMS, (ea, eb, ec))
                if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


class Monomial(NamedTuple):
    """coeff * a^ea * b^eb * c^ec * q^q -- the base z of a q-Pochhammer symbol."""

    coeff: Scalar = 1
    ea: int = 0
    eb: int = 0
    ec: int = 0
    q: int = 0


class QSeries:
    """Truncated power series sum_{n<=order} p_n(a, b, c) q^n.

    Values are immutable.  Supports ``+ - *`` with other series of the same
    order and with scalars; ``/`` and negative powers go through
    :meth:`inverse`.
    """

    __slots__ = ("order", "_c", "_uni")

    def __init__(self, coeffs: Iterable, order: int):
        if order < 0:
            raise UsageError("order must be >= 0")
        c = []
        for x in coeffs:
            if len(c) > order:
                break
            if isinstance(x, ParamPoly):
                c.append(dict(x._t))
            elif isinstance(x, dict):
                c.append(ParamPoly(x)._t)
            else:
                x = as_rational(x)
                c.append({0: x} if x else {})
        c.extend({} for _ in range(order + 1 - len(c)))
        self.order = order
        self._c = tuple(c)
        self._uni = None

    @classmethod
    def _raw(cls, c, order: int) -> "QSeries":
        obj = object.__new__(cls)
        obj.order = order
        obj._c = tuple(c)
        obj._uni = None
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls((), order)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls((1,), order)

    @classmethod
    def constant(cls, value, order: int) -> "QSeries":
        return cls((value,), order)

    @classmethod
    def monomial(
        cls, coeff: Scalar = 1, qexp: int = 0, ea: int = 0, eb: int = 0, ec: int = 0, *, order: int
    ) -> "QSeries":
        if qexp < 0:
            raise DomainError("negative q-exponent is not representable")
        c = [{} for _ in range(order + 1)]
        coeff = as_rational(coeff)
        if qexp <= order and coeff:
            c[qexp] = {pack(ea, eb, ec): coeff}
        return cls._raw(c, order)

    @classmethod
    def param(cls, name: str, order: int) -> "QSeries":
        """The bare symbol ``a``, ``b`` or ``c``."""
        c = [{} for _ in range(order + 1)]
        c[0] = {_param_key(name): 1}
        return cls._raw(c, order)

    @classmethod
    def q(cls, order: int) -> "QSeries":
        return cls.monomial(1, 1, order=order)

    # -- basic access -------------------------------------------------------

    @property
    def coeffs(self) -> tuple[ParamPoly, ...]:
        return tuple(ParamPoly._raw(dict(d)) for d in self._c)

    def __getitem__(self, n: int) -> ParamPoly:
        return ParamPoly._raw(dict(self._c[n]))

    def coeff(self, n: int, ea: int = 0, eb: int = 0, ec: int = 0) -> Fraction:
        if not 0 <= n <= self.order:
            raise UsageError(f"q-power {n} outside 0..{self.order}")
        return Fraction(self._c[n].get(pack(ea, eb, ec), 0))

    def is_univariate(self) -> bool:
        if self._uni is None:
            self._uni = all(not d or (len(d) == 1 and 0 in d) for d in self._c)
        return self._uni

    def scalars(self) -> list[Scalar]:
        """Coefficients of a parameter-free series as plain numbers."""
        if not self.is_univariate():
            raise UsageError("series has parameter content")
        return [d.get(0, 0) for d in self._c]

    def valuation(self) -> float:
        """Lowest q-power with a nonzero coefficient (``inf`` for zero)."""
        for n, d in enumerate(self._c):
            if d:
                return n
        return math.inf

    def is_zero(self) -> bool:
        return not any(self._c)

    def constant_term(self) -> ParamPoly:
        return self[0]

    def param_exponent_bounds(self) -> dict[str, tuple[int, int]]:
        """Min and max exponent of each parameter over all stored monomials."""
        lo = [0, 0, 0]
        hi = [0, 0, 0]
        for d in self._c:
            for k in d:
                for i, e in enumerate(unpack(k)):
                    lo[i] = min(lo[i], e)
                    hi[i] = max(hi[i], e)
        return {p: (lo[i], hi[i]) for i, p in enumerate(PARAMS)}

    def has_negative_exponents(self) -> bool:
        return any(lo < 0 for lo, _ in self.param_exponent_bounds().values())

    def iter_terms(self) -> Iterator[tuple[int, tuple[int, int, int], Scalar]]:
        """Yield ``(q-power, (ea, eb, ec), coeff)`` in q-major, exponent-minor order."""
        for n, d in enumerate(self._c):
            for key in sorted(d, key=unpack):
                yield n, unpack(key), d[key]

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            if other.order != self.order:
                raise UsageError(f"order mismatch: {self.order} vs {other.order}")
            return other
        if isinstance(other, ParamPoly):
            return QSeries((other,), self.order)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QSeries.constant(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QSeries._raw([_padd(x, y) for x, y in zip(self._c, other._c)], self.order)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QSeries._raw([_padd(x, y, -1) for x, y in zip(self._c, other._c)], self.order)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return QSeries._raw([{k: -v for k, v in d.items()} for d in self._c], self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = as_rational(other)
            return QSeries._raw([_pscale(d, c) for d in self._c], self.order)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_univariate() and other.is_univariate():
            out = _conv_scalar(self.scalars(), other.scalars(), self.order)
            res = QSeries._raw([{0: v} if v else {} for v in out], self.order)
            res._uni = True
            return res
        return QSeries._raw(_conv_poly(self._c, other._c, self.order), self.order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                raise DomainError("division by zero")
            return self * (Fraction(1) / other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = QSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, ParamPoly)) and not isinstance(other, bool):
            other = self._coerce(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and self._c == other._c

    def __hash__(self) -> int:
        return hash((self.order, tuple(frozenset(d.items()) for d in self._c)))

    def inverse(self) -> "QSeries":
        """Multiplicative inverse; the constant term must be a nonzero rational."""
        c0 = self._c[0]
        if len(c0) != 1 or 0 not in c0:
            raise DomainError("constant term is not a nonzero rational; series is not a unit")
        inv0 = _norm(Fraction(1) / c0[0])
        N = self.order
        if self.is_univariate():
            s = self.scalars()
            t = [inv0]
            nz = [(k, v) for k, v in enumerate(s) if k and v]
            for n in range(1, N + 1):
                acc = 0
                for k, v in nz:
                    if k > n:
                        break
                    acc += v * t[n - k]
                t.append(_norm(-acc * inv0))
            res = QSeries._raw([{0: v} if v else {} for v in t], N)
            res._uni = True
            return res
        s = self._c
        t = [{0: inv0}]
        nz = [k for k in range(1, N + 1) if s[k]]
        for n in range(1, N + 1):
            acc: dict = {}
            for k in nz:
                if k > n:
                    break
                if t[n - k]:
                    _pmul_into(acc, s[k], t[n - k])
            t.append(_pscale(_clean(acc), -inv0))
        return QSeries._raw(t, N)

    # -- substitutions --------------------------------------------------------

    def truncate(self, order: int) -> "QSeries":
        """Drop coefficients above ``order`` (which must not exceed the current order)."""
        if order > self.order:
            raise UsageError("cannot raise the order of a truncated series")
        return QSeries._raw(self._c[: order + 1], order)

    def subst_q_power(self, m: int) -> "QSeries":
        """Apply q -> q^m, keeping the order."""
        if not isinstance(m, int) or m < 1:
            raise UsageError("q-power substitution needs m >= 1")
        c = [{} for _ in range(self.order + 1)]
        for n, d in enumerate(self._c):
            if n * m > self.order:
                break
            c[n * m] = dict(d)
        return QSeries._raw(c, self.order)

    def subst_param_qshift(self, param: str, m: int) -> "QSeries":
        """Apply ``param -> param * q^m``: monomial x^i q^n becomes x^i q^(n + m*i)."""
        _param_key(param)
        axis = _AXIS[param]
        N = self.order
        c = [{} for _ in range(N + 1)]
        for n, d in enumerate(self._c):
            for k, v in d.items():
                n2 = n + m * unpack(k)[axis]
                if n2 < 0:
                    raise DomainError(f"shift {param}->{param}q^{m} produces negative q-power")
                if n2 <= N:
                    c[n2][k] = v
        return QSeries._raw(c, N)

    def specialize(self, assignments: Mapping[str, Scalar]) -> "QSeries":
        """Substitute rational values for parameters; unassigned ones stay symbolic."""
        vals = {}
        for p, v in assignments.items():
            _param_key(p)
            vals[_AXIS[p]] = as_rational(v)
        c = []
        for d in self._c:
            acc: dict = {}
            for k, v in d.items():
                e = list(unpack(k))
                for axis, val in vals.items():
                    if e[axis]:
                        if val == 0 and e[axis] < 0:
                            raise DomainError(f"{PARAMS[axis]}=0 with negative exponent")
                        v = v * Fraction(val) ** e[axis]
                        e[axis] = 0
                    if not v:
                        break
                if v:
                    k2 = pack(*e)
                    acc[k2] = acc.get(k2, 0) + v
            c.append(_clean(acc))
        return QSeries._raw(c, self.order)

    def map_terms(
        self, fn: Callable[[int, tuple[int, int, int], Scalar], tuple[int, tuple[int, int, int], Scalar] | None]
    ) -> "QSeries":
        """Rebuild the series term by term; ``fn`` returns the new term or None to drop it."""
        N = self.order
        c: list[dict] = [{} for _ in range(N + 1)]
        for n, e, v in self.iter_terms():
            r = fn(n, e, v)
            if r is None:
                continue
            n2, e2, v2 = r
            if n2 < 0:
                raise DomainError("map produced a negative q-power")
            if n2 <= N:
                k = pack(*e2)
                c[n2][k] = c[n2].get(k, 0) + as_rational(v2)
        return QSeries._raw([_clean(d) for d in c], N)

    def truncate_param_degree(self, max_degree: int, params: Sequence[str] = ("a", "b")) -> "QSeries":
        """Drop monomials whose total degree in ``params`` exceeds ``max_degree``."""
        axes = [_AXIS[p] for p in params]
        c = []
        for d in self._c:
            c.append({k: v for k, v in d.items() if sum(unpack(k)[i] for i in axes) <= max_degree})
        return QSeries._raw(c, self.order)

    # -- serialization --------------------------------------------------------

    def to_json(self) -> list[dict]:
        out = []
        for n, d in enumerate(self._c):
            terms = []
            for key in sorted(d, key=unpack):
                ea, eb, ec = unpack(key)
                v = Fraction(d[key])
                terms.append({"ea": ea, "eb": eb, "ec": ec, "num": str(v.numerator), "den": str(v.denominator)})
            out.append({"power": n, "terms": terms})
        return out

    @classmethod
    def from_json(cls, data: list[dict]) -> "QSeries":
        order = max((entry["power"] for entry in data), default=0)
        c: list[dict] = [{} for _ in range(order + 1)]
        for entry in data:
            d = c[entry["power"]]
            for t in entry["terms"]:
                k = pack(t["ea"], t["eb"], t["ec"])
                d[k] = d.get(k, 0) + Fraction(int(t["num"]), int(t["den"]))
        return cls._raw([_clean(d) for d in c], order)

    def __repr__(self) -> str:
        shown = [f"({ParamPoly._raw(d)})*q^{n}" for n, d in enumerate(self._c) if d][:8]
        tail = " + ..." if sum(1 for d in self._c if d) > 8 else ""
        return f"QSeries[{self.order}]({' + '.join(shown) or '0'}{tail})"


def _conv_scalar(x: list, y: list, N: int) -> list:
    out = [0] * (N + 1)
    ny = [(j, v) for j, v in enumerate(y) if v]
    for i, u in enumerate(x):
        if not u:
            continue
        lim = N - i
        for j, v in ny:
            if j > lim:
                break
            out[i + j] += u * v
    return [_norm(v) for v in out]


def _conv_poly(x: Sequence[dict], y: Sequence[dict], N: int) -> list[dict]:
    out: list[dict] = [{} for _ in range(N + 1)]
    ny = [(j, d) for j, d in enumerate(y) if d]
    for i, dx in enumerate(x):
        if not dx:
            continue
        lim = N - i
        for j, dy in ny:
            if j > lim:
                break
            _pmul_into(out[i + j], dx, dy)
    return [_clean(d) for d in out]


def _mul_binomial(c: Sequence[dict], coeff, key: int, shift: int, N: int) -> list[dict]:
    """Multiply raw coefficients by (1 + coeff * x^key * q^shift)."""
    out = [dict(d) for d in c]
    for n in range(shift, N + 1):
        src = c[n - shift]
        if not src:
            continue
        dst = out[n]
        for k, v in src.items():
            k2 = k + key
            dst[k2] = dst.get(k2, 0) + coeff * v
    return out[:shift] + [_clean(d) for d in out[shift:]]


# ---------------------------------------------------------------------------
# module-level operations


def series_arith(lhs: QSeries, rhs: QSeries, op: str) -> QSeries:
    if lhs.order != rhs.order:
        raise UsageError(f"order mismatch: {lhs.order} vs {rhs.order}")
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise UsageError(f"unknown op {op!r}")


def series_inverse(s: QSeries) -> QSeries:
    return s.inverse()


def subst_q_power(s: QSeries, m: int) -> QSeries:
    return s.subst_q_power(m)


def subst_param_qshift(s: QSeries, param: str, m: int) -> QSeries:
    return s.subst_param_qshift(param, m)


def specialize(s: QSeries, assignments: Mapping[str, Scalar]) -> QSeries:
    return s.specialize(assignments)


def coeff_extract(s: QSeries, n: int, ea: int = 0, eb: int = 0, ec: int = 0) -> Fraction:
    return s.coeff(n, ea, eb, ec)


def pochhammer(base: Monomial | tuple, k: int | float, order: int, step: int = 1) -> QSeries:
    """(z; q^step)_k = prod_{j<k} (1 - z q^(step*j)), truncated at ``order``.

    ``k`` may be ``math.inf``; the product then stops once the factor's q-power
    exceeds the order, which needs z to carry a positive q-power.
    """
    z = Monomial(*base)
    if step < 1:
        raise UsageError("step must be >= 1")
    if z.q < 0:
        raise DomainError("base with negative q-power")
    if k == math.inf:
        if z.q < 1:
            raise DomainError("infinite product with q-exponent 0 in base never terminates")
    elif not isinstance(k, int) or k < 0:
        raise UsageError("k must be a non-negative integer or inf")
    coeff = as_rational(z.coeff)
    key = pack(z.ea, z.eb, z.ec)
    c: list[dict] = [{0: 1}] + [{} for _ in range(order)]
    j = 0
    while j < k:
        e = z.q + step * j
        if e > order:
            break
        c = _mul_binomial(c, -coeff, key, e, order)
        j += 1
    return QSeries._raw(c, order)


def qbinomial(k: int, j: int, order: int) -> QSeries:
    """Gaussian binomial [k choose j]_q, built by the q-Pascal rule."""
    if j < 0 or j > k:
        return QSeries.zero(order)
    # row[j] as integer coefficient lists; [k, j] = [k-1, j-1] + q^j [k-1, j]
    row = [[1]]
    for n in range(1, k + 1):
        new = []
        for r in range(n + 1):
            left = row[r - 1] if r >= 1 else []
            right = row[r] if r < n else []
            poly = [0] * max(len(left), len(right) + r)
            for i, v in enumerate(left):
                poly[i] += v
            for i, v in enumerate(right):
                poly[i + r] += v
            new.append(poly)
        row = new
    return QSeries(row[j], order)


def product_build(
    exponents: Iterable[int],
    sign: int = 1,
    param: str | None = None,
    order: int = 0,
    param_exp: int = 1,
) -> QSeries:
    """prod (1 + sign * x * q^e) over ``exponents``, x = param^param_exp or 1.

    A sized collection is consumed whole (factors past the order are no-ops).
    A bare iterator is read until the first exponent above the order, so it
    must be ascending.
    """
    if sign not in (1, -1):
        raise UsageError("sign must be +1 or -1")
    key = 0
    if param is not None:
        key = _param_key(param) * param_exp
    sized = hasattr(exponents, "__len__")
    c: list[dict] = [{0: 1}] + [{} for _ in range(order)]
    for e in exponents:
        if e < 1 and not (e == 0 and param is not None):
            raise UsageError("exponents must be positive")
        if e > order:
            if sized:
                continue
            break
        c = _mul_binomial(c, sign, key, e, order)
    return QSeries._raw(c, order)
