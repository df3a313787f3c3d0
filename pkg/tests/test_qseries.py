import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qcontfrac.errors import DomainError, UsageError
from qcontfrac.partitions import PartSpec, count_partitions
from qcontfrac.qseries import (
    Monomial,
    ParamPoly,
    QSeries,
    coeff_extract,
    pochhammer,
    product_build,
    qbinomial,
    series_arith,
    series_inverse,
    specialize,
    subst_param_qshift,
    subst_q_power,
)


def Q(coeffs, N):
    return QSeries(coeffs, N)


def q(N):
    return QSeries.q(N)


# -- examples ---------------------------------------------------------------


def test_add_cancels():
    N = 5
    assert series_arith(1 + q(N), 1 - q(N), "add") == QSeries.constant(2, N)


def test_geometric_times_one_minus_q_is_one():
    N = 12
    assert series_arith(1 - q(N), Q([1] * (N + 1), N), "mul") == QSeries.one(N)


def test_binomial_product_expansion():
    N = 4
    a, b = QSeries.param("a", N), QSeries.param("b", N)
    s = (1 + a * q(N)) * (1 + b * q(N))
    assert s.coeff(0) == 1
    assert s.coeff(1, 1, 0) == 1 and s.coeff(1, 0, 1) == 1
    assert s.coeff(2, 1, 1) == 1
    assert len(s[1]) == 2 and len(s[2]) == 1 and s[3] == 0


def test_order_mismatch_is_usage_error():
    with pytest.raises(UsageError):
        series_arith(QSeries.one(3), QSeries.one(4), "add")
    with pytest.raises(UsageError):
        series_arith(QSeries.one(3), QSeries.one(3), "div")


def test_inverse_examples():
    N = 15
    assert series_inverse(QSeries.one(N)) == QSeries.one(N)
    assert series_inverse(1 - q(N)) == Q([1] * (N + 1), N)
    inv = series_inverse(product_build([1, 2], -1, order=N))
    spec = PartSpec((1, 2))
    assert inv.scalars() == [count_partitions(k, spec) for k in range(N + 1)]
    # frozen from the oracle above
    assert inv.scalars()[:8] == [1, 1, 2, 2, 3, 3, 4, 4]


def test_inverse_rejects_non_units():
    N = 4
    with pytest.raises(DomainError):
        series_inverse(q(N))
    with pytest.raises(DomainError):
        series_inverse(QSeries.param("a", N) + q(N))


def test_subst_q_power():
    assert subst_q_power(1 + q(6), 2) == 1 + QSeries.monomial(1, 2, order=6)
    assert subst_q_power(Q([1, 1, 1], 4), 3) == 1 + QSeries.monomial(1, 3, order=4)
    with pytest.raises(UsageError):
        subst_q_power(q(4), 0)


def test_subst_param_qshift():
    N = 6
    a = QSeries.param("a", N)
    assert subst_param_qshift(QSeries.monomial(1, 2, 1, order=N), "a", 1) == QSeries.monomial(1, 3, 1, order=N)
    assert subst_param_qshift(1 + a, "a", 1) == 1 + a * q(N)
    assert subst_param_qshift(QSeries.monomial(1, 1, 2, order=N), "a", 1) == QSeries.monomial(1, 3, 2, order=N)
    with pytest.raises(DomainError):
        subst_param_qshift(a, "a", -1)


def test_pochhammer_examples():
    N = 6
    assert pochhammer(Monomial(1, q=1), 2, N) == Q([1, -1, -1, 1], N)
    b = QSeries.param("b", N)
    assert pochhammer(Monomial(-1, eb=1), 2, N) == (1 + b) * (1 + b * q(N))
    assert pochhammer(Monomial(5, ea=1), 0, N) == QSeries.one(N)


def test_pochhammer_infinite():
    N = 20
    euler = pochhammer(Monomial(1, q=1), math.inf, N)
    assert euler == product_build(range(1, N + 1), -1, order=N)
    with pytest.raises(DomainError):
        pochhammer(Monomial(1), math.inf, N)


def test_qbinomial_examples():
    N = 10
    assert qbinomial(7, 0, N) == QSeries.one(N)
    assert qbinomial(2, 1, N) == 1 + q(N)
    # oracle: exact division of Pochhammers
    ratio = pochhammer((1, 0, 0, 0, 1), 4, N) * (pochhammer((1, 0, 0, 0, 1), 2, N) ** 2).inverse()
    assert qbinomial(4, 2, N) == ratio
    assert qbinomial(4, 2, N).scalars()[:5] == [1, 1, 2, 1, 1]
    assert qbinomial(2, 3, N).is_zero()


def test_product_build_examples():
    N = 40
    n = 4
    binary = product_build([2**i for i in range(n + 1)], 1, order=N)
    assert binary.scalars()[: 2 ** (n + 1)] == [1] * 2 ** (n + 1)
    assert product_build([1], -1, order=N) == 1 - q(N)
    odd = product_build(range(1, N + 1, 2), -1, order=N).inverse()
    spec = PartSpec(tuple(range(1, N + 1, 2)))
    assert odd.scalars() == [count_partitions(k, spec) for k in range(N + 1)]


def test_product_build_iterator_stops_at_order():
    def powers():
        e = 1
        while True:
            yield e
            e *= 2

    assert product_build(powers(), 1, order=20) == product_build([1, 2, 4, 8, 16], 1, order=20)


def _cf35(N):
    total = QSeries.zero(N)
    for i in range(8):
        for j in range(8):
            e = (i * i + i) // 2 + i * j + j * j
            if e <= N:
                den = pochhammer((1, 0, 0, 0, 1), i, N) * pochhammer((1, 0, 0, 0, 1), j, N)
                total = total + QSeries.monomial(1, e, i, j, order=N) * den.inverse()
    return total


def test_coeff_extract_examples():
    s = _cf35(8)
    assert coeff_extract(s, 0, 0, 0) == 1
    assert coeff_extract(s, 3, 1, 0) == 1
    assert coeff_extract(s, 5, 3, 7) == 0
    with pytest.raises(UsageError):
        coeff_extract(s, 9)


def test_specialize_examples():
    N = 8
    a, b = QSeries.param("a", N), QSeries.param("b", N)
    assert specialize(1 + a * q(N), {"a": 0}) == QSeries.one(N)
    s = (1 + b * q(N)) * (1 + b * QSeries.monomial(1, 3, order=N))
    assert specialize(s, {"b": 1}).scalars()[:6] == [1, 1, 0, 1, 1, 0]
    with pytest.raises(DomainError):
        specialize(QSeries.monomial(1, 0, -1, order=N), {"a": 0})


def test_specialize_rr_ratio():
    from qcontfrac.contfrac import build_catalog_cf, eval_series

    N = 20
    r = eval_series(build_catalog_cf("R_AB", order=N))
    g = QSeries.zero(N)
    h = QSeries.zero(N)
    for n in range(5):
        inv = pochhammer((1, 0, 0, 0, 1), n, N).inverse()
        if n * n <= N:
            g = g + QSeries.monomial(1, n * n, order=N) * inv
        if n * n + n <= N:
            h = h + QSeries.monomial(1, n * n + n, order=N) * inv
    assert specialize(r, {"a": 0, "b": 1}) == g * h.inverse()


def test_json_round_trip():
    N = 5
    s = (1 + QSeries.param("a", N) * q(N)) * Fraction(2, 3) - QSeries.monomial(Fraction(-1, 7), 4, 0, 2, order=N)
    data = s.to_json()
    assert len(data) == N + 1 and data[0]["power"] == 0
    assert data[1]["terms"] == [{"ea": 1, "eb": 0, "ec": 0, "num": "2", "den": "3"}]
    assert QSeries.from_json(data) == s


def test_param_poly_normalizes():
    p = ParamPoly({(1, 0, 0): Fraction(2, 4), (0, 1, 0): 0})
    assert p.terms() == {(1, 0, 0): Fraction(1, 2)}
    assert p - p == 0


# -- properties ----------------------------------------------------------------

scalars = st.fractions(min_value=-5, max_value=5, max_denominator=6)
keys = st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(0, 1))
polys = st.dictionaries(keys, scalars, max_size=3)


@st.composite
def series(draw, order=None, unit=False):
    N = draw(st.integers(0, 8)) if order is None else order
    coeffs = draw(st.lists(polys, min_size=N + 1, max_size=N + 1))
    if unit:
        coeffs[0] = {(0, 0, 0): draw(scalars.filter(lambda x: x != 0))}
    return QSeries(coeffs, N)


@st.composite
def triples(draw):
    N = draw(st.integers(0, 8))
    return draw(series(N)), draw(series(N)), draw(series(N))


@settings(max_examples=100, deadline=None)
@given(triples())
def test_ring_axioms(t):
    x, y, z = t
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x + y == y + x
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 16).flatmap(lambda N: series(N, unit=True)))
def test_inverse_property(s):
    assert s * s.inverse() == QSeries.one(s.order)


@settings(max_examples=50, deadline=None)
@given(scalars, st.integers(-2, 2), st.integers(-2, 2), st.integers(0, 3), st.integers(0, 6))
def test_pochhammer_step(coeff, ea, eb, qe, k):
    N = 14
    z = Monomial(coeff, ea, eb, 0, qe)
    nxt = 1 - QSeries.monomial(coeff, qe + k, ea, eb, order=N)
    assert pochhammer(z, k + 1, N) == pochhammer(z, k, N) * nxt


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 12).flatmap(lambda k: st.tuples(st.just(k), st.integers(0, k))))
def test_qbinomial_symmetry_and_q_to_one(kj):
    k, j = kj
    N = k * k
    c = qbinomial(k, j, N)
    assert c == qbinomial(k, k - j, N)
    assert sum(c.scalars()) == math.comb(k, j)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 12), scalars.filter(lambda x: x != 0), st.integers(-1, 1), st.integers(0, 2))
def test_q_binomial_theorem(k, coeff, ea, qe):
    N = 30
    lhs = pochhammer(Monomial(-coeff, ea, 1, 0, qe), k, N)
    rhs = QSeries.zero(N)
    for j in range(k + 1):
        e = j * (j - 1) // 2 + qe * j
        if e <= N:
            rhs = rhs + QSeries.monomial(coeff**j, e, ea * j, j, order=N) * qbinomial(k, j, N)
    assert lhs == rhs


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 8).flatmap(lambda N: series(N)), st.sampled_from("abc"), st.integers(0, 3), st.integers(0, 3))
def test_shift_composition(s, param, m1, m2):
    pos = s.map_terms(lambda n, e, v: (n, tuple(abs(x) for x in e), v))
    assert subst_param_qshift(subst_param_qshift(pos, param, m1), param, m2) == subst_param_qshift(pos, param, m1 + m2)
