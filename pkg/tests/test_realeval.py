import math

import pytest

from qcontfrac.errors import DomainError, UsageError
from qcontfrac.realeval import (
    PHI,
    SINGULAR_CASES,
    RealCF,
    convergents_real,
    eval_cf_real,
    exp_cf,
    log_cf,
    pi_cf,
    rr_cf,
    rr_value,
    singular_value_check,
)


def test_pi_depth_two():
    assert eval_cf_real(pi_cf(), 2) == pytest.approx(8 / 3, abs=1e-15)


def test_exp_and_log():
    assert abs(eval_cf_real(exp_cf(1.0), 20) - math.e) < 1e-12
    assert abs(eval_cf_real(log_cf(1 / 3), 30) - math.log(2)) < 1e-12


def test_pi_matches_leibniz_sums():
    leibniz = 0.0
    for D, value in enumerate(convergents_real(pi_cf(), 10_000), start=1):
        leibniz += 4 * (-1) ** (D - 1) / (2 * D - 1)
        assert abs(value - leibniz) <= 1e-12 * max(1.0, abs(leibniz))


def test_pi_alternates_and_error_bound():
    for D, value in enumerate(convergents_real(pi_cf(), 10_000), start=1):
        if D >= 10:
            assert (value > math.pi) == (D % 2 == 1)
            assert abs(value - math.pi) <= 2 / D


@pytest.mark.parametrize("threshold", [1e10, 1e50, 1e150])
def test_rescaling_invariance(threshold):
    reference = list(convergents_real(pi_cf(), 1000, rescale=1e300))
    other = list(convergents_real(pi_cf(), 1000, rescale=threshold))
    assert max(abs(x - y) for x, y in zip(reference, other)) < 1e-12


def test_rescaling_against_unscaled_where_finite():
    unscaled = list(convergents_real(pi_cf(), 100, rescale=None))
    scaled = list(convergents_real(pi_cf(), 100))
    assert max(abs(x - y) for x, y in zip(unscaled, scaled)) < 1e-12


def test_zero_denominator():
    cf = RealCF(0.0, lambda k: (1.0, 0.0) if k == 1 else (1.0, 1.0), 3)
    with pytest.raises(DomainError):
        eval_cf_real(cf, 1)
    with pytest.raises(UsageError):
        eval_cf_real(pi_cf(), 0)


def test_rr_values():
    cf, prod = rr_value(math.exp(-2 * math.pi))
    assert abs(cf - prod) < 1e-10
    assert abs(cf - (5**0.25 * math.sqrt(PHI) - PHI)) < 1e-8
    assert round(cf, 7) == 0.2840790
    cf, _ = rr_value(math.exp(-math.pi))
    assert abs(cf - 0.5114293) < 1e-6
    cf, _ = rr_value(math.exp(-4 * math.pi))
    assert abs(cf - 0.0810027) < 1e-6


def test_rr_small_q():
    q = 1e-12
    cf, prod = rr_value(q)
    assert cf / q**0.2 == pytest.approx(1.0, abs=1e-11)
    with pytest.raises(UsageError):
        rr_cf(1.5)


@pytest.mark.parametrize("name", sorted(SINGULAR_CASES))
def test_singular_cases(name):
    cf, prod, closed, delta = singular_value_check(name)
    assert abs(cf - prod) < 1e-10
    assert delta < 1e-8
    with pytest.raises(UsageError):
        singular_value_check("e-3pi")
