import random

import pytest
from hypothesis import given, settings, strategies as st

from qcontfrac.errors import UsageError
from qcontfrac.partitions import (
    VARIANTS,
    PartSpec,
    colored_csv,
    colored_series,
    count_colored,
    count_partitions,
    enumerate_colored,
    enumerate_partitions,
    gf_from_spec,
)
from qcontfrac.qseries import QSeries, coeff_extract, pochhammer


def test_count_examples():
    assert count_partitions(0, PartSpec((3, 7))) == 1
    assert count_partitions(5, PartSpec.upto(5)) == 7
    assert count_partitions(5, PartSpec.upto(5, distinct=True)) == 3


def test_enumerate_examples():
    assert enumerate_partitions(3, PartSpec.upto(3)) == [(3,), (2, 1), (1, 1, 1)]
    assert enumerate_partitions(1, PartSpec((2, 4))) == []
    assert enumerate_partitions(4, PartSpec((1, 2, 4, 8), distinct=True)) == [(4,)]
    assert enumerate_partitions(5, PartSpec.upto(5, distinct=True)) == [(5,), (4, 1), (3, 2)]
    with pytest.raises(UsageError):
        enumerate_partitions(26, PartSpec.upto(3))


def test_partspec_validation():
    for bad in [(), (0, 1), (2, 1), (1, 1)]:
        with pytest.raises(UsageError):
            PartSpec(bad)


def test_dp_equals_enumeration_random_specs():
    rng = random.Random(10)
    for _ in range(10):
        allowed = tuple(sorted(rng.sample(range(1, 15), rng.randint(1, 6))))
        spec = PartSpec(allowed, rng.random() < 0.5)
        for k in range(21):
            assert count_partitions(k, spec) == len(enumerate_partitions(k, spec))


@settings(max_examples=30, deadline=None)
@given(st.sets(st.integers(1, 20), min_size=1, max_size=6), st.booleans())
def test_coefficient_bridge(parts, distinct):
    spec = PartSpec(tuple(sorted(parts)), distinct)
    N = 30
    assert gf_from_spec(spec, N).scalars() == [count_partitions(k, spec) for k in range(N + 1)]


def test_gf_binary_distinct_support():
    n = 4
    gf = gf_from_spec(PartSpec(tuple(2**i for i in range(n + 1)), True), 40)
    assert gf.scalars() == [1] * 2 ** (n + 1) + [0] * (41 - 2 ** (n + 1))


def test_gf_odd_equals_distinct():
    N = 60
    odd = gf_from_spec(PartSpec(tuple(range(1, N + 1, 2))), N)
    assert odd == gf_from_spec(PartSpec.upto(N, distinct=True), N)
    for k in range(N + 1):
        assert count_partitions(k, PartSpec(tuple(range(1, N + 1, 2)))) == count_partitions(
            k, PartSpec.upto(N, distinct=True)
        )


def test_gf_ternary_distinct():
    n = 3
    gf = gf_from_spec(PartSpec(tuple(3**i for i in range(n + 1)), True), 50)
    sums = {sum(3**i for i in range(n + 1) if mask >> i & 1) for mask in range(2 ** (n + 1))}
    assert gf.scalars() == [1 if k in sums else 0 for k in range(51)]
    # the support stops at (3^(n+1) - 1)/2
    assert max(sums) == (3 ** (n + 1) - 1) // 2


# -- coloured partitions ----------------------------------------------------------


def test_colored_examples():
    assert count_colored("BN", 1, 0, 1) == 1
    assert count_colored("BD", 1, 0, 1) == 0
    assert count_colored("AN", 3, 1, 0) == 1


def test_colored_enumeration_objects():
    parts = enumerate_colored("CN", 6, 1, 1)
    assert len(parts) == count_colored("CN", 6, 1, 1)
    for cp in parts:
        assert sum(cp.red_parts) + sum(cp.blue_parts) == 6
        assert len(cp.red_parts) == 1 and len(cp.blue_parts) == 1
        assert cp.blue_parts[0] - 1 not in cp.red_parts
    zero_blue = [cp for cp in enumerate_colored("AN", 3, 1, 1) if 0 in cp.blue_parts]
    assert zero_blue


def test_colored_caps():
    with pytest.raises(UsageError):
        count_colored("AN", 31, 0, 0)
    with pytest.raises(UsageError):
        count_colored("AN", 5, 5, 4)
    with pytest.raises(UsageError):
        count_colored("XN", 5, 1, 1)


def test_colored_theorems_small_range():
    for n in range(16):
        for i in range(4):
            for j in range(4):
                for side in "ND":
                    counts = {count_colored(k + side, n, i, j) for k in "ABC"}
                    assert len(counts) == 1, (side, n, i, j)


def _double_sum(N, extra):
    total = QSeries.zero(N)
    for i in range(8):
        for j in range(8):
            e = (i * i + i) // 2 + i * j + j * j + extra * j
            if e <= N:
                den = pochhammer((1, 0, 0, 0, 1), i, N) * pochhammer((1, 0, 0, 0, 1), j, N)
                total = total + QSeries.monomial(1, e, i, j, order=N) * den.inverse()
    return total


def test_generating_function_tie_small():
    N = 15
    num, den = _double_sum(N, 0), _double_sum(N, 1)
    for n in range(N + 1):
        for i in range(4):
            for j in range(4):
                assert count_colored("BN", n, i, j) == coeff_extract(num, n, i, j)
                assert count_colored("BD", n, i, j) == coeff_extract(den, n, i, j)


def test_colored_series_and_csv():
    s = colored_series("BN", 6)
    assert s.coeff(1, 0, 1) == 1
    text = colored_csv(["AN", "BD"], 2, 1)
    lines = text.strip().splitlines()
    assert lines[0] == "n,i,j,variant,count"
    assert len(lines) == 1 + 2 * 3 * 4
    assert set(VARIANTS) == {"AN", "BN", "CN", "AD", "BD", "CD"}
