"""Combinatorial oracles: partition counts by dynamic programming and by
exhaustive enumeration, plus the red/blue coloured partition statistics.

Nothing here touches the series ring except :func:`gf_from_spec`, which is
the bridge the tests compare against.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence

from .errors import UsageError
from .qseries import QSeries, product_build

ENUMERATION_CAP = 25
COLORED_CAP = 30
COLORED_PARTS_CAP = 8
VARIANTS = ("AN", "BN", "CN", "AD", "BD", "CD")


@dataclass(frozen=True)
class PartSpec:
    allowed: tuple[int, ...]
    distinct: bool = False

    def __post_init__(self):
        allowed = tuple(self.allowed)
        if not allowed:
            raise UsageError("allowed part sizes must be nonempty")
        if any(p < 1 for p in allowed):
            raise UsageError("part sizes must be positive")
        if any(x >= y for x, y in zip(allowed, allowed[1:])):
            raise UsageError("allowed part sizes must be strictly ascending")
        object.__setattr__(self, "allowed", allowed)

    @classmethod
    def upto(cls, n: int, distinct: bool = False) -> "PartSpec":
        return cls(tuple(range(1, n + 1)), distinct)


def count_partitions(k: int, spec: PartSpec) -> int:
    """Number of multisets (sets if ``spec.distinct``) of allowed parts summing to k."""
    if k < 0:
        return 0
    ways = [1] + [0] * k
    for p in spec.allowed:
        if p > k:
            break
        if spec.distinct:
            for n in range(k, p - 1, -1):
                ways[n] += ways[n - p]
        else:
            for n in range(p, k + 1):
                ways[n] += ways[n - p]
    return ways[k]


def enumerate_partitions(k: int, spec: PartSpec, cap: int = ENUMERATION_CAP) -> list[tuple[int, ...]]:
    """All partitions of k, parts in descending order, listed lexicographically descending."""
    if k > cap:
        raise UsageError(f"enumeration capped at k <= {cap}")
    parts = sorted(spec.allowed, reverse=True)
    out: list[tuple[int, ...]] = []

    def rec(rest: int, start: int, acc: list[int]):
        if rest == 0:
            out.append(tuple(acc))
            return
        for idx in range(start, len(parts)):
            p = parts[idx]
            if p > rest:
                continue
            acc.append(p)
            rec(rest - p, idx + 1 if spec.distinct else idx, acc)
            acc.pop()

    rec(k, 0, [])
    return out


def gf_from_spec(spec: PartSpec, order: int) -> QSeries:
    """Generating function of ``spec``: prod 1/(1 - q^e) or prod (1 + q^e)."""
    if spec.distinct:
        return product_build(spec.allowed, 1, order=order)
    return product_build(spec.allowed, -1, order=order).inverse()


# ---------------------------------------------------------------------------
# coloured partitions
#
# AN: i+j distinct red parts, j distinct blue parts in 0..i+j-1
# AD: as AN with blue parts in 1..i+j
# BN: i distinct red parts all > j, j blue parts pairwise differing by >= 2
# BD: as BN, and 1 is not a blue part
# CN: i red and j blue parts, all distinct; read in descending order, the part
#     following a blue v is at most v-2, i.e. v blue => v-1 is not a part
# CD: as CN, and 1 is not a blue part


@dataclass(frozen=True)
class ColoredPartition:
    red_parts: tuple[int, ...]
    blue_parts: tuple[int, ...]
    n: int
    i: int
    j: int


def _gapped(total: int, m: int, lo: int, gap: int, hi: int | None = None) -> Iterator[tuple[int, ...]]:
    """Ascending m-tuples with consecutive differences >= gap, first >= lo, all <= hi, summing to total."""
    if m == 0:
        if total == 0:
            yield ()
        return
    # smallest possible sum with first part = x is m*x + gap*m(m-1)/2
    tail = gap * m * (m - 1) // 2
    x = lo
    while m * x + tail <= total:
        if hi is not None and x + gap * (m - 1) > hi:
            break
        for rest in _gapped(total - x, m - 1, x + gap, gap, hi):
            yield (x,) + rest
        x += 1


def _check_caps(n: int, i: int, j: int) -> None:
    if min(n, i, j) < 0:
        raise UsageError("n, i, j must be non-negative")
    if n > COLORED_CAP:
        raise UsageError(f"coloured enumeration capped at n <= {COLORED_CAP}")
    if i + j > COLORED_PARTS_CAP:
        raise UsageError(f"coloured enumeration capped at i + j <= {COLORED_PARTS_CAP}")


def _iter_colored(variant: str, n: int, i: int, j: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    kind, side = variant[0], variant[1]
    if kind == "A":
        lo, hi = (0, i + j - 1) if side == "N" else (1, i + j)
        for blue in _gapped_any(j, lo, hi, n):
            for red in _gapped(n - sum(blue), i + j, 1, 1):
                yield red, blue
    elif kind == "B":
        blue_lo = 1 if side == "N" else 2
        for s in range(n + 1):
            for blue in _gapped(s, j, blue_lo, 2):
                for red in _gapped(n - s, i, j + 1, 1):
                    yield red, blue
    elif kind == "C":
        for parts in _gapped(n, i + j, 1, 1):
            present = set(parts)
            for blue in combinations(parts, j):
                if side == "D" and 1 in blue:
                    continue
                if any(v - 1 in present for v in blue):
                    continue
                bset = set(blue)
                yield tuple(p for p in parts if p not in bset), blue
    else:
        raise UsageError(f"unknown variant {variant!r}")


def _gapped_any(m: int, lo: int, hi: int, max_sum: int) -> Iterator[tuple[int, ...]]:
    for combo in combinations(range(lo, hi + 1), m):
        if sum(combo) <= max_sum:
            yield combo


def enumerate_colored(variant: str, n: int, i: int, j: int) -> list[ColoredPartition]:
    if variant not in VARIANTS:
        raise UsageError(f"unknown variant {variant!r}; expected one of {', '.join(VARIANTS)}")
    _check_caps(n, i, j)
    return [
        ColoredPartition(tuple(sorted(red, reverse=True)), tuple(sorted(blue, reverse=True)), n, i, j)
        for red, blue in _iter_colored(variant, n, i, j)
    ]


@lru_cache(maxsize=None)
def count_colored(variant: str, n: int, i: int, j: int) -> int:
    """Number of coloured partitions of n with statistics (i, j), by enumeration."""
    if variant not in VARIANTS:
        raise UsageError(f"unknown variant {variant!r}; expected one of {', '.join(VARIANTS)}")
    _check_caps(n, i, j)
    return sum(1 for _ in _iter_colored(variant, n, i, j))


def colored_table(variant: str, n_max: int, ij_max: int) -> list[tuple[int, int, int, int]]:
    """Rows (n, i, j, count) for n <= n_max, i, j <= ij_max."""
    return [
        (n, i, j, count_colored(variant, n, i, j))
        for n in range(n_max + 1)
        for i in range(ij_max + 1)
        for j in range(ij_max + 1)
        if i + j <= COLORED_PARTS_CAP
    ]


def colored_series(variant: str, order: int) -> QSeries:
    """sum over n <= order, all (i, j): count * a^i b^j q^n."""
    coeffs = []
    for n in range(order + 1):
        terms = {}
        for i in range(COLORED_PARTS_CAP + 1):
            for j in range(COLORED_PARTS_CAP + 1 - i):
                c = count_colored(variant, n, i, j)
                if c:
                    terms[(i, j, 0)] = c
        coeffs.append(terms)
    return QSeries(coeffs, order)


def colored_csv(variants: Sequence[str], n_max: int, ij_max: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "i", "j", "variant", "count"])
    for v in variants:
        for n, i, j, c in colored_table(v, n_max, ij_max):
            w.writerow([n, i, j, v, c])
    return buf.getvalue()
