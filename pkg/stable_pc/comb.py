"""
Direct unranking of lexicographic combinations.

Workers derive their conditioning sets from a rank t without enumerating
the preceding combinations. Binomials come from a read-only table for
n <= 64 and are computed exactly beyond it.
"""
from __future__ import annotations

import math
from typing import List, Sequence

from .exceptions import NumericalError, PreconditionError

INT64_MAX = (1 << 63) - 1
TABLE_SIZE = 64


def _build_table(size: int) -> tuple:
    rows = []
    prev: List[int] = []
    for n in range(size + 1):
        row = [1] * (n + 1)
        for k in range(1, n):
            row[k] = prev[k - 1] + prev[k]
        rows.append(tuple(row))
        prev = row
    return tuple(rows)


_TABLE = _build_table(TABLE_SIZE)


def binomial(n: int, k: int) -> int:
    """Exact C(n, k); 0 when k > n."""
    if n < 0 or k < 0:
        raise PreconditionError(f"binomial needs non-negative arguments, got ({n}, {k})")
    if k > n:
        return 0
    if n <= TABLE_SIZE:
        return _TABLE[n][k]
    value = math.comb(n, k)
    if value > INT64_MAX:
        raise NumericalError(f"C({n}, {k}) exceeds the 64-bit range; cap the level or degree")
    return value


def unrank(n: int, ell: int, t: int) -> List[int]:
    """
    The t-th ell-combination of {1..n} in lexicographic order, 1-based.
    """
    if not 1 <= ell <= n:
        raise PreconditionError(f"need 1 <= ell <= n, got ell={ell}, n={n}")
    total = binomial(n, ell)
    if not 0 <= t < total:
        raise PreconditionError(f"rank {t} out of range [0, {total})")

    out = [0] * ell
    acc = 0
    prev = 0
    for c in range(ell):
        value = prev
        while acc <= t:
            value += 1
            acc += binomial(n - value, ell - (c + 1))
        acc -= binomial(n - value, ell - (c + 1))
        out[c] = value
        prev = value
    return out


def rank(n: int, ell: int, combo: Sequence[int]) -> int:
    """
    Inverse of unrank: sums C(n - k, ell - (c + 1)) over every value k
    skipped before each chosen element.
    """
    if len(combo) != ell or not 1 <= ell <= n:
        raise PreconditionError(f"combination {list(combo)} is not an {ell}-subset of 1..{n}")
    t = 0
    prev = 0
    for c, value in enumerate(combo):
        if not prev < value <= n:
            raise PreconditionError(f"combination {list(combo)} must be strictly ascending within 1..{n}")
        for k in range(prev + 1, value):
            t += binomial(n - k, ell - (c + 1))
        prev = value
    return t


def unrank_for_set_shared(n_row: int, ell: int, t: int) -> List[int]:
    """0-based positions into a compacted row of length n_row."""
    return [v - 1 for v in unrank(n_row, ell, t)]


def unrank_excluding(n_row_minus_one: int, ell: int, t: int, p: int) -> List[int]:
    """
    0-based positions into a row of length n_row_minus_one + 1 that skip
    position p (the slot of the edge's other endpoint).
    """
    if not 0 <= p <= n_row_minus_one:
        raise PreconditionError(f"excluded position {p} out of range [0, {n_row_minus_one}]")
    return [v + 1 if v >= p else v for v in unrank_for_set_shared(n_row_minus_one, ell, t)]
