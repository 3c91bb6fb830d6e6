"""Ground-truth enumeration of Farey sequences, rank computation, and neighbor search.

The enumeration path (next-term recurrence seeded by mediant descent) and the
two rank paths (direct gcd counting, divisor-Mobius counting) are deliberately
independent of each other so they can cross-check one another.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, log

import numpy as np

from .arith import Fraction, ONE, ZERO
from .errors import BudgetError, PreconditionError
from .totient import THREE_OVER_PI_SQ, mobius_upto

DEFAULT_WINDOW_BUDGET = 10_000_000

METHOD_ORACLE = "enumeration-oracle"
METHOD_MOEBIUS = "moebius-rank"
METHOD_CLOSED_FORM = "closed-form"


@dataclass
class FareyWindow:
    """All F_order fractions in [lo, hi], ascending; bounds are as requested."""

    order: int
    lo: Fraction
    hi: Fraction
    fractions: list[Fraction]

    def __len__(self) -> int:
        return len(self.fractions)


@dataclass
class RankReport:
    """1-based position of target within F_order (0/1 has rank 1), with provenance."""

    order: int
    target: Fraction
    rank: int
    method: str


def _check_unit_interval(x: Fraction, name: str = "x") -> None:
    if not x.is_finite or x.num > x.den:
        raise PreconditionError(f"{name}={x} is outside [0/1, 1/1]")


def next_farey(n: int, prev: Fraction, cur: Fraction) -> Fraction:
    """Successor of cur in F_n given its predecessor prev.

    Uses k = floor((n + prev.den)/cur.den); the successor is
    (k*cur.num - prev.num)/(k*cur.den - prev.den).  prev and cur must be
    consecutive in F_n, which for reduced fractions means |det2| = 1, both
    denominators <= n, and prev.den + cur.den > n.
    """
    if cur == ONE:
        raise PreconditionError("1/1 has no successor in F_n")
    if not prev < cur:
        raise PreconditionError(f"need prev < cur, got {prev}, {cur}")
    if prev.den > n or cur.den > n or prev.den + cur.den <= n or cur.num * prev.den - prev.num * cur.den != 1:
        raise PreconditionError(f"{prev} and {cur} are not consecutive in F_{n}")
    k = (n + prev.den) // cur.den
    return Fraction(k * cur.num - prev.num, k * cur.den - prev.den)


def _bracket(n: int, p: int, q: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Consecutive F_n pair (a/b, c/d) with a/b < p/q < c/d, for reduced p/q in (0,1), q > n.

    Mediant descent with batched steps: at interval (a/b, c/d) the repeated
    mediants toward one side form (a+k*c)/(b+k*d), so the number of steps
    before the comparison flips is a single division.  Denominators are capped
    at n, which keeps both sides inside F_n; the loop ends when the next
    mediant would leave F_n, at which point the pair is consecutive.
    """
    a, b, c, d = 0, 1, 1, 1
    while b + d <= n:
        if p * (b + d) > (a + c) * q:
            k = (p * b - q * a) // (q * c - p * d)
            k = min(k, (n - b) // d)
            a, b = a + k * c, b + k * d
        else:
            k = (q * c - p * d) // (p * b - q * a)
            k = min(k, (n - d) // b)
            c, d = c + k * a, d + k * b
    return (a, b), (c, d)


def farey_neighbors(n: int, x: Fraction) -> tuple[Fraction | None, Fraction | None]:
    """Immediate left and right neighbors of x in F_n; None at the 0/1 / 1/1 ends.

    For interior x = h/k the neighbor denominators are the largest s <= n with
    h*s = -+1 (mod k), found by one modular inverse, so the cost is O(log n).
    """
    _check_unit_interval(x)
    if x.den > n:
        raise PreconditionError(f"{x} is not in F_{n}")
    if x == ZERO:
        return None, Fraction(1, n)
    if x == ONE:
        return (Fraction(n - 1, n) if n > 1 else ZERO), None
    h, k = x.num, x.den
    inv = pow(h, -1, k)
    s_left = inv + k * ((n - inv) // k)
    s_right = (k - inv) + k * ((n - (k - inv)) // k)
    left = Fraction((h * s_left - 1) // k, s_left)
    right = Fraction((h * s_right + 1) // k, s_right)
    return left, right


def _window_seed(n: int, lo: Fraction) -> tuple[tuple[int, int] | None, tuple[int, int]]:
    """(predecessor, first) raw pairs for streaming F_n upward from the smallest element >= lo."""
    if lo == ZERO:
        return None, (0, 1)
    if lo == ONE:
        return ((n - 1, n) if n > 1 else (0, 1)), (1, 1)
    if lo.den <= n:
        left, _ = farey_neighbors(n, lo)
        assert left is not None
        return (left.num, left.den), (lo.num, lo.den)
    prev, first = _bracket(n, lo.num, lo.den)
    return prev, first


def _check_window_args(n: int, lo: Fraction, hi: Fraction) -> None:
    if n < 1:
        raise PreconditionError(f"order must be >= 1, got {n}")
    _check_unit_interval(lo, "lo")
    _check_unit_interval(hi, "hi")
    if hi < lo:
        raise PreconditionError(f"empty range: lo={lo} > hi={hi}")


def iter_window(n: int, lo: Fraction, hi: Fraction):
    """Yield raw (num, den) pairs for every F_n element in [lo, hi], ascending.

    Streaming counterpart of enumerate_window: the loop is plain-int so large
    windows can be scanned without materializing Fraction objects.
    """
    _check_window_args(n, lo, hi)
    prev, cur = _window_seed(n, lo)
    hn, hd = hi.num, hi.den
    while cur[0] * hd <= hn * cur[1]:
        yield cur
        if prev is None:
            prev, cur = cur, (1, n)
        else:
            k = (n + prev[1]) // cur[1]
            prev, cur = cur, (k * cur[0] - prev[0], k * cur[1] - prev[1])


def enumerate_window(
    n: int, lo: Fraction, hi: Fraction, budget: int = DEFAULT_WINDOW_BUDGET
) -> FareyWindow:
    """Materialize all F_n fractions in [lo, hi] (bounds included when they belong to F_n)."""
    _check_window_args(n, lo, hi)
    width = float(hi) - float(lo)
    estimate = THREE_OVER_PI_SQ * width * n * n + 2 * n * log(n + 2) + 16
    if estimate > 1.25 * budget:
        raise BudgetError(
            f"window [{lo}, {hi}] at order {n} holds about {estimate:.3g} fractions, over budget {budget}"
        )
    out: list[Fraction] = []
    for num, den in iter_window(n, lo, hi):
        out.append(Fraction(num, den))
        if len(out) > budget:
            raise BudgetError(f"window [{lo}, {hi}] at order {n} exceeded budget {budget}")
    return FareyWindow(n, lo, hi, out)


def rank_oracle(n: int, x: Fraction) -> RankReport:
    """Rank of x in F_n by direct per-denominator gcd counting.

    rank = 1 + sum over d <= n of #{h : 1 <= h <= floor(d*x), gcd(h, d) = 1}.
    This is the definitional count; it is slow (O(n^2) gcds for central x) and
    exists as the trusted reference for the faster paths.
    """
    if n < 1:
        raise PreconditionError(f"order must be >= 1, got {n}")
    _check_unit_interval(x)
    p, q = x.num, x.den
    count = 1
    for d in range(1, n + 1):
        m = d * p // q
        count += sum(1 for h in range(1, m + 1) if gcd(h, d) == 1)
    return RankReport(n, x, count, METHOD_ORACLE)


def rank_fast(n: int, x: Fraction) -> RankReport:
    """Rank of x in F_n via the divisor-Mobius identity.

    #{h <= m : gcd(h, d) = 1} = sum over e | d of mu(e)*floor(m/e); summing over
    all d <= n and regrouping by e gives rank = 1 + sum over squarefree e <= n
    of mu(e) * sum over multiples d of e of floor(floor(d*x)/e).  Vectorized
    over the sieved mu table.
    """
    if n < 1:
        raise PreconditionError(f"order must be >= 1, got {n}")
    _check_unit_interval(x)
    p, q = x.num, x.den
    if (n + 1) * p < 2**62:
        d = np.arange(1, n + 1, dtype=np.int64)
        m = d * p // q
    else:
        # d*p overflows int64 for huge targets; the quotients themselves are <= n
        m = np.fromiter((d * p // q for d in range(1, n + 1)), dtype=np.int64, count=n)
    mu = mobius_upto(n)
    total = 0
    for e in np.nonzero(mu[1:])[0] + 1:
        total += int(mu[e]) * int((m[e - 1 :: e] // e).sum())
    return RankReport(n, x, 1 + int(total), METHOD_MOEBIUS)


def count_in_window(n: int, lo: Fraction, hi: Fraction) -> int:
    """Number of F_n elements in [lo, hi], by rank difference (no enumeration)."""
    if hi < lo:
        raise PreconditionError(f"empty range: lo={lo} > hi={hi}")
    c_hi = rank_fast(n, hi).rank
    c_lo = rank_fast(n, lo).rank
    return c_hi - c_lo + (1 if lo.den <= n else 0)
