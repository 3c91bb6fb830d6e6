"""Independent brute-force oracles used across the test suite.

Everything here is built from the stdlib only (math.gcd + fractions.Fraction)
so that it shares no code path with the package under test.
"""

from fractions import Fraction as Rat
from math import gcd


def brute_farey(n: int) -> list[Rat]:
    """All reduced fractions in [0, 1] with denominator <= n, sorted exactly."""
    out = [Rat(0, 1), Rat(1, 1)]
    for d in range(2, n + 1):
        out.extend(Rat(h, d) for h in range(1, d) if gcd(h, d) == 1)
    return sorted(out)


def brute_window(n: int, lo: Rat, hi: Rat) -> list[Rat]:
    """Brute-force F_n restricted to [lo, hi]."""
    return [x for x in brute_farey(n) if lo <= x <= hi]


def brute_rank(n: int, x: Rat) -> int:
    """1-based count of F_n elements <= x, from the sorted brute-force list."""
    return sum(1 for y in brute_farey(n) if y <= x)


def brute_deviation_sum(n: int, lo: Rat, hi: Rat) -> Rat:
    """Exact sum of |F_n(j) - j/|F_n|| over the elements in [lo, hi]."""
    seq = brute_farey(n)
    m = len(seq)
    return sum(
        (abs(x - Rat(j, m)) for j, x in enumerate(seq, start=1) if lo <= x <= hi),
        start=Rat(0),
    )


def brute_phi(n: int) -> int:
    """Euler phi by definition (gcd counting)."""
    return sum(1 for h in range(1, n + 1) if gcd(h, n) == 1)
