"""Euler-phi sieves, summatory tables, exact scaled ratio sums, and deviation terms.

The sieve is exact integer arithmetic throughout (int64 is ample: the prefix
sums stay below 2^63 for any limit that fits in memory); values cross back
into Python ints at every public boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from math import isqrt, lcm

import numpy as np

from .errors import BudgetError, PreconditionError

DEFAULT_TABLE_LIMIT = 10_000_000

# pi to 50 significant digits; squared on demand under a 50-digit context.
_PI_50 = Decimal("3.1415926535897932384626433832795028841971693993751")


def pi_squared() -> Decimal:
    with localcontext() as ctx:
        ctx.prec = 50
        return _PI_50 * _PI_50


PI_SQUARED = pi_squared()
#: Asymptotic density constant 3/pi^2 of reduced pairs, as a float.
THREE_OVER_PI_SQ = float(3 / PI_SQUARED)

# Fixed-point scale for the exact integer accumulation of sum(phi(k)/k).
_H_SCALE = 10**36


class TotientTable:
    """phi(k) and its prefix sums Phi(k) for 1 <= k <= limit.

    Arrays are indexed directly by k (slot 0 is unused).  A built table is
    immutable and safe to share across threads.
    """

    def __init__(self, limit: int, phi: np.ndarray, phi_sum: np.ndarray) -> None:
        self.limit = limit
        self.phi = phi
        self.phi_sum = phi_sum

    def phi_of(self, k: int) -> int:
        if not 1 <= k <= self.limit:
            raise PreconditionError(f"k={k} outside table range [1, {self.limit}]")
        return int(self.phi[k])

    def summatory(self, k: int) -> int:
        """Phi(k) = sum of phi(j) for j <= k."""
        if not 1 <= k <= self.limit:
            raise PreconditionError(f"k={k} outside table range [1, {self.limit}]")
        return int(self.phi_sum[k])


def build_totient_table(limit: int, budget: int = DEFAULT_TABLE_LIMIT) -> TotientTable:
    """Sieve phi up to limit and attach running prefix sums.

    Multiplicative sieve over primes: start phi[k] = k and for each prime p
    apply phi[m] -= phi[m]/p on its multiples.  All updates are exact integer
    steps (phi[m] is divisible by p at the moment p is processed).
    """
    if limit < 1:
        raise PreconditionError(f"limit must be >= 1, got {limit}")
    if limit > budget:
        raise BudgetError(f"table limit {limit} exceeds budget {budget}")
    phi = np.arange(limit + 1, dtype=np.int64)
    for p in range(2, limit + 1):
        if phi[p] == p:  # untouched so far, hence prime
            phi[p::p] -= phi[p::p] // p
    phi_sum = np.zeros(limit + 1, dtype=np.int64)
    np.cumsum(phi[1:], out=phi_sum[1:])
    return TotientTable(limit, phi, phi_sum)


def farey_cardinality(n: int, table: TotientTable) -> int:
    """|F_n| = 1 + Phi(n): the number of reduced fractions in [0,1] with den <= n."""
    return 1 + table.summatory(n)


def lcm_range(i: int) -> int:
    """lcm of {2, ..., i}."""
    if i < 2:
        raise PreconditionError(f"lcm_range needs i >= 2, got {i}")
    return lcm(*range(2, i + 1))


def lcm_upto(i: int) -> int:
    """lcm of {2, ..., i}, with the empty range (i < 2) giving 1."""
    return 1 if i < 2 else lcm_range(i)


def scaled_phi_ratio_sum(i: int, n: int, table: TotientTable) -> int:
    """Exact integer sum of n*phi(j)/j for j = 1..i.

    Requires n to be a multiple of lcm(2..i) so that every term is an integer;
    each term is then evaluated as (n // j) * phi(j) with no rounding anywhere.
    """
    if i < 1:
        raise PreconditionError(f"i must be >= 1, got {i}")
    if i > table.limit:
        raise PreconditionError(f"i={i} outside table range [1, {table.limit}]")
    block = lcm_upto(i)
    if n % block:
        raise PreconditionError(
            f"n={n} is not a multiple of lcm(2..{i})={block}; the scaled sum would not be an integer"
        )
    return sum((n // j) * int(table.phi[j]) for j in range(1, i + 1))


@dataclass(frozen=True)
class AsymptoticError:
    """Deviations of the two phi summatories from their leading terms at n.

    e_n = Phi(n) - 3n^2/pi^2 and h_n = sum(phi(k)/k, k<=n) - 6n/pi^2, both
    evaluated from exact integer accumulators against a 50-digit pi^2, so the
    stated values are reproducible bit for bit.
    """

    n: int
    e_n: float
    h_n: float


def _scaled_ratio_accumulate(table: TotientTable, n: int, start: int = 1, carry: int = 0) -> int:
    """Exact fixed-point accumulator for sum(phi(k)/k): floor(phi(k)*SCALE/k) terms.

    Each floor loses < 1/SCALE, so the total error is below n * 1e-36.
    """
    phi = table.phi
    total = carry
    for k in range(start, n + 1):
        total += int(phi[k]) * _H_SCALE // k
    return total


def error_terms(n: int, table: TotientTable) -> AsymptoticError:
    """E(n) and H(n), the quadratic and linear summatory deviations at n."""
    if not 1 <= n <= table.limit:
        raise PreconditionError(f"n={n} outside table range [1, {table.limit}]")
    h_scaled = _scaled_ratio_accumulate(table, n)
    with localcontext() as ctx:
        ctx.prec = 50
        e_val = Decimal(table.summatory(n)) - 3 * Decimal(n) ** 2 / PI_SQUARED
        h_val = Decimal(h_scaled) / _H_SCALE - 6 * Decimal(n) / PI_SQUARED
    return AsymptoticError(n, float(e_val), float(h_val))


def error_term_rows(n_max: int, table: TotientTable):
    """Yield (n, phi(n), Phi(n), E(n), H(n)) for n = 1..n_max with one incremental pass."""
    if not 1 <= n_max <= table.limit:
        raise PreconditionError(f"n_max={n_max} outside table range [1, {table.limit}]")
    h_scaled = 0
    with localcontext() as ctx:
        ctx.prec = 50
        for n in range(1, n_max + 1):
            h_scaled = _scaled_ratio_accumulate(table, n, start=n, carry=h_scaled)
            e_val = Decimal(table.summatory(n)) - 3 * Decimal(n) ** 2 / PI_SQUARED
            h_val = Decimal(h_scaled) / _H_SCALE - 6 * Decimal(n) / PI_SQUARED
            yield n, int(table.phi[n]), table.summatory(n), float(e_val), float(h_val)


_mu_cache: dict[str, np.ndarray] = {}


def mobius_upto(limit: int) -> np.ndarray:
    """Mobius mu(k) for 0 <= k <= limit as an int8 array (mu(0) stored as 0).

    The array is cached and grown monotonically; callers must treat it as
    read-only.
    """
    if limit < 0:
        raise PreconditionError(f"limit must be >= 0, got {limit}")
    cached = _mu_cache.get("mu")
    if cached is not None and cached.size > limit:
        return cached[: limit + 1]
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    primes = np.nonzero(is_prime)[0]
    for p in primes:
        mu[p::p] *= -1
        if p * p <= limit:
            mu[p * p :: p * p] = 0
    _mu_cache["mu"] = mu
    return mu
