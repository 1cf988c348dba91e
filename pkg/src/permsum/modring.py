"""Arithmetic over Z_n: trial-division factorization, units and the totient,
the prime-power residue splitting and its inverse, and the sum-closed unit
half-set used by the additive family construction.

Everything here is a pure function of its inputs; no shared mutable state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class Modulus:
    """A modulus n >= 2 together with its prime factorization and totient."""

    n: int
    factors: tuple[tuple[int, int], ...]  # (prime, exponent), primes ascending
    phi: int

    @property
    def k(self) -> int:
        """Number of distinct prime divisors of n."""
        return len(self.factors)

    @property
    def prime_powers(self) -> tuple[int, ...]:
        return tuple(p**a for p, a in self.factors)

    def __repr__(self) -> str:
        return f"Modulus({self.n})"


def factorize(n: int) -> Modulus:
    """Factor n >= 2 by trial division and build its Modulus context.

    Deterministic; fine up to ~10**6, which is far beyond anything the
    permutation machinery can enumerate anyway.
    """
    if n < 2:
        raise ValueError(f"modulus must be an integer >= 2, got {n}")
    factors: list[tuple[int, int]] = []
    rest = n
    d = 2
    while d * d <= rest:
        if rest % d == 0:
            a = 0
            while rest % d == 0:
                rest //= d
                a += 1
            factors.append((d, a))
        d += 1 if d == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    phi = 1
    for p, a in factors:
        phi *= p ** (a - 1) * (p - 1)
    return Modulus(n=n, factors=tuple(factors), phi=phi)


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n).factors == ((n, 1),)


def is_unit(x: int, m: Modulus) -> bool:
    """True iff x is invertible mod n, i.e. gcd(x, n) = 1."""
    return math.gcd(x % m.n, m.n) == 1


def units(m: Modulus) -> list[int]:
    """All invertible residues of Z_n, ascending; length phi(n)."""
    return [x for x in range(1, m.n) if math.gcd(x, m.n) == 1]


def crt_split(x: int, m: Modulus) -> tuple[int, ...]:
    """Image of x under Z_n -> Z_{p_1^a_1} x ... x Z_{p_k^a_k} (componentwise mod)."""
    return tuple(x % q for q in m.prime_powers)


def crt_combine(components: Sequence[int], m: Modulus) -> int:
    """The unique x in Z_n reducing to the given residues; inverse of crt_split."""
    qs = m.prime_powers
    if len(components) != len(qs):
        raise ValueError(f"expected {len(qs)} components for n={m.n}, got {len(components)}")
    for r, q in zip(components, qs):
        if not 0 <= r < q:
            raise ValueError(f"component {r} out of range [0, {q - 1}]")
    x = 0
    for r, q in zip(components, qs):
        cofactor = m.n // q
        x = (x + r * cofactor * pow(cofactor, -1, q)) % m.n
    return x


def unit_halfset(m: Modulus) -> list[int]:
    """The set S of residues lying in 1..(p-1)/2 mod every prime divisor p, ascending.

    Requires n odd. |S| = phi(n) / 2**k, every element is a unit, and x + y is a
    unit for all x, y in S -- including x = y, since residues mod p stay in
    [2, p-1] after addition.
    """
    if m.n % 2 == 0:
        raise ValueError(f"unit half-set requires an odd modulus, got {m.n}")
    return [
        x
        for x in range(m.n)
        if all(1 <= x % p <= (p - 1) // 2 for p, _ in m.factors)
    ]
