"""Families of permutations realizing the three pairwise properties, the
orthomorphism conversion for difference families, closed-form lower/upper
bounds on the extremal sizes s(n), t(n), f(n), and the family file format.

Construction member order is deterministic (lexicographic in the construction
indices) so emitted files are reproducible byte for byte.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from itertools import permutations as _lex_permutations
from itertools import product

from .modring import Modulus, factorize, is_prime, unit_halfset
from .perms import (
    MAX_N,
    PROPERTIES,
    compose,
    format_perm,
    identity,
    invert,
    is_permutation,
    parse_perm,
    pointwise_sub,
)

FILE_MAGIC = "permfam v1"


@dataclass
class Family:
    """A labeled set of distinct permutations claimed to satisfy one property.

    `verified` starts False and is flipped only by verify.verify_family after a
    full pairwise scan; constructions never set it themselves.
    """

    modulus: Modulus
    prop: str
    members: list[tuple[int, ...]]
    verified: bool = False

    def __len__(self) -> int:
        return len(self.members)


def construct_p1(m: Modulus, allow_even: bool = False) -> Family:
    """Additive family {s*(x, x+1, ..., x+n-1) : s in S, x in Z_n} for odd n.

    S is the unit half-set, so any two scale factors sum to a unit and the sum
    of two distinct members is (sx + ty) + (s + t)*(0..n-1), a permutation.
    Size n * phi(n) / 2**k.  Members come out in (s, x)-lexicographic order.

    For even n the maximum family size is 1; that degenerate singleton is only
    returned when allow_even is set, otherwise even n is an error.
    """
    n = m.n
    if n % 2 == 0:
        if not allow_even:
            raise ValueError(
                f"no nontrivial sum family exists for even n={n} "
                "(pass allow_even=True for the singleton identity family)"
            )
        return Family(m, "P1", [identity(n)])
    members = [
        tuple((s * (x + i)) % n for i in range(n))
        for s in unit_halfset(m)
        for x in range(n)
    ]
    assert len(set(members)) == len(members)
    return Family(m, "P1", members)


def construct_p2(m: Modulus) -> Family:
    """Block-pair family of size 2**((n-1)/2) * ((n-1)/2)! for odd n.

    Positions 2i, 2i+1 hold the value pair (2j, 2j+1) for j = sigma(i), flipped
    when bit i of the direction word is set; position n-1 is pinned to the one
    leftover symbol n-1.  Any two members agree on some integer coordinate sum,
    so every pairwise sum mod n repeats a value and is not a permutation.
    """
    n = m.n
    if n % 2 == 0:
        raise ValueError(
            f"the non-permutation sum problem is trivial for even n={n} "
            "(all n! permutations qualify)"
        )
    half = (n - 1) // 2
    members = []
    for sigma in _lex_permutations(range(half)):
        for bits in product((0, 1), repeat=half):
            x = [0] * n
            for i in range(half):
                lo = 2 * sigma[i]
                x[2 * i], x[2 * i + 1] = (lo, lo + 1) if bits[i] == 0 else (lo + 1, lo)
            x[n - 1] = n - 1
            members.append(tuple(x))
    return Family(m, "P2", members)


def construct_p3_prime(m: Modulus) -> Family:
    """Scalar-multiple family {a*(0, 1, ..., n-1) : a = 1..n-1} for prime n.

    The difference of two members is (a - b)*(0..n-1) with a - b invertible,
    hence a permutation.  Size n - 1, which is also the upper bound.
    """
    if not is_prime(m.n):
        raise ValueError(f"difference construction needs a prime modulus, got {m.n}")
    n = m.n
    members = [tuple((a * i) % n for i in range(n)) for a in range(1, n)]
    return Family(m, "P3", members)


def is_orthomorphism(theta: tuple[int, ...]) -> bool:
    """theta is a bijection of Z_n and x -> theta(x) - x is also a bijection."""
    n = len(theta)
    return is_permutation(theta) and is_permutation(
        tuple((theta[x] - x) % n for x in range(n))
    )


def are_orthogonal(theta: tuple[int, ...], other: tuple[int, ...]) -> bool:
    """Two orthomorphisms are orthogonal when their difference is a bijection."""
    return is_permutation(pointwise_sub(theta, other))


def to_orthomorphisms(fam: Family) -> list[tuple[int, ...]]:
    """Convert a verified difference family into mutually orthogonal orthomorphisms.

    With members sigma_1..sigma_k, returns theta_i = sigma_i o sigma_1^{-1} for
    i = 2..k.  Each theta_i(y) - y = (sigma_i - sigma_1)(sigma_1^{-1}(y)) is a
    bijection, and theta_i - theta_j = (sigma_i - sigma_j) o sigma_1^{-1} makes
    the collection mutually orthogonal.
    """
    if fam.prop != "P3":
        raise ValueError(f"orthomorphism conversion needs a P3 family, got {fam.prop}")
    if not fam.verified:
        raise ValueError("family must pass verify_family before conversion")
    if not fam.members:
        raise ValueError("family must have at least one member")
    base_inv = invert(fam.members[0])
    return [compose(s, base_inv) for s in fam.members[1:]]


# ---------------------------------------------------------------------------
# closed-form bounds


@dataclass(frozen=True)
class BoundEntry:
    value: int | float
    source: str


@dataclass(frozen=True)
class BoundsReport:
    """Lower/upper bounds for one of s(n), t(n), f(n), with provenance per entry.

    `uppers` holds every exact-integer upper form, headline form first; `upper`
    is that headline entry (the one search results are checked against).
    `exact` is set only when the bounds pin the value outright.
    """

    n: int
    quantity: str
    lower: BoundEntry
    uppers: tuple[BoundEntry, ...]
    upper_float: BoundEntry | None
    exact: BoundEntry | None

    @property
    def upper(self) -> BoundEntry | None:
        return self.uppers[0] if self.uppers else None


def _stirling_upper(n: int) -> float:
    return (math.e**2 / math.pi) * n * ((n - 1) / math.e) ** ((n - 1) / 2)


def bounds(n: int, quantity: str) -> BoundsReport:
    """Closed-form BoundsReport for s, t, or f at modulus n >= 2.

    All integer forms are evaluated in exact arithmetic.  For s at an odd prime
    two integer upper forms exist: the squared-factorial headline form
    n*(r! / ceil(r/2)!)**2 with r = (n-1)/2, and the column-count product form
    n * prod_{i=2..r} ceil((n-i+1)/2); both are reported, the headline first.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if quantity not in ("s", "t", "f"):
        raise ValueError(f"unknown quantity {quantity!r}; expected s, t, or f")
    m = factorize(n)
    even = n % 2 == 0
    upper_float = None

    if quantity == "s":
        if even:
            lower = BoundEntry(1, "even-sum collapse")
            uppers: tuple[BoundEntry, ...] = (BoundEntry(1, "even-sum collapse"),)
        else:
            lower = BoundEntry(n * m.phi // 2**m.k, "unit-halfset construction")
            if n == 3:
                uppers = (BoundEntry(3, "pairwise-swap argument"),)
                upper_float = BoundEntry(_stirling_upper(3), "stirling-form estimate")
            elif is_prime(n):
                r = (n - 1) // 2
                squared = n * (math.factorial(r) // math.factorial(-(-(n - 1) // 4))) ** 2
                prod_form = n
                for i in range(2, r + 1):
                    prod_form *= -(-(n - i + 1) // 2)
                uppers = (
                    BoundEntry(squared, "rank-sumset count (squared-factorial form)"),
                    BoundEntry(prod_form, "rank-sumset count (product form)"),
                )
                upper_float = BoundEntry(_stirling_upper(n), "stirling-form estimate")
            else:
                uppers = ()
    elif quantity == "t":
        if even:
            lower = BoundEntry(math.factorial(n), "even-sum collapse")
            uppers = (BoundEntry(math.factorial(n), "even-sum collapse"),)
        else:
            half = (n - 1) // 2
            lower = BoundEntry(2**half * math.factorial(half), "paired-block construction")
            uppers = (
                BoundEntry(
                    2**m.k * math.factorial(n - 1) // m.phi, "affine-class pigeonhole"
                ),
            )
    else:  # f
        if even:
            lower = BoundEntry(1, "even-sum collapse")
            uppers = (BoundEntry(1, "even-sum collapse"),)
        elif is_prime(n):
            lower = BoundEntry(n - 1, "scalar-multiple construction")
            uppers = (BoundEntry(n - 1, "orthomorphism bound"),)
        else:
            lower = BoundEntry(1, "singleton family")
            uppers = (BoundEntry(n - 1, "orthomorphism bound"),)

    exact = None
    if uppers and uppers[0].value == lower.value:
        # s at odd primes > 3 never lands here: its headline upper exceeds the
        # construction size, and only search pins the true value.
        exact = BoundEntry(lower.value, "bounds coincide")
    return BoundsReport(n, quantity, lower, uppers, upper_float, exact)


# ---------------------------------------------------------------------------
# family file format
#
#   line 1: "permfam v1"
#   line 2: "n=<n> prop=<P1|P2|P3> count=<m>"
#   then m lines, one permutation each, space-separated decimal entries


def family_to_text(fam: Family) -> str:
    lines = [FILE_MAGIC, f"n={fam.modulus.n} prop={fam.prop} count={len(fam.members)}"]
    lines.extend(format_perm(p) for p in fam.members)
    return "\n".join(lines) + "\n"


def family_from_text(text: str) -> Family:
    """Parse the family file format; rejects duplicates, wrong counts, and
    anything that is not a permutation of 0..n-1."""
    lines = text.splitlines()
    if len(lines) < 2:
        raise ValueError("family file needs a magic line and a header line")
    if lines[0].strip() != FILE_MAGIC:
        raise ValueError(f"bad magic line {lines[0]!r}; expected {FILE_MAGIC!r}")
    header = lines[1].split()
    keys = [tok.split("=", 1)[0] for tok in header if "=" in tok]
    if keys != ["n", "prop", "count"] or len(header) != 3:
        raise ValueError(f"bad header {lines[1]!r}; expected 'n=<n> prop=<P> count=<m>'")
    fields = dict(tok.split("=", 1) for tok in header)
    try:
        n = int(fields["n"])
        count = int(fields["count"])
    except ValueError:
        raise ValueError(f"bad header {lines[1]!r}: n and count must be integers") from None
    prop = fields["prop"]
    if prop not in PROPERTIES:
        raise ValueError(f"bad property {prop!r}; expected one of {PROPERTIES}")
    if not 2 <= n <= MAX_N:
        raise ValueError(f"n={n} out of supported range [2, {MAX_N}]")
    body = [line for line in lines[2:]]
    if len(body) != count:
        raise ValueError(f"header promises {count} members but file has {len(body)}")
    members: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for idx, line in enumerate(body):
        p = parse_perm(line)
        if len(p) != n or not is_permutation(p):
            raise ValueError(f"member {idx} is not a permutation of 0..{n - 1}: {line!r}")
        if p in seen:
            raise ValueError(f"duplicate member at line {idx + 3}: {line!r}")
        seen.add(p)
        members.append(p)
    return Family(factorize(n), prop, members)


def write_family(fam: Family, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(family_to_text(fam))


def read_family(path: str | os.PathLike) -> Family:
    with open(path, "r", encoding="utf-8") as fh:
        return family_from_text(fh.read())
