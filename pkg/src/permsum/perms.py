"""Permutations of Z_n represented as plain n-tuples of residues.

A "tuple over Z_n" is any tuple of length n with entries in [0, n-1]; a
permutation is such a tuple with pairwise-distinct entries.  Sums and
differences of permutations routinely leave the permutation set, so validity
is a cheap on-demand check rather than a type distinction.  All functions are
pure; tuples can be shared freely across threads.
"""

from __future__ import annotations

from itertools import permutations as _lex_permutations
from typing import Iterable, Iterator, Sequence

MAX_N = 255  # entries are meant to be machine-narrow; search blows up far earlier

PROPERTIES = ("P1", "P2", "P3")


class BudgetError(ValueError):
    """A request exceeded one of the built-in size guards."""


def is_permutation(t: Sequence[int]) -> bool:
    """True iff t is an arrangement of 0..len(t)-1."""
    n = len(t)
    seen = [False] * n
    for v in t:
        if not 0 <= v < n or seen[v]:
            return False
        seen[v] = True
    return True


def perm(entries: Iterable[int]) -> tuple[int, ...]:
    """Checked constructor: entries must be a permutation of 0..n-1 with n <= 255."""
    t = tuple(entries)
    if len(t) > MAX_N:
        raise BudgetError(f"permutations are capped at {MAX_N} entries, got {len(t)}")
    if not is_permutation(t):
        raise ValueError(f"not a permutation of 0..{len(t) - 1}: {t}")
    return t


def identity(n: int) -> tuple[int, ...]:
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if n > MAX_N:
        raise BudgetError(f"permutations are capped at {MAX_N} entries, got {n}")
    return tuple(range(n))


def all_permutations(n: int) -> Iterator[tuple[int, ...]]:
    """All n! permutations of 0..n-1 in lexicographic order."""
    if n > MAX_N:
        raise BudgetError(f"permutations are capped at {MAX_N} entries, got {n}")
    return _lex_permutations(range(n))


def _check_same_n(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")


def pointwise_add(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Entrywise (a_i + b_i) mod n; the result need not be a permutation."""
    _check_same_n(a, b)
    n = len(a)
    return tuple((x + y) % n for x, y in zip(a, b))


def pointwise_sub(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Entrywise (a_i - b_i) mod n."""
    _check_same_n(a, b)
    n = len(a)
    return tuple((x - y) % n for x, y in zip(a, b))


def affine_apply(s: int, t: int, p: Sequence[int]) -> tuple[int, ...]:
    """Entrywise s*p_i + t mod n; a permutation iff s is a unit (when p is one)."""
    n = len(p)
    return tuple((s * v + t) % n for v in p)


def compose(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Position composition: result_i = a[b_i]."""
    _check_same_n(a, b)
    return tuple(a[i] for i in b)


def invert(a: Sequence[int]) -> tuple[int, ...]:
    """Two-sided compositional inverse of a permutation."""
    out = [0] * len(a)
    for i, v in enumerate(a):
        out[v] = i
    return tuple(out)


def pair_property(a: Sequence[int], b: Sequence[int], prop: str) -> bool:
    """Pairwise predicate for two DISTINCT permutations of the same Z_n.

    P1: a + b is a permutation.  P2: a + b is not.  P3: a - b is a permutation.
    The diagonal a = b is rejected; all three properties quantify over distinct
    pairs only.
    """
    if prop not in PROPERTIES:
        raise ValueError(f"unknown property {prop!r}; expected one of {PROPERTIES}")
    _check_same_n(a, b)
    if tuple(a) == tuple(b):
        raise ValueError("pair properties are defined for distinct permutations only")
    if prop == "P3":
        return is_permutation(pointwise_sub(a, b))
    summed = is_permutation(pointwise_add(a, b))
    return summed if prop == "P1" else not summed


def inner_product_mod(a: Sequence[int], b: Sequence[int]) -> int:
    """Standard inner product sum(a_i * b_i) mod n."""
    _check_same_n(a, b)
    return sum(x * y for x, y in zip(a, b)) % len(a)


def format_perm(p: Sequence[int]) -> str:
    """One-line text form: space-separated decimal entries."""
    return " ".join(str(v) for v in p)


def parse_perm(line: str) -> tuple[int, ...]:
    """Parse the one-line text form; raises ValueError on non-integer tokens."""
    try:
        return tuple(int(tok) for tok in line.split())
    except ValueError:
        raise ValueError(f"bad permutation line: {line!r}") from None
