"""Executable checks behind the family machinery: full pairwise family
verification, the consecutive-sum witness for distinct permutations, sumset
size inequalities over prime moduli, bipartite edge-coloring bounds, affine
equivalence classes with canonical forms, and the isotropy/rank bound for sum
families over prime fields.

All checks are pure.  verify_family scans pairs serially in ascending index
order, so its violation list is already sorted; a concurrent evaluation would
have to produce the identical report.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .families import Family, read_family
from .modring import Modulus, is_prime
from .perms import (
    BudgetError,
    all_permutations,
    format_perm,
    inner_product_mod,
    is_permutation,
    pair_property,
    pointwise_add,
    pointwise_sub,
)


@dataclass
class VerifyReport:
    ok: bool
    violations: list[tuple[tuple[int, int], str]]
    pairs_checked: int


def _violation_reason(a, b, prop: str) -> str:
    if prop == "P3":
        return f"difference {format_perm(pointwise_sub(a, b))} is not a permutation"
    s = format_perm(pointwise_add(a, b))
    if prop == "P1":
        return f"sum {s} is not a permutation"
    return f"sum {s} is a permutation"


def verify_family(fam: Family) -> VerifyReport:
    """Check every unordered pair of members against the family's property.

    Structural faults (malformed or duplicate members) fail the report without
    a pair scan and leave pairs_checked at 0.  On a clean pass the family's
    verified flag is set.
    """
    members = fam.members
    n = fam.modulus.n
    structural: list[tuple[tuple[int, int], str]] = []
    for i, p in enumerate(members):
        if len(p) != n or not is_permutation(p):
            structural.append(((i, i), f"member {i} is not a permutation of 0..{n - 1}"))
    first_at: dict[tuple[int, ...], int] = {}
    for i, p in enumerate(members):
        j = first_at.setdefault(tuple(p), i)
        if j != i:
            structural.append(((j, i), "duplicate member"))
    if structural:
        return VerifyReport(False, structural, 0)

    violations: list[tuple[tuple[int, int], str]] = []
    count = len(members)
    for i in range(count):
        for j in range(i + 1, count):
            if not pair_property(members[i], members[j], fam.prop):
                violations.append(((i, j), _violation_reason(members[i], members[j], fam.prop)))
    report = VerifyReport(not violations, violations, count * (count - 1) // 2)
    if report.ok:
        fam.verified = True
    return report


def verify_file(path: str | os.PathLike) -> tuple[Family, VerifyReport]:
    """Read a family file and run the full pairwise check."""
    fam = read_family(path)
    return fam, verify_family(fam)


def format_report(report: VerifyReport) -> str:
    """Line-oriented text form: key=value summary plus one line per violation."""
    lines = [
        f"ok={'true' if report.ok else 'false'}",
        f"pairs_checked={report.pairs_checked}",
        f"violations={len(report.violations)}",
    ]
    for (i, j), reason in report.violations:
        lines.append(f"violation pair={i},{j} reason={reason}")
    return "\n".join(lines) + "\n"


def distinct_sum_witness(
    a: Sequence[int], b: Sequence[int]
) -> tuple[int, int] | None:
    """Witness (j, k) with c_j = c_k + 1 among the integer coordinate sums c_i.

    a and b must be distinct permutations of 0..n-1; the sums are taken over
    the integers, not mod n.  When the sums are not all distinct the premise
    fails and None is returned.  The scan takes ascending j with a direct value
    lookup for k, so the witness is the one with the least j.
    """
    if tuple(a) == tuple(b):
        raise ValueError("witness is defined for distinct permutations only")
    if not (is_permutation(a) and is_permutation(b)) or len(a) != len(b):
        raise ValueError("both arguments must be permutations of 0..n-1")
    sums = [x + y for x, y in zip(a, b)]
    if len(set(sums)) != len(sums):
        return None
    where = {c: i for i, c in enumerate(sums)}
    for j, c in enumerate(sums):
        k = where.get(c - 1)
        if k is not None:
            return (j, k)
    return None  # unreachable for genuinely distinct permutations


def sumset(a_set: Iterable[int], b_set: Iterable[int], n: int) -> set[int]:
    """{a + b mod n : a in A, b in B} for nonempty A, B."""
    aa, bb = set(a_set), set(b_set)
    if not aa or not bb:
        raise ValueError("sumset needs nonempty operands")
    return {(a + b) % n for a in aa for b in bb}


def cauchy_davenport_check(a_set: Iterable[int], b_set: Iterable[int], n: int) -> bool:
    """|A + B| >= min(n, |A| + |B| - 1) over Z_n; the inequality needs n prime."""
    if not is_prime(n):
        raise ValueError(f"the sumset inequality requires a prime modulus, got {n}")
    aa, bb = set(a_set), set(b_set)
    return len(sumset(aa, bb, n)) >= min(n, len(aa) + len(bb) - 1)


# ---------------------------------------------------------------------------
# bipartite edge-coloring bound


@dataclass
class EdgeColoring:
    """A k-coloring of the edges of the complete graph on vertices 0..m-1.

    colors maps each pair (u, v) with u < v to a color in 1..k.
    """

    m: int
    k: int
    colors: dict[tuple[int, int], int]


def complete_edge_coloring(m: int, k: int, color_of) -> EdgeColoring:
    """Build an EdgeColoring from a callable color_of(u, v) -> color."""
    colors = {(u, v): color_of(u, v) for u in range(m) for v in range(u + 1, m)}
    return EdgeColoring(m, k, colors)


@dataclass
class BipartiteCheckResult:
    ok: bool
    labels: dict[int, tuple[int, ...]] | None  # vertex -> side bit per color
    bad_color: int | None
    odd_cycle: list[int] | None


def _validate_coloring(ec: EdgeColoring) -> None:
    for u in range(ec.m):
        for v in range(u + 1, ec.m):
            c = ec.colors.get((u, v))
            if c is None:
                raise ValueError(f"edge ({u}, {v}) has no color")
            if not 1 <= c <= ec.k:
                raise ValueError(f"edge ({u}, {v}) color {c} outside 1..{ec.k}")


def bipartite_bound_check(ec: EdgeColoring) -> BipartiteCheckResult:
    """Check each color class for bipartiteness and derive the 2**k bound.

    If some class contains an odd cycle the result is not ok and carries the
    cycle.  Otherwise the per-color side assignments label each vertex with a
    0/1 vector of length k; two distinct vertices differ in the component of
    their edge's color, so the labeling is injective and m <= 2**k.  Both facts
    are re-verified before returning.
    """
    _validate_coloring(ec)
    labels = {v: [0] * ec.k for v in range(ec.m)}
    for color in range(1, ec.k + 1):
        adj: dict[int, list[int]] = {v: [] for v in range(ec.m)}
        for (u, v), c in ec.colors.items():
            if c == color:
                adj[u].append(v)
                adj[v].append(u)
        side: dict[int, int] = {}
        parent: dict[int, int | None] = {}
        for root in range(ec.m):
            if root in side:
                continue
            side[root] = 0
            parent[root] = None
            queue = deque([root])
            while queue:
                u = queue.popleft()
                for v in adj[u]:
                    if v not in side:
                        side[v] = side[u] ^ 1
                        parent[v] = u
                        queue.append(v)
                    elif side[v] == side[u]:
                        cycle = _odd_cycle(u, v, parent)
                        return BipartiteCheckResult(False, None, color, cycle)
        for v in range(ec.m):
            labels[v][color - 1] = side[v]
    final = {v: tuple(bits) for v, bits in labels.items()}
    if len(set(final.values())) != ec.m or ec.m > 2**ec.k:
        raise RuntimeError("side labeling failed to inject; checker bug")
    return BipartiteCheckResult(True, final, None, None)


def _odd_cycle(u: int, v: int, parent: dict[int, int | None]) -> list[int]:
    """Cycle through the conflicting edge (u, v) of a BFS tree; odd length."""
    path_u, path_v = [u], [v]
    seen = {u: 0}
    x = u
    while parent[x] is not None:
        x = parent[x]
        seen[x] = len(path_u)
        path_u.append(x)
    x = v
    while x not in seen:
        x = parent[x]
        path_v.append(x)
    cut = seen[x]
    return path_u[:cut] + [x] + path_v[-2::-1]


# ---------------------------------------------------------------------------
# affine equivalence: sigma ~ tau iff sigma = t + s*tau with s a unit

FULL_PARTITION_MAX_N = 7


def canonical_form(p: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least affine image t + s*p over units s and shifts t.

    The whole orbit (n * phi(n) images) is walked; orbit sizes at the scales
    this library targets make anything cleverer pointless.
    """
    n = len(p)
    best: tuple[int, ...] | None = None
    for s in range(1, n):
        if gcd(s, n) != 1:
            continue
        scaled = [(s * v) % n for v in p]
        for t in range(n):
            img = tuple((v + t) % n for v in scaled)
            if best is None or img < best:
                best = img
    assert best is not None
    return best


def equivalence_classes(m: Modulus) -> dict[tuple[int, ...], list[tuple[int, ...]]]:
    """Partition of all n! permutations into affine orbits, keyed by canonical form.

    Every class has exactly n * phi(n) members (the action is free), giving
    (n-1)!/phi(n) classes.  Guarded at n <= 7; the full permutation list is
    materialized.
    """
    n = m.n
    if n > FULL_PARTITION_MAX_N:
        raise BudgetError(
            f"full partition walks all {n}! permutations; the guard is n <= {FULL_PARTITION_MAX_N}"
        )
    unit_list = [s for s in range(1, n) if gcd(s, n) == 1]
    classes: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    seen: set[tuple[int, ...]] = set()
    for p in all_permutations(n):
        if p in seen:
            continue
        orbit = {
            tuple((s * v + t) % n for v in p) for s in unit_list for t in range(n)
        }
        classes[min(orbit)] = sorted(orbit)
        seen |= orbit
    return classes


# ---------------------------------------------------------------------------
# isotropy and rank over the prime field


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    """Rank by Gaussian elimination over Z_p (exact modular inverses)."""
    mat = [[v % p for v in row] for row in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = pow(mat[rank][col], -1, p)
        mat[rank] = [(v * inv) % p for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                factor = mat[r][col]
                mat[r] = [(v - factor * w) % p for v, w in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def isotropy_rank_check(fam: Family) -> tuple[bool, int]:
    """All pairwise inner products vanish mod n, and the member matrix has rank
    at most (n-1)/2 over the field Z_n.

    Needs an odd prime modulus > 3 (the diagonal identity sum(i^2) = 0 mod n
    fails at n = 3) and a verified sum family.  The rank bound is enforced: a
    violation would mean a bug, not a finding.
    """
    n = fam.modulus.n
    if not is_prime(n):
        raise ValueError(f"rank check runs over a prime field; n={n} is composite")
    if n <= 3:
        raise ValueError(f"rank check requires n > 3, got {n}")
    if fam.prop != "P1" or not fam.verified:
        raise ValueError("rank check needs a verified P1 family")
    members = fam.members
    all_orthogonal = all(
        inner_product_mod(members[i], members[j]) == 0
        for i in range(len(members))
        for j in range(i, len(members))
    )
    rank = _rank_mod_p([list(p) for p in members], n)
    if all_orthogonal and rank > (n - 1) // 2:
        raise RuntimeError("isotropic family with rank above (n-1)/2; checker bug")
    return all_orthogonal, rank
