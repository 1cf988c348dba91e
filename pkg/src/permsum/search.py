"""Exact extremal search over permutation compatibility graphs.

The extremal sizes s(n), t(n), f(n) are clique numbers of graphs whose
vertices are permutations and whose edges follow the pairwise property.  The
engine here is a branch-and-bound maximum-clique search with greedy-coloring
upper bounds over dense bit-packed adjacency rows (Python ints, so candidate
intersection is a single word-parallel AND), plus an identity-normalized
symmetry reduction that shrinks the search by a factor of about n!.

Determinism contract: given a graph, max_clique returns the same value,
certificate, and node count for every thread count, including 1.  The root of
the search tree is split into its first-level subproblems once; each is solved
independently against a fixed greedy incumbent (no cross-branch sharing), and
ties between equal-size cliques are broken by the lexicographically least
tuple of sorted original vertex indices.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .families import Family, bounds
from .modring import Modulus
from .perms import (
    BudgetError,
    PROPERTIES,
    all_permutations,
    identity,
    is_permutation,
    pair_property,
)
from .verify import verify_family

QUANTITY_PROP = {"s": "P1", "t": "P2", "f": "P3"}

FULL_GRAPH_MAX_N = 7

# seed pass: greedy cliques grown from this many highest-degree starts
_SEED_STARTS = 256


@dataclass
class CompatGraph:
    """Vertices plus symmetric bit-packed adjacency; bit j of rows[i] is edge (i, j)."""

    modulus: Modulus
    prop: str
    vertices: list[tuple[int, ...]]
    rows: list[int]

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def degree(self, i: int) -> int:
        return self.rows[i].bit_count()


@dataclass
class SearchResult:
    value: int
    certificate: Family
    status: str  # "exact" | "lower_bound_only"
    nodes_explored: int
    elapsed: float


def build_compat_graph(
    m: Modulus,
    prop: str,
    vertices: Sequence[tuple[int, ...]] | None = None,
) -> CompatGraph:
    """Adjacency of the pairwise property over the given vertices.

    With vertices=None all n! permutations are used (lexicographic order),
    guarded at n <= 7.  Rows are computed vectorized: for each vertex the
    pointwise sums (differences for P3) against every other vertex are checked
    for being permutations in one shot.
    """
    if prop not in PROPERTIES:
        raise ValueError(f"unknown property {prop!r}; expected one of {PROPERTIES}")
    n = m.n
    if vertices is None:
        if n > FULL_GRAPH_MAX_N:
            count = math.factorial(n)
            raise BudgetError(
                f"full graph for n={n} has {count} vertices "
                f"(~{count * count // 8 / 1e9:.1f} GB of adjacency); the guard is n <= {FULL_GRAPH_MAX_N}"
            )
        vertex_list = list(all_permutations(n))
    else:
        vertex_list = [tuple(v) for v in vertices]
        if len(set(vertex_list)) != len(vertex_list):
            raise ValueError("vertex list contains duplicates")
        for v in vertex_list:
            if len(v) != n or not is_permutation(v):
                raise ValueError(f"vertex {v} is not a permutation of 0..{n - 1}")
    count = len(vertex_list)
    rows: list[int] = []
    if count == 0:
        return CompatGraph(m, prop, vertex_list, rows)
    arr = np.array(vertex_list, dtype=np.int64)
    target = np.arange(n, dtype=np.int64)
    for i in range(count):
        if prop == "P3":
            spread = (arr - arr[i]) % n
        else:
            spread = (arr + arr[i]) % n
        ok = (np.sort(spread, axis=1) == target).all(axis=1)
        if prop == "P2":
            ok = ~ok
        ok[i] = False
        rows.append(int.from_bytes(np.packbits(ok, bitorder="little").tobytes(), "little"))
    return CompatGraph(m, prop, vertex_list, rows)


# ---------------------------------------------------------------------------
# branch and bound


class _TimeUp(Exception):
    pass


def _color_order(candidates: int, adj: list[int]) -> tuple[list[int], list[int]]:
    """Greedy coloring of the candidate set.

    Returns vertices ordered class by class with their 1-based color numbers
    (a nondecreasing list).  A clique inside `candidates` can use at most one
    vertex per color class, so color numbers bound the best possible extension
    when branching from the tail of the order.
    """
    order: list[int] = []
    color_bounds: list[int] = []
    color = 0
    uncolored = candidates
    while uncolored:
        color += 1
        avail = uncolored
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            order.append(v)
            color_bounds.append(color)
            uncolored ^= low
            avail = (avail ^ low) & ~adj[v]
    return order, color_bounds


class _BranchSolver:
    """Serial expansion of one root subproblem with its own incumbent."""

    def __init__(
        self,
        adj: list[int],
        floor: int,
        deadline: float | None,
        t0: float,
        on_improve: Callable[[int, float, int], None] | None,
    ):
        self.adj = adj
        self.best = floor
        self.best_clique: list[int] | None = None
        self.deadline = deadline
        self.t0 = t0
        self.on_improve = on_improve
        self.nodes = 0
        self.stack: list[int] = []
        self.timed_out = False

    def run(self, v: int, candidates: int) -> None:
        self.stack = [v]
        try:
            if 1 > self.best:
                self._record()
            if candidates:
                self._expand(1, candidates)
        except _TimeUp:
            self.timed_out = True

    def _record(self) -> None:
        self.best = len(self.stack)
        self.best_clique = list(self.stack)
        if self.on_improve is not None:
            self.on_improve(self.best, time.monotonic() - self.t0, self.nodes)

    def _expand(self, depth: int, candidates: int) -> None:
        self.nodes += 1
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise _TimeUp
        order, color_bounds = _color_order(candidates, self.adj)
        remaining = candidates
        for i in range(len(order) - 1, -1, -1):
            if depth + color_bounds[i] <= self.best:
                return  # bounds are nondecreasing: everything earlier prunes too
            v = order[i]
            self.stack.append(v)
            if depth + 1 > self.best:
                self._record()
            nxt = remaining & self.adj[v]
            if nxt:
                self._expand(depth + 1, nxt)
            self.stack.pop()
            remaining ^= 1 << v


def max_clique(
    g: CompatGraph,
    time_limit: float | None = None,
    threads: int = 1,
    on_improve: Callable[[int, float, int], None] | None = None,
) -> SearchResult:
    """Exact maximum clique of a compatibility graph.

    Vertices are branched in descending-degree order.  Within the time limit
    the result is status="exact"; on expiry the best clique found so far comes
    back as status="lower_bound_only".  `on_improve(size, elapsed, nodes)` is
    called whenever some subproblem improves its incumbent.

    The value, certificate, and nodes_explored are identical for every
    `threads` setting; see the module docstring for the tie-break order.
    """
    t0 = time.monotonic()
    deadline = t0 + time_limit if time_limit is not None else None
    total = len(g.vertices)
    if total == 0:
        empty = Family(g.modulus, g.prop, [])
        return SearchResult(0, empty, "exact", 0, time.monotonic() - t0)

    # branch order: descending degree, ties by original index
    degrees = [r.bit_count() for r in g.rows]
    order = sorted(range(total), key=lambda v: (-degrees[v], v))
    bits = np.zeros((total, total), dtype=bool)
    for i, row in enumerate(g.rows):
        if row:
            raw = np.frombuffer(
                row.to_bytes((total + 7) // 8, "little"), dtype=np.uint8
            )
            bits[i] = np.unpackbits(raw, bitorder="little")[:total]
    shuffled = bits[np.ix_(order, order)]
    adj = [
        int.from_bytes(np.packbits(shuffled[i], bitorder="little").tobytes(), "little")
        for i in range(total)
    ]

    # deterministic greedy incumbent: grow from the highest-degree starts
    seed: list[int] = []
    for v in range(min(total, _SEED_STARTS)):
        clique = [v]
        cand = adj[v]
        while cand:
            low = cand & -cand
            u = low.bit_length() - 1
            clique.append(u)
            cand &= adj[u]
        if len(clique) > len(seed):
            seed = clique

    # root split, exactly as a serial first level would branch
    full_set = (1 << total) - 1
    root_order, root_bounds = _color_order(full_set, adj)
    branches: list[tuple[int, int]] = []
    pool = full_set
    for i in range(len(root_order) - 1, -1, -1):
        if root_bounds[i] <= len(seed):
            break
        v = root_order[i]
        branches.append((v, pool & adj[v]))
        pool ^= 1 << v

    def solve(branch: tuple[int, int]) -> _BranchSolver:
        solver = _BranchSolver(adj, len(seed), deadline, t0, on_improve)
        solver.run(*branch)
        return solver

    if threads > 1 and len(branches) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool_exec:
            solvers = list(pool_exec.map(solve, branches))
    else:
        solvers = [solve(b) for b in branches]

    nodes = sum(s.nodes for s in solvers)
    timed_out = any(s.timed_out for s in solvers)
    best_size = max([len(seed)] + [s.best for s in solvers if s.best_clique is not None])
    candidates = [seed] if len(seed) == best_size else []
    candidates += [
        s.best_clique
        for s in solvers
        if s.best_clique is not None and len(s.best_clique) == best_size
    ]
    # tie-break on sorted ORIGINAL vertex indices
    chosen = min(candidates, key=lambda c: tuple(sorted(order[v] for v in c)), default=[])
    members = sorted(g.vertices[order[v]] for v in chosen)
    certificate = Family(g.modulus, g.prop, members)
    status = "lower_bound_only" if timed_out else "exact"
    return SearchResult(best_size, certificate, status, nodes, time.monotonic() - t0)


# ---------------------------------------------------------------------------
# extremal quantities


def extremal(
    m: Modulus,
    quantity: str,
    time_limit: float | None = None,
    threads: int = 1,
    on_improve: Callable[[int, float, int], None] | None = None,
) -> SearchResult:
    """Exact s(n), t(n), or f(n) by identity-normalized clique search.

    Right-composing every member of a family with the inverse of one member
    preserves all three pairwise properties, since (a o rho) +- (b o rho) =
    (a +- b) o rho; every maximal family is therefore equivalent to one
    containing the identity, and the answer is 1 + the clique number of the
    identity's neighborhood.  The result is cross-checked against the closed
    form bounds and the certificate is re-verified; either failing is a bug,
    so both raise.
    """
    if quantity not in QUANTITY_PROP:
        raise ValueError(f"unknown quantity {quantity!r}; expected s, t, or f")
    prop = QUANTITY_PROP[quantity]
    n = m.n
    if n > FULL_GRAPH_MAX_N:
        raise BudgetError(
            f"search enumerates all {n}! permutations; the guard is n <= {FULL_GRAPH_MAX_N}"
        )
    t0 = time.monotonic()
    ident = identity(n)
    neighborhood = [
        p for p in all_permutations(n) if p != ident and pair_property(ident, p, prop)
    ]
    sub = build_compat_graph(m, prop, vertices=neighborhood)
    inner = max_clique(sub, time_limit=time_limit, threads=threads, on_improve=on_improve)
    members = sorted(inner.certificate.members + [ident])
    certificate = Family(m, prop, members)
    report = verify_family(certificate)
    if not report.ok:
        raise RuntimeError(f"search certificate failed verification: {report.violations[:3]}")
    value = inner.value + 1
    rep = bounds(n, quantity)
    if rep.upper is not None and value > rep.upper.value:
        raise RuntimeError(
            f"search value {value} exceeds the proven upper bound {rep.upper.value}"
        )
    if inner.status == "exact" and value < rep.lower.value:
        raise RuntimeError(
            f"exact search value {value} is below the construction lower bound {rep.lower.value}"
        )
    return SearchResult(value, certificate, inner.status, inner.nodes_explored, time.monotonic() - t0)


# ---------------------------------------------------------------------------
# independent reference values


def oracle_extremal(m: Modulus, quantity: str) -> int:
    """Reference extremal value by a deliberately separate route.

    n = 3: enumerate all 2**6 subsets of the six permutations and keep those
    whose distinct pairs all satisfy the property.  Other n <= 5: a plain
    set-based coloring search over the full unreduced graph, written apart
    from the bit-packed engine so the two can cross-check each other.
    """
    if quantity not in QUANTITY_PROP:
        raise ValueError(f"unknown quantity {quantity!r}; expected s, t, or f")
    prop = QUANTITY_PROP[quantity]
    n = m.n
    if n == 3:
        six = list(all_permutations(3))
        best = 0
        for mask in range(1, 1 << 6):
            chosen = [six[i] for i in range(6) if mask >> i & 1]
            if all(
                pair_property(chosen[i], chosen[j], prop)
                for i in range(len(chosen))
                for j in range(i + 1, len(chosen))
            ):
                best = max(best, len(chosen))
        return best
    if n > 5:
        raise BudgetError(f"the reference search runs only for n <= 5, got {n}")
    verts = list(all_permutations(n))
    count = len(verts)
    neighbors: list[set[int]] = [set() for _ in range(count)]
    for i in range(count):
        for j in range(i + 1, count):
            if pair_property(verts[i], verts[j], prop):
                neighbors[i].add(j)
                neighbors[j].add(i)
    best = [1]

    def color_order(cand: set[int]) -> tuple[list[int], list[int]]:
        classes: list[set[int]] = []
        for v in sorted(cand):
            for cls in classes:
                if neighbors[v].isdisjoint(cls):
                    cls.add(v)
                    break
            else:
                classes.append({v})
        order: list[int] = []
        bound: list[int] = []
        for ci, cls in enumerate(classes):
            for v in sorted(cls):
                order.append(v)
                bound.append(ci + 1)
        return order, bound

    def grow(size: int, cand: set[int]) -> None:
        if size > best[0]:
            best[0] = size
        order, bound = color_order(cand)
        for i in range(len(order) - 1, -1, -1):
            if size + bound[i] <= best[0]:
                return
            v = order[i]
            grow(size + 1, cand & neighbors[v])
            cand = cand - {v}

    grow(0, set(range(count)))
    return best[0]
