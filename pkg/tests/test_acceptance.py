"""Acceptance gate: one test per criterion, each timed against its budget and
printing a PASS/FAIL line.  Run with `pytest tests/test_acceptance.py -v -s`
to see the lines as they happen.
"""

import math
import time
from contextlib import contextmanager
from itertools import combinations

from permsum.families import (
    bounds,
    construct_p1,
    construct_p2,
    construct_p3_prime,
    are_orthogonal,
    is_orthomorphism,
    to_orthomorphisms,
)
from permsum.modring import factorize
from permsum.perms import all_permutations, is_permutation, pointwise_sub
from permsum.search import build_compat_graph, extremal, oracle_extremal
from permsum.verify import (
    bipartite_bound_check,
    cauchy_davenport_check,
    complete_edge_coloring,
    distinct_sum_witness,
    equivalence_classes,
    isotropy_rank_check,
    verify_family,
)


@contextmanager
def criterion(num: int, limit_s: float, what: str):
    start = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {num:02d} FAIL: {what}")
        raise
    elapsed = time.monotonic() - start
    assert elapsed < limit_s, f"criterion {num} took {elapsed:.2f}s, budget {limit_s}s"
    print(f"ACCEPTANCE {num:02d} PASS [{elapsed:.2f}s < {limit_s:g}s]: {what}")


def test_criterion_01_even_collapse():
    with criterion(1, 5.0, "even n: no sum pair, s(n)=1 and t(n)=n!"):
        for n in (2, 4, 6):
            g = build_compat_graph(factorize(n), "P1")
            assert g.edge_count() == 0  # exhaustive pair scan
        for n in (2, 4):
            assert extremal(factorize(n), "s").value == 1
            assert extremal(factorize(n), "t").value == math.factorial(n)
        assert bounds(6, "s").exact.value == 1
        assert bounds(6, "t").exact.value == 720


def test_criterion_02_s3():
    with criterion(2, 1.0, "s(3) = 3 by enumeration, search, and construction"):
        m = factorize(3)
        assert oracle_extremal(m, "s") == 3
        assert extremal(m, "s").value == 3
        assert len(construct_p1(m).members) == 3 * 2 // 2 == 3


def test_criterion_03_t3():
    with criterion(3, 1.0, "t(3) = 2 where the closed-form bounds meet"):
        rep = bounds(3, "t")
        assert rep.lower.value == 2 and rep.upper.value == 2
        assert extremal(factorize(3), "t").value == 2


def test_criterion_04_construction_sizes():
    with criterion(4, 30.0, "construction sizes match the closed forms and verify"):
        for n in (3, 5, 7, 9, 15, 21):
            m = factorize(n)
            fam = construct_p1(m)
            assert len(fam.members) == n * m.phi // 2**m.k
            assert verify_family(fam).ok
        assert len(construct_p1(factorize(9)).members) == 27
        assert len(construct_p1(factorize(15)).members) == 30
        for n, size in ((3, 2), (5, 8), (7, 48), (9, 384)):
            fam = construct_p2(factorize(n))
            assert len(fam.members) == size
            assert size == 2 ** ((n - 1) // 2) * math.factorial((n - 1) // 2)
            assert verify_family(fam).ok


def test_criterion_05_f_prime():
    with criterion(5, 60.0, "f(p) = p-1 at small primes, exact by search"):
        for p in (3, 5, 7):
            fam = construct_p3_prime(factorize(p))
            assert len(fam.members) == p - 1
            assert verify_family(fam).ok
        for p in (3, 5):
            res = extremal(factorize(p), "f")
            assert res.status == "exact"
            assert res.value == p - 1


def test_criterion_06_sandwich_n5():
    with criterion(6, 600.0, "n=5 exact values inside the proven windows, oracle-confirmed"):
        m = factorize(5)
        s_res = extremal(m, "s")
        assert s_res.status == "exact"
        assert 10 <= s_res.value <= 20
        assert s_res.value == oracle_extremal(m, "s")
        t_res = extremal(m, "t")
        assert t_res.status == "exact"
        assert 8 <= t_res.value <= 12
        assert t_res.value == oracle_extremal(m, "t")


def test_criterion_07_isotropy_rank():
    with criterion(7, 1.0, "sum families are self-orthogonal with rank <= (n-1)/2"):
        for n in (5, 7):
            fam = construct_p1(factorize(n))
            verify_family(fam)
            orthogonal, rank = isotropy_rank_check(fam)
            assert orthogonal
            assert rank <= (n - 1) // 2


def test_criterion_08_equivalence_classes():
    with criterion(8, 30.0, "affine class counts and sizes at n = 5 and 7"):
        classes5 = equivalence_classes(factorize(5))
        assert len(classes5) == 6
        assert all(len(v) == 20 for v in classes5.values())
        classes7 = equivalence_classes(factorize(7))
        assert len(classes7) == math.factorial(6) // 6 == 120
        assert all(len(v) == 42 for v in classes7.values())


def test_criterion_09_checker_suites():
    with criterion(9, 60.0, "witness, sumset inequality, and coloring bound suites"):
        # consecutive-sum witness on every qualifying pair of permutations of 0..4
        ps = list(all_permutations(5))
        for a, b in combinations(ps, 2):
            sums = [x + y for x, y in zip(a, b)]
            if len(set(sums)) == 5:
                w = distinct_sum_witness(a, b)
                assert w is not None
                assert sums[w[0]] == sums[w[1]] + 1

        # sumset inequality for every pair of nonempty subsets of Z_7
        subsets = [{x for x in range(7) if mask >> x & 1} for mask in range(1, 128)]
        assert len(subsets) ** 2 == 16129
        for a in subsets:
            for b in subsets:
                assert cauchy_davenport_check(a, b, 7)

        # binary-label colorings of K_{2^k} pass; a monochromatic triangle fails
        for k in (1, 2, 3):
            color = lambda u, v: ((u ^ v) & -(u ^ v)).bit_length()
            res = bipartite_bound_check(complete_edge_coloring(2**k, k, color))
            assert res.ok
            assert len(set(res.labels.values())) == 2**k
        res = bipartite_bound_check(complete_edge_coloring(3, 1, lambda u, v: 1))
        assert not res.ok and len(res.odd_cycle) % 2 == 1


def test_criterion_10_orthomorphisms():
    with criterion(10, 5.0, "difference families convert to mutually orthogonal orthomorphisms"):
        for p in (5, 7, 11):
            fam = construct_p3_prime(factorize(p))
            assert verify_family(fam).ok
            thetas = to_orthomorphisms(fam)
            assert len(thetas) == p - 2
            for i, th in enumerate(thetas):
                assert is_orthomorphism(th)
                assert is_permutation(th)
                assert is_permutation(tuple((th[x] - x) % p for x in range(p)))
                for j in range(i + 1, len(thetas)):
                    assert are_orthogonal(th, thetas[j])
                    assert is_permutation(pointwise_sub(th, thetas[j]))


def test_closed_form_order_footnote():
    """The asymptotic-form statements reduce to: every closed form evaluates and
    lower <= upper wherever both exist, for all n up to 30."""
    for n in range(2, 31):
        for q in ("s", "t", "f"):
            rep = bounds(n, q)
            for u in rep.uppers:
                assert rep.lower.value <= u.value
            if rep.upper_float is not None:
                assert rep.lower.value <= rep.upper_float.value
