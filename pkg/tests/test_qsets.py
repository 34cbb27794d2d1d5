import itertools
import random
from fractions import Fraction

import pytest

from flagcr.qsets import (
    NOT_FUNDAMENTAL,
    DegreeCoset,
    compat_graph,
    compatible,
    degree_set,
    has_j,
    has_weak_j,
    is_fundamental,
    is_lb,
    is_symmetric,
    kernel_degree_gcd,
    property_report,
    q_star_11,
    q_star_bounded,
)
from flagcr.rootsys import build_root_system, evaluate_int, find_root, roots_set
from flagcr.weyl import random_element

H = Fraction(1, 2)


def g2_sets():
    g2 = build_root_system("G2")
    q0 = roots_set(g2, [(1, 0, -1), (2, -1, -1)])
    q1 = roots_set(g2, [(1, 0, -1), (2, -1, -1), (1, -2, 1)])
    q2 = roots_set(g2, [(1, 0, -1), (2, -1, -1), (1, 1, -2)])
    return g2, q0, q1, q2


def test_is_lb_examples():
    a2 = build_root_system("A", 3)
    assert is_lb(a2, roots_set(a2, [(1, -1, 0)]))
    assert not is_lb(a2, roots_set(a2, [(1, -1, 0), (0, 1, -1)]))
    # A_{n-1} catalog sets Q_p are lb
    a4 = build_root_system("A", 5)
    for p in range(1, 5):
        q = roots_set(
            a4,
            [
                tuple(1 if k == i else -1 if k == j else 0 for k in range(5))
                for i in range(p)
                for j in range(p, 5)
            ],
        )
        assert is_lb(a4, q)
        assert is_fundamental(a4, q)


def test_is_fundamental_examples():
    a2 = build_root_system("A", 3)
    q1 = roots_set(a2, [(1, -1, 0), (1, 0, -1)])
    assert is_fundamental(a2, q1)
    assert not is_fundamental(a2, roots_set(a2, [(1, -1, 0)]))
    g2, q0, _, _ = g2_sets()
    assert is_lb(g2, q0)
    assert is_fundamental(g2, q0)


def test_degree_set_examples():
    a2 = build_root_system("A", 3)
    q1 = roots_set(a2, [(1, -1, 0), (1, 0, -1)])
    member = find_root(a2, (1, -1, 0))
    coset = degree_set(a2, q1, member)
    assert coset.contains(1)
    # e2 - e3 = (e1-e3) - (e1-e2): degree 0
    other = find_root(a2, (0, 1, -1))
    c2 = degree_set(a2, q1, other)
    assert c2.contains(0)
    # gamma not in Z[Q]
    single = roots_set(a2, [(1, -1, 0)])
    assert degree_set(a2, single, other).empty


def test_q_star_11():
    a2 = build_root_system("A", 3)
    assert q_star_11(a2, roots_set(a2, [(1, -1, 0)])) == frozenset()
    q1 = roots_set(a2, [(1, -1, 0), (1, 0, -1)])
    star = q_star_11(a2, q1)
    assert find_root(a2, (0, 1, -1)) in star
    assert find_root(a2, (0, -1, 1)) in star
    e8 = build_root_system("E8")
    b0 = find_root(e8, [H] * 8)
    b12 = find_root(e8, [-H, -H] + [H] * 6)
    q = frozenset([b0] + [find_root(e8, [-H if k in (i, j) else H for k in range(8)]) for i, j in itertools.combinations(range(8), 2)])
    star8 = q_star_11(e8, q)
    assert find_root(e8, (1, 1, 0, 0, 0, 0, 0, 0)) in star8


def test_degree_coset_mod_table_vs_enumeration():
    # closed-form parity / mod-4 rules against brute enumeration
    for base in range(-6, 7):
        for step in range(0, 9):
            c = DegreeCoset(empty=False, base=base, step=step)
            values = {base + k * step for k in range(-40, 41)}
            assert c.contains_odd() == any(v % 2 == 1 for v in values)
            assert c.contains_two_mod_four() == any(v % 4 == 2 for v in values)
            assert c.is_singleton() == (len(values) == 1)
    empty = DegreeCoset(empty=True)
    assert not empty.contains_odd() and not empty.contains_two_mod_four()


def test_g2_stratification_members():
    g2, q0, q1, q2 = g2_sets()
    s1, w1 = is_symmetric(g2, q1)
    assert s1 and w1 is not None
    s2 = is_symmetric(g2, q2)
    assert s2[0] is False
    wk, wit = has_weak_j(g2, q0)
    assert wk and wit is not None
    jj, ew = has_j(g2, q0)
    assert jj
    for i in sorted(q0):
        assert evaluate_int(g2.roots[i], ew) == 1
    # Q_1^4 is symmetric but not weak-J (it lies outside Q_Upsilon)
    assert has_weak_j(g2, q1)[0] is False


def test_not_fundamental_outcome():
    a2 = build_root_system("A", 3)
    single = roots_set(a2, [(1, -1, 0)])
    assert is_symmetric(a2, single) is NOT_FUNDAMENTAL
    assert has_j(a2, frozenset()) is NOT_FUNDAMENTAL
    with pytest.raises(TypeError):
        bool(NOT_FUNDAMENTAL)


def test_an_all_fundamental_sets_symmetric():
    # (A_{n-1}): Q_s = Q: every fundamental lb set is symmetric
    for n in (3, 4):
        rs = build_root_system("A", n)
        for size in (n - 1, n):
            for combo in itertools.combinations(range(rs.nroots), size):
                q = frozenset(combo)
                if not is_lb(rs, q) or not is_fundamental(rs, q):
                    continue
                assert is_symmetric(rs, q)[0] is True


def test_compat_graph_examples():
    a2 = build_root_system("A", 3)
    adj = compat_graph(a2)
    i = find_root(a2, (1, -1, 0))
    j = find_root(a2, (1, 0, -1))
    assert j in adj[i]
    assert a2.neg(i) not in adj[i]
    f4 = build_root_system("F4")
    clique = roots_set(
        f4,
        [(1, 0, 0, 0), (H, H, H, H), (H, H, H, -H), (1, 0, 1, 0), (1, 0, -1, 0), (0, 1, 0, 1), (0, 1, 0, -1)],
    )
    assert is_lb(f4, clique)


def test_weyl_invariance_of_predicates():
    rng = random.Random(99)
    g2, q0, q1, q2 = g2_sets()
    base = property_report(g2, q1)
    for _ in range(10):
        g = random_element(g2, rng)
        moved = frozenset(g.perm[i] for i in q1)
        rep = property_report(g2, moved)
        assert (rep.symmetric, rep.weak_j, rep.j_property) == (
            base.symmetric,
            base.weak_j,
            base.j_property,
        )


def test_q_star_symmetry_and_bounded_oracle():
    g2, q0, _, _ = g2_sets()
    # Q*_{-h} = -Q*_h via bounded enumeration
    for h in (0, 1, 2):
        plus = q_star_bounded(g2, q0, h, max_terms=4)
        minus = q_star_bounded(g2, q0, -h, max_terms=4)
        assert {g2.neg(i) for i in plus} == minus
    # bounded enumeration agrees with the coset predictions it can reach
    for h in (-2, -1, 0, 1, 2):
        explicit = q_star_bounded(g2, q0, h, max_terms=4)
        for idx in explicit:
            assert degree_set(g2, q0, idx).contains(h)


def test_kernel_gcd_matches_j():
    g2, q0, q1, _ = g2_sets()
    assert kernel_degree_gcd(g2, q0) == 0
    assert has_j(g2, q0)[0] is True
    assert kernel_degree_gcd(g2, q1) % 2 == 0
    assert kernel_degree_gcd(g2, q1) % 4 != 0


def test_difference_roots_nonempty_for_proper_sets():
    # fundamental lb-sets with Q u -Q != R have nonempty Q*_{1,1}
    for tag, rank in [("A", 3), ("B", 2), ("G2", None)]:
        rs = build_root_system(tag, rank)
        for size in (2, 3):
            for combo in itertools.combinations(range(rs.nroots), size):
                q = frozenset(combo)
                if not is_lb(rs, q) or not is_fundamental(rs, q):
                    continue
                if len(q) * 2 < rs.nroots:
                    assert q_star_11(rs, q), q
