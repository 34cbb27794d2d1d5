import random
from fractions import Fraction

from flagcr.rootsys import build_root_system, find_root, inner, roots_set
from flagcr.weyl import (
    canonical_form,
    cartan_matrix,
    diagram_automorphisms,
    generators,
    in_weyl,
    random_element,
    reflect,
    sets_equivalent,
    set_orbit,
    simple_roots,
)


def test_reflect_basics():
    a2 = build_root_system("A", 3)
    i = find_root(a2, (1, -1, 0))
    alpha = a2.roots[i]
    assert tuple(int(x) for x in reflect(a2, i, alpha)) == tuple(-x for x in alpha)
    # orthogonal vector is fixed
    v = (Fraction(1), Fraction(1), Fraction(1))
    assert reflect(a2, i, v) == v
    # s_{e1-e2}(e2-e3) = e1-e3
    j = find_root(a2, (0, 1, -1))
    img = reflect(a2, i, a2.roots[j])
    assert tuple(int(x) for x in img) == a2.roots[find_root(a2, (1, 0, -1))]


def test_simple_roots_counts():
    for tag, rank, expect in [("A", 4, 3), ("B", 3, 3), ("G2", None, 2), ("F4", None, 4), ("D", 4, 4)]:
        rs = build_root_system(tag, rank)
        s = simple_roots(rs)
        assert len(s) == expect
        cm = cartan_matrix(rs, s)
        assert all(cm[i][i] == 2 for i in range(len(s)))


def test_diagram_automorphisms_orders():
    assert len(diagram_automorphisms(build_root_system("A", 4))) == 1
    assert len(diagram_automorphisms(build_root_system("B", 3))) == 0
    assert len(diagram_automorphisms(build_root_system("D", 4))) == 5
    assert len(diagram_automorphisms(build_root_system("D", 5))) == 1
    assert len(diagram_automorphisms(build_root_system("G2"))) == 0
    assert len(diagram_automorphisms(build_root_system("E6"))) == 1


def test_canonical_form_idempotent_and_orbit_constant():
    a2 = build_root_system("A", 3)
    q = roots_set(a2, [(0, 1, -1)])
    c = canonical_form(a2, q)
    assert canonical_form(a2, c) == c
    # single-root sets of A2 are one W-orbit
    q2 = roots_set(a2, [(1, -1, 0)])
    assert canonical_form(a2, q2) == c
    rng = random.Random(5)
    b3 = build_root_system("B", 3)
    q3 = roots_set(b3, [(1, 0, 0), (1, 1, 0)])
    c3 = canonical_form(b3, q3)
    for _ in range(20):
        g = random_element(b3, rng)
        moved = frozenset(g.perm[i] for i in q3)
        assert canonical_form(b3, moved) == c3


def test_a3_q1_q3_equivalence():
    a3 = build_root_system("A", 4)
    q1 = roots_set(a3, [(1, -1, 0, 0), (1, 0, -1, 0), (1, 0, 0, -1)])
    q3 = roots_set(a3, [(1, 0, 0, -1), (0, 1, 0, -1), (0, 0, 1, -1)])
    assert not sets_equivalent(a3, q1, q3, "weyl")
    assert sets_equivalent(a3, q1, q3, "aut")
    # oracle: full orbit enumeration over |W| = 24
    orbit = set_orbit(a3, q1, "weyl")
    assert frozenset(q3) not in orbit
    orbit_aut = set_orbit(a3, q1, "aut")
    assert frozenset(q3) in orbit_aut


def test_d4_q4_vs_qminus4():
    d4 = build_root_system("D", 4)
    q4 = roots_set(d4, [(1, 1, 0, 0), (1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1), (0, 0, 1, 1)])
    qm4 = roots_set(
        d4,
        [(1, 1, 0, 0), (1, 0, 1, 0), (0, 1, 1, 0), (1, 0, 0, -1), (0, 1, 0, -1), (0, 0, 1, -1)],
    )
    assert not sets_equivalent(d4, q4, qm4, "weyl")
    assert sets_equivalent(d4, q4, qm4, "aut")


def test_trivial_equivalences():
    b2 = build_root_system("B", 2)
    q = roots_set(b2, [(1, 0)])
    assert sets_equivalent(b2, q, q, "weyl")
    q2 = roots_set(b2, [(1, 0), (1, 1)])
    assert not sets_equivalent(b2, q, q2, "weyl")


def test_in_weyl():
    a3 = build_root_system("A", 4)
    for g in generators(a3, "weyl"):
        assert in_weyl(a3, g)
    flip = diagram_automorphisms(a3)[0]
    assert not in_weyl(a3, flip)
    rng = random.Random(1)
    for _ in range(5):
        g = random_element(a3, rng)
        assert in_weyl(a3, g)


def test_canonical_form_budget():
    import pytest

    from flagcr.weyl import OrbitBudgetExceeded

    f4 = build_root_system("F4")
    q = roots_set(f4, [(1, 0, 0, 0), (1, 1, 0, 0)])
    with pytest.raises(OrbitBudgetExceeded):
        canonical_form(f4, q, budget=3)


def test_equivalence_agrees_with_orbit_bfs():
    rng = random.Random(31)
    for tag, rank in [("A", 3), ("B", 2), ("G2", None)]:
        rs = build_root_system(tag, rank)
        for _ in range(6):
            size = rng.randint(1, 3)
            q1 = frozenset(rng.sample(range(rs.nroots), size))
            q2 = frozenset(rng.sample(range(rs.nroots), size))
            for group in ("weyl", "aut"):
                want = frozenset(q2) in set_orbit(rs, q1, group)
                assert sets_equivalent(rs, q1, q2, group) == want
