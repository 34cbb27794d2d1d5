import itertools
import random
from math import gcd

from flagcr.intlat import (
    DiophantineSolution,
    det,
    hermite_basis,
    identity_matrix,
    lattice_contains,
    lattice_coset_gcd,
    mat_mul,
    smith_normal_form,
    solve_congruence,
    solve_diophantine,
)


def check_snf(m):
    s, u, v = smith_normal_form(m)
    assert mat_mul(mat_mul(u, m), v) == s
    assert abs(det(u)) == 1
    assert abs(det(v)) == 1
    diag = [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0))]
    for i in range(len(s)):
        for j in range(len(s[0]) if s else 0):
            if i != j:
                assert s[i][j] == 0
    nz = [d for d in diag if d != 0]
    assert all(d > 0 for d in nz)
    for a, b in zip(nz, nz[1:]):
        assert b % a == 0
    assert diag[len(nz):] == [0] * (len(diag) - len(nz))
    return diag


def test_snf_identity():
    s, u, v = smith_normal_form(identity_matrix(2))
    assert s == identity_matrix(2)
    assert u == identity_matrix(2)
    assert v == identity_matrix(2)


def test_snf_diag_2_3():
    # elementary-operation oracle: invariants d1 | d2 and determinant size
    diag = check_snf([[2, 0], [0, 3]])
    assert diag == [1, 6]


def test_snf_zero():
    s, u, v = smith_normal_form([[0, 0], [0, 0]])
    assert s == [[0, 0], [0, 0]]
    assert u == identity_matrix(2)
    assert v == identity_matrix(2)


def test_snf_random():
    rng = random.Random(20240211)
    for _ in range(120):
        nr = rng.randint(1, 5)
        nc = rng.randint(1, 5)
        m = [[rng.randint(-9, 9) for _ in range(nc)] for _ in range(nr)]
        check_snf(m)


def test_snf_rectangular_and_empty():
    check_snf([[2, 4, 6]])
    check_snf([[2], [4], [6]])
    s, u, v = smith_normal_form([])
    assert s == [] and u == [] and v == []


def enumerate_solutions(a, b, box):
    n = len(a[0])
    out = set()
    for x in itertools.product(range(-box, box + 1), repeat=n):
        if all(sum(r[k] * x[k] for k in range(n)) == bb for r, bb in zip(a, b)):
            out.add(x)
    return out


def test_diophantine_simple():
    sol = solve_diophantine([[2]], [4])
    assert sol.particular == (2,)
    assert sol.kernel_basis == ()
    assert solve_diophantine([[2]], [3]) is None


def test_diophantine_line():
    sol = solve_diophantine([[1, 1]], [1])
    assert sum(sol.particular) == 1
    assert len(sol.kernel_basis) == 1
    k = sol.kernel_basis[0]
    assert k in ((1, -1), (-1, 1))


def test_diophantine_vs_enumeration():
    # the solution set must match brute-force enumeration in a box
    rng = random.Random(7)
    for _ in range(60):
        nr = rng.randint(1, 3)
        nc = rng.randint(1, 3)
        a = [[rng.randint(-3, 3) for _ in range(nc)] for _ in range(nr)]
        b = [rng.randint(-4, 4) for _ in range(nr)]
        box = 6
        brute = enumerate_solutions(a, b, box)
        sol = solve_diophantine(a, b)
        if sol is None:
            assert not brute
            continue
        for x in brute:
            diff = [xi - pi for xi, pi in zip(x, sol.particular)]
            assert lattice_contains([list(k) for k in sol.kernel_basis], diff)
        # and every kernel vector really solves the homogeneous system
        for k in sol.kernel_basis:
            assert all(sum(r[i] * k[i] for i in range(nc)) == 0 for r in a)
        assert all(
            sum(r[i] * sol.particular[i] for i in range(nc)) == bb for r, bb in zip(a, b)
        )


def test_congruence_basics():
    assert solve_congruence([[2]], [1], 2) is None
    assert solve_congruence([[1]], [3], 4) == [3]
    x = solve_congruence([[2, 0], [0, 2]], [2, 2], 4)
    assert x is not None
    assert [(2 * x[0]) % 4, (2 * x[1]) % 4] == [2, 2]


def exhaustive_congruence(a, b, m):
    n = len(a[0])
    for x in itertools.product(range(m), repeat=n):
        if all(sum(r[k] * x[k] for k in range(n)) % m == b[i] % m for i, r in enumerate(a)):
            return list(x)
    return None


def test_congruence_vs_exhaustive():
    rng = random.Random(11)
    for _ in range(150):
        m = rng.choice([2, 4])
        nr = rng.randint(1, 3)
        nc = rng.randint(1, 4)
        a = [[rng.randint(-4, 4) for _ in range(nc)] for _ in range(nr)]
        b = [rng.randint(-4, 4) for _ in range(nr)]
        got = solve_congruence(a, b, m)
        want = exhaustive_congruence(a, b, m)
        assert (got is None) == (want is None)
        if got is not None:
            assert all(
                sum(r[k] * got[k] for k in range(nc)) % m == b[i] % m
                for i, r in enumerate(a)
            )


def test_coset_gcd():
    assert lattice_coset_gcd([[1, -1]], [1, 1]) == 0
    assert lattice_coset_gcd([[1, -1], [0, 2]], [1, 1]) == 2
    assert lattice_coset_gcd([], [1, 1]) == 0


def test_coset_gcd_vs_box_enumeration():
    basis = [[1, -1], [0, 2]]
    weight = [1, 1]
    sums = set()
    for c1 in range(-4, 5):
        for c2 in range(-4, 5):
            v = [c1 * basis[0][k] + c2 * basis[1][k] for k in range(2)]
            sums.add(sum(w * x for w, x in zip(weight, v)))
    nonzero = sorted(abs(s) for s in sums if s)
    g = nonzero[0]
    assert g == lattice_coset_gcd(basis, weight)
    assert all(s % g == 0 for s in sums)


def test_hermite_basis():
    basis = hermite_basis([[2, 0], [0, 3], [2, 3]])
    assert len(basis) == 2
    for v in [[2, 0], [0, 3]]:
        assert lattice_contains([list(b) for b in basis], v)
    assert not lattice_contains([list(b) for b in basis], [1, 0])
    assert hermite_basis([[0, 0]]) == []
