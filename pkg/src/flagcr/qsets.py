"""Predicates on closed root subsets Q and the three gradation properties.

A set Q is an "lb-set" when alpha in Q implies -alpha not in Q and no two
elements sum to a root; it is fundamental when every root lies in Z[Q].  On
fundamental lb-sets three nested properties are decided, each by two
independent routes that must agree:

* CR-symmetric    <->  an E in the coweight lattice with alpha(E) odd on Q
* weak-J          <->  an E with alpha(E) = 1 mod 4 on Q
* J               <->  an E with alpha(E) = 1 exactly on Q

Route A analyses the coset of achievable coefficient sums over the integer
kernel of the Q-expression lattice; route B solves the congruence or
Diophantine system over the coweight lattice.  A mismatch is always a bug and
raises MethodDisagreement.
"""

from __future__ import annotations

from dataclasses import dataclass

from .intlat import SNFSolver, lattice_coset_gcd, solve_congruence, solve_diophantine
from .rootsys import GradingElement, RootSystem, evaluate_int, root_sum, sorted_indices


class MethodDisagreement(AssertionError):
    """The two independent decision routes disagreed; internal bug."""


class HierarchyViolation(AssertionError):
    """j => weak-J => symmetric failed on an evaluated set; internal bug."""


class NotFundamental:
    """Distinct outcome for predicates applied off their hypothesis."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NotFundamental"

    def __bool__(self):
        raise TypeError("NotFundamental outcome is not a boolean; test identity instead")


NOT_FUNDAMENTAL = NotFundamental()


def compatible(r: RootSystem, i: int, j: int) -> bool:
    """Edge relation of the lb compatibility graph."""
    if r.neg(i) == j:
        return False
    return root_sum(r, i, j) is None


def compat_graph(r: RootSystem, constraint=None) -> dict[int, set[int]]:
    """Adjacency over the given roots (all roots when constraint is None);
    lb-sets are exactly the cliques."""
    verts = sorted(constraint) if constraint is not None else range(r.nroots)
    verts = list(verts)
    adj: dict[int, set[int]] = {v: set() for v in verts}
    for a in range(len(verts)):
        for b in range(a + 1, len(verts)):
            i, j = verts[a], verts[b]
            if compatible(r, i, j):
                adj[i].add(j)
                adj[j].add(i)
    return adj


def is_lb(r: RootSystem, q) -> bool:
    qs = sorted(q)
    for a in range(len(qs)):
        for b in range(a, len(qs)):
            i, j = qs[a], qs[b]
            if i == j:
                continue
            if r.neg(i) == j:
                return False
            if root_sum(r, i, j) is not None:
                return False
    return True


def is_closed(r: RootSystem, q) -> bool:
    """Closed under root addition: a,b in Q, a+b a root => a+b in Q."""
    qs = sorted(q)
    qset = set(qs)
    for a in range(len(qs)):
        for b in range(a + 1, len(qs)):
            s = root_sum(r, qs[a], qs[b])
            if s is not None and s not in qset:
                return False
    return True


def _expression_solver(r: RootSystem, q) -> SNFSolver:
    """Solver for the system (columns = stored vectors of Q) * k = gamma."""
    qs = sorted(q)
    cols = [r.roots[i] for i in qs]
    if not cols:
        return SNFSolver([[0] for _ in range(r.ambient_dim)])
    a = [[c[t] for c in cols] for t in range(r.ambient_dim)]
    return SNFSolver(a)


def is_fundamental(r: RootSystem, q) -> bool:
    """Every root lies in the integer lattice generated by Q."""
    if not q:
        return r.nroots == 0
    solver = _expression_solver(r, q)
    return all(solver.solve(list(v)) is not None for v in r.roots)


@dataclass(frozen=True)
class DegreeCoset:
    """Set {h : gamma in Q*_h} as the arithmetic progression base + step*Z
    (step 0 means the singleton {base}); empty when gamma is not in Z[Q]."""

    empty: bool
    base: int = 0
    step: int = 0

    def contains(self, h: int) -> bool:
        if self.empty:
            return False
        if self.step == 0:
            return h == self.base
        return (h - self.base) % self.step == 0

    def contains_odd(self) -> bool:
        if self.empty:
            return False
        if self.step == 0:
            return self.base % 2 == 1
        if self.step % 2 == 1:
            return True
        return self.base % 2 == 1

    def contains_two_mod_four(self) -> bool:
        if self.empty:
            return False
        if self.step == 0:
            return self.base % 4 == 2
        if self.step % 2 == 1:
            return True
        if self.step % 4 == 2:
            return self.base % 2 == 0
        return self.base % 4 == 2

    def is_singleton(self) -> bool:
        return not self.empty and self.step == 0


def degree_set(r: RootSystem, q, gamma_idx: int) -> DegreeCoset:
    """Achievable coefficient sums h with gamma = sum k_i beta_i, beta_i in Q."""
    solver = _expression_solver(r, q)
    sol = solver.solve(list(r.roots[gamma_idx]))
    if sol is None:
        return DegreeCoset(empty=True)
    base = sum(sol.particular)
    step = lattice_coset_gcd(sol.kernel_basis, [1] * len(sol.particular))
    return DegreeCoset(empty=False, base=base, step=step)


def kernel_degree_gcd(r: RootSystem, q) -> int:
    """gcd of coefficient sums over the integer kernel of the Q-expression
    lattice; the coset of every expressible root is (base + gcd*Z)."""
    solver = _expression_solver(r, q)
    return lattice_coset_gcd(solver.kernel_basis, [1] * max(1, len(sorted_indices(q))))


def q_star_11(r: RootSystem, q) -> frozenset[int]:
    """Roots of the form +-(beta1 - beta2) with beta1, beta2 in Q."""
    out = set()
    qs = sorted(q)
    for a in range(len(qs)):
        for b in range(a + 1, len(qs)):
            diff = tuple(x - y for x, y in zip(r.roots[qs[a]], r.roots[qs[b]]))
            idx = r.index.get(diff)
            if idx is not None:
                out.add(idx)
                out.add(r.neg(idx))
    return frozenset(out)


def q_star_bounded(r: RootSystem, q, h: int, max_terms: int = 6) -> frozenset[int]:
    """Explicit Q*_h by bounded enumeration (cross-check oracle only):
    expressions with at most ``max_terms`` summands +-beta."""
    qs = sorted(q)
    zero = tuple(0 for _ in range(r.ambient_dim))
    states = {(zero, 0)}
    found = set()
    for _ in range(max_terms):
        nxt = set()
        for vec, deg in states:
            for i in qs:
                for sgn in (1, -1):
                    v2 = tuple(x + sgn * y for x, y in zip(vec, r.roots[i]))
                    nxt.add((v2, deg + sgn))
        states |= nxt
        for vec, deg in nxt:
            if deg == h and vec in r.index:
                found.add(r.index[vec])
    return frozenset(found)


def _coweight_eval_matrix(r: RootSystem, q) -> list[list[int]]:
    rows = []
    for i in sorted(q):
        row = []
        for basis_vec in r.coweight_basis:
            from .rootsys import evaluate

            v = evaluate(r.roots[i], basis_vec)
            assert v.denominator == 1
            row.append(int(v))
        rows.append(row)
    return rows


def _verify_witness(r: RootSystem, q, e: GradingElement, modulus: int | None):
    for i in sorted(q):
        v = evaluate_int(r.roots[i], e)
        if modulus is None:
            assert v == 1, "witness fails exact evaluation"
        else:
            assert v % modulus == 1 % modulus, "witness fails congruence"
    for root in r.roots:
        from .rootsys import evaluate

        assert evaluate(root, e).denominator == 1, "witness leaves the coweight lattice"


def _precheck(r: RootSystem, q):
    if not is_lb(r, q):
        return NOT_FUNDAMENTAL
    if not is_fundamental(r, q):
        return NOT_FUNDAMENTAL
    return None


def is_symmetric(r: RootSystem, q):
    """CR-symmetry: returns (bool, witness-or-None), or NOT_FUNDAMENTAL when
    the lb/fundamental hypothesis fails."""
    bad = _precheck(r, q)
    if bad is not None:
        return bad
    # route A: parity of the degree cosets of Q*_{1,1} (all have base 0)
    star = q_star_11(r, q)
    g = kernel_degree_gcd(r, q)
    verdict_a = (not star) or (g % 2 == 0)
    # route B: alpha(E) = 1 mod 2 over the coweight lattice
    rows = _coweight_eval_matrix(r, q)
    x = solve_congruence(rows, [1] * len(rows), 2)
    if (x is not None) != verdict_a:
        raise MethodDisagreement(f"symmetric: coset route {verdict_a}, solver route {x is not None}")
    if x is None:
        return (False, None)
    e = r.grading_element(x)
    _verify_witness(r, q, e, 2)
    return (True, e)


def has_weak_j(r: RootSystem, q):
    """Weak-J property (mod-4 witness); same contract as is_symmetric."""
    bad = _precheck(r, q)
    if bad is not None:
        return bad
    star = q_star_11(r, q)
    g = kernel_degree_gcd(r, q)
    verdict_a = (not star) or (g % 4 == 0)
    rows = _coweight_eval_matrix(r, q)
    x = solve_congruence(rows, [1] * len(rows), 4)
    if (x is not None) != verdict_a:
        raise MethodDisagreement(f"weak-J: coset route {verdict_a}, solver route {x is not None}")
    if x is None:
        return (False, None)
    e = r.grading_element(x)
    _verify_witness(r, q, e, 4)
    return (True, e)


def has_j(r: RootSystem, q):
    """J property (exact witness alpha(E) = 1 on Q); same contract."""
    bad = _precheck(r, q)
    if bad is not None:
        return bad
    # route A: all degree cosets are singletons <=> kernel degree gcd is 0
    verdict_a = kernel_degree_gcd(r, q) == 0
    rows = _coweight_eval_matrix(r, q)
    sol = solve_diophantine(rows, [1] * len(rows))
    if (sol is not None) != verdict_a:
        raise MethodDisagreement(f"J: coset route {verdict_a}, solver route {sol is not None}")
    if sol is None:
        return (False, None)
    e = r.grading_element(sol.particular)
    _verify_witness(r, q, e, None)
    return (True, e)


@dataclass
class PropertyReport:
    is_lb: bool
    is_fundamental: bool
    symmetric: bool | None = None
    weak_j: bool | None = None
    j_property: bool | None = None
    witness_mod2: GradingElement | None = None
    witness_mod4: GradingElement | None = None
    witness_exact: GradingElement | None = None

    def to_jsonable(self) -> dict:
        def w(e):
            return None if e is None else list(e.coords)

        return {
            "is_lb": self.is_lb,
            "fundamental": self.is_fundamental,
            "symmetric": self.symmetric,
            "weak_j": self.weak_j,
            "j": self.j_property,
            "witness_mod2": w(self.witness_mod2),
            "witness_mod4": w(self.witness_mod4),
            "witness_exact": w(self.witness_exact),
        }


def property_report(r: RootSystem, q) -> PropertyReport:
    """Full report; enforces the j => weak-J => symmetric hierarchy on every
    evaluation (HierarchyViolation would be an internal bug)."""
    lb = is_lb(r, q)
    fund = is_fundamental(r, q)
    rep = PropertyReport(is_lb=lb, is_fundamental=fund)
    if not lb or not fund:
        return rep
    sym, e2 = is_symmetric(r, q)
    wj, e4 = has_weak_j(r, q)
    jp, ee = has_j(r, q)
    rep.symmetric, rep.weak_j, rep.j_property = sym, wj, jp
    rep.witness_mod2, rep.witness_mod4, rep.witness_exact = e2, e4, ee
    if (jp and not wj) or (wj and not sym):
        raise HierarchyViolation(f"hierarchy broken: j={jp} weak={wj} sym={sym}")
    return rep
