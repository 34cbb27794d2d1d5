"""Closed root sets compatible with a real-form conjugation: the partition
condition Q n conj(Q) = 0, Q u conj(Q) = R, the reductive/nilpotent split,
strong orthogonality, the parabolic closure, the adapted simple system, and
the regular maximal CR structures over a maximally compact Cartan.

A conjugation is carried as an exact rational involution of the ambient space
together with the root-index permutation it induces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rootsys import RootSystem, root_sum
from .weyl import apply_matrix_cols


class NoRegularVector(RuntimeError):
    pass


@dataclass(frozen=True)
class RootConjugation:
    """Involution alpha -> conj(alpha) on the root system."""

    cols: tuple[tuple[Fraction, ...], ...]
    perm: tuple[int, ...]

    def bar(self, i: int) -> int:
        return self.perm[i]


def conjugation_from_matrix(r: RootSystem, cols) -> RootConjugation:
    cols = tuple(tuple(Fraction(x) for x in c) for c in cols)
    n = r.ambient_dim
    # involution check
    for k in range(n):
        e = [Fraction(0)] * n
        e[k] = Fraction(1)
        twice = apply_matrix_cols(cols, apply_matrix_cols(cols, e))
        if list(twice) != e:
            raise ValueError("matrix is not an involution")
    perm = []
    for v in r.roots:
        img = apply_matrix_cols(cols, v)
        key = tuple(int(x) for x in img)
        if any(Fraction(k) != x for k, x in zip(key, img)) or key not in r.index:
            raise ValueError("matrix does not permute the root list")
        perm.append(r.index[key])
    return RootConjugation(cols, tuple(perm))


def compact_conjugation(r: RootSystem) -> RootConjugation:
    """Compact-form conjugation: alpha -> -alpha."""
    n = r.ambient_dim
    cols = tuple(
        tuple(Fraction(-1) if i == j else Fraction(0) for i in range(n)) for j in range(n)
    )
    return conjugation_from_matrix(r, cols)


def a_reverse_conjugation(r: RootSystem) -> RootConjugation:
    """The sl(n,R)-type conjugation of A_{n-1} induced by the reversal
    involution A -> (conj a_{n+1-i,n+1-j}); on weights e_i -> e_{n+1-i}."""
    if r.type_tag != "A":
        raise ValueError("a-reverse preset applies to type A only")
    n = r.ambient_dim
    cols = []
    for j in range(n):
        col = [Fraction(0)] * n
        col[n - 1 - j] = Fraction(1)
        cols.append(tuple(col))
    return conjugation_from_matrix(r, cols)


def is_closed(r: RootSystem, q) -> bool:
    qs = sorted(q)
    qset = set(qs)
    for a in range(len(qs)):
        for b in range(a + 1, len(qs)):
            s = root_sum(r, qs[a], qs[b])
            if s is not None and s not in qset:
                return False
    return True


def check_eq_ha(r: RootSystem, q, sigma: RootConjugation) -> bool:
    """Q closed, Q and conj(Q) partition R."""
    q = frozenset(q)
    if not is_closed(r, q):
        return False
    bar = frozenset(sigma.bar(i) for i in q)
    return not (q & bar) and (q | bar) == frozenset(range(r.nroots))


def split_r_n(r: RootSystem, q) -> tuple[frozenset[int], frozenset[int]]:
    """Reductive part {a in Q : -a in Q} and nilpotent part."""
    q = frozenset(q)
    qr = frozenset(i for i in q if r.neg(i) in q)
    return qr, q - qr


def verify_lemma_lb(r: RootSystem, q, sigma: RootConjugation) -> dict:
    """Verify the structure lemma for partition-compatible closed sets:
    (1) Q^r u conj(Q) and Q^r u conj(Q)^n are closed,
    (2) Q^r and conj(Q)^r are strongly orthogonal,
    (3) P = Q u conj(Q)^r is parabolic with P^n = Q^n.
    A failed item falsifies the input, not the lemma.
    """
    if not check_eq_ha(r, q, sigma):
        raise ValueError("input does not satisfy the partition condition")
    q = frozenset(q)
    qr, qn = split_r_n(r, q)
    qbar = frozenset(sigma.bar(i) for i in q)
    qbar_r = frozenset(sigma.bar(i) for i in qr)
    qbar_n = frozenset(sigma.bar(i) for i in qn)
    report = {}
    report["closed_qr_qbar"] = is_closed(r, qr | qbar)
    report["closed_qr_qbarn"] = is_closed(r, qr | qbar_n)
    strong = True
    for a in qr:
        for b in qbar_r:
            s = tuple(x + y for x, y in zip(r.roots[a], r.roots[b]))
            d = tuple(x - y for x, y in zip(r.roots[a], r.roots[b]))
            if s in r.index or d in r.index:
                strong = False
    report["strongly_orthogonal"] = strong
    p = q | qbar_r
    pneg = frozenset(r.neg(i) for i in p)
    pn = frozenset(i for i in p if r.neg(i) not in p)
    report["parabolic"] = is_closed(r, p) and (p | pneg) == frozenset(range(r.nroots))
    report["pn_is_qn"] = pn == qn
    report["ok"] = all(report.values())
    return report


def _eval_on(alpha, vec) -> Fraction:
    return Fraction(sum(a * Fraction(x) for a, x in zip(alpha, vec)), 2)


def _defining_vector(r: RootSystem, q, qn, p) -> tuple[Fraction, ...]:
    """A_0 with alpha(A_0) > 0 on P^n, = 0 on P^r, < 0 off P; taken as the
    sum of the nilpotent-part roots and verified."""
    n = r.ambient_dim
    a0 = [Fraction(0)] * n
    for i in qn:
        for k in range(n):
            a0[k] += Fraction(r.roots[i][k])
    pr = frozenset(i for i in p if r.neg(i) in p)
    for i in range(r.nroots):
        v = _eval_on(r.roots[i], a0)
        if i in qn and not v > 0:
            raise NoRegularVector("sum of Q^n does not define the parabolic set")
        if i in pr and v != 0:
            raise NoRegularVector("sum of Q^n does not vanish on P^r")
    return tuple(a0)


def adapted_simple_system(r: RootSystem, q, sigma: RootConjugation) -> dict:
    """Simple system adapted to (Q, sigma): simple roots a_1..a_l of a
    positive system containing P, labeled so that a_1..a_p is a simple system
    for Q^r, the middle block lies in Q^n, every conj(a_i) is negative, and
    conj(a_i) = -a_{l+1-i} for i <= p.  All five conditions are re-verified
    on the output."""
    rep = verify_lemma_lb(r, q, sigma)
    if not rep["ok"]:
        raise ValueError(f"lemma preconditions fail: {rep}")
    q = frozenset(q)
    qr, qn = split_r_n(r, q)
    qbar_r = frozenset(sigma.bar(i) for i in qr)
    p = q | qbar_r
    a0 = _defining_vector(r, q, qn, p)
    n = r.ambient_dim
    # regular A_1 in the (-1)-eigenspace of sigma
    eig = _minus_eigenbasis(sigma, n)
    if not eig:
        raise NoRegularVector("conjugation has no (-1)-eigenspace")
    a1 = None
    t = 1
    while t < 1000:
        cand = [Fraction(0)] * n
        for j, b in enumerate(eig):
            for k in range(n):
                cand[k] += Fraction(t**j) * b[k]
        if all(_eval_on(v, cand) != 0 for v in r.roots):
            a1 = tuple(cand)
            break
        t += 1
    if a1 is None:
        raise NoRegularVector("no regular vector found in the (-1)-eigenspace")
    # exact epsilon per the strict-inequality argument
    max_a1 = max(abs(_eval_on(v, a1)) for v in r.roots)
    inv_a0 = max(
        -(-_eval_on(r.roots[i], a0).denominator // _eval_on(r.roots[i], a0).numerator)
        if _eval_on(r.roots[i], a0) > 0
        else 0
        for i in qn
    ) if qn else 1
    eps = Fraction(1, int(1 + max_a1 * max(1, inv_a0)))
    a = tuple(Fraction(x) + eps * Fraction(y) for x, y in zip(a0, a1))
    if any(_eval_on(v, a) == 0 for v in r.roots):
        raise NoRegularVector("A = A0 + eps*A1 is not regular")
    pos = [i for i in range(r.nroots) if _eval_on(r.roots[i], a) > 0]
    posset = set(pos)
    simples = []
    for i in pos:
        decomposable = False
        for x in pos:
            if x == i:
                continue
            rest = tuple(u - w for u, w in zip(r.roots[i], r.roots[x]))
            ri = r.index.get(rest)
            if ri is not None and ri in posset:
                decomposable = True
                break
        if not decomposable:
            simples.append(i)
    # label: first the simple roots inside Q^r, then those in Q^n, then the rest
    head = [s for s in simples if s in qr]
    mid = [s for s in simples if s in qn]
    tail = [s for s in simples if s not in q]
    plen = len(head)
    # order the tail so that conj(head[i]) = -tail-reversed partner
    tail_sorted = []
    used = set()
    for h in head:
        partner = r.neg(sigma.bar(h))
        if partner not in tail:
            raise ValueError("conjugate of a Q^r-simple root is not a tail simple root")
        tail_sorted.append(partner)
        used.add(partner)
    extra_tail = [t_ for t_ in tail if t_ not in used]
    labeled = head + mid + extra_tail + list(reversed(tail_sorted))
    # verification of the five displayed conditions
    lset = labeled
    ell = len(lset)
    checks = {
        "simples_in_p": all(s in p for s in lset),
        "head_in_qr": all(s in qr for s in lset[:plen]),
        "mid_in_qn": all(s in qn for s in lset[plen : ell - plen]),
        "bars_negative": all(_eval_on(r.roots[sigma.bar(s)], a) < 0 for s in lset),
        "head_pairing": all(
            sigma.bar(lset[i]) == r.neg(lset[ell - 1 - i]) for i in range(plen)
        ),
        "head_spans_qr": _simple_for_subsystem(r, lset[:plen], qr),
    }
    return {
        "simples": labeled,
        "p": plen,
        "a0": a0,
        "a1": a1,
        "epsilon": eps,
        "checks": checks,
        "ok": all(checks.values()),
    }


def _simple_for_subsystem(r: RootSystem, head, qr) -> bool:
    """head must be a simple system for the root subsystem Q^r: every element
    of Q^r is an all-nonnegative or all-nonpositive integer combination."""
    if not head and not qr:
        return True
    from .intlat import solve_diophantine

    cols = [r.roots[i] for i in head]
    if not cols:
        return not qr
    a = [[c[t] for c in cols] for t in range(r.ambient_dim)]
    for i in qr:
        sol = solve_diophantine(a, list(r.roots[i]))
        if sol is None:
            return False
        ks = sol.particular
        if sol.kernel_basis:
            return False  # head not independent; cannot be a simple system
        if not (all(k >= 0 for k in ks) or all(k <= 0 for k in ks)):
            return False
    return True


def _minus_eigenbasis(sigma: RootConjugation, n: int):
    """Rational basis of ker(sigma + id)."""
    rows = []
    for i in range(n):
        row = [sigma.cols[j][i] + (Fraction(1) if i == j else Fraction(0)) for j in range(n)]
        rows.append(row)
    # kernel of rows (sigma^T + I acts the same as sigma + I for our use:
    # build kernel of the matrix with columns sigma(e_j) + e_j)
    m = [[sigma.cols[j][i] for j in range(n)] for i in range(n)]
    for i in range(n):
        m[i][i] += 1
    return _rational_kernel(m)


def _rational_kernel(m):
    nr = len(m)
    nc = len(m[0]) if m else 0
    a = [row[:] for row in m]
    piv_cols = []
    rpos = 0
    for c in range(nc):
        piv = next((i for i in range(rpos, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rpos], a[piv] = a[piv], a[rpos]
        f = a[rpos][c]
        a[rpos] = [x / f for x in a[rpos]]
        for i in range(nr):
            if i != rpos and a[i][c] != 0:
                fi = a[i][c]
                a[i] = [x - fi * y for x, y in zip(a[i], a[rpos])]
        piv_cols.append(c)
        rpos += 1
    free = [c for c in range(nc) if c not in piv_cols]
    basis = []
    for fc in free:
        v = [Fraction(0)] * nc
        v[fc] = Fraction(1)
        for i, pc in enumerate(piv_cols):
            v[pc] = -a[i][fc]
        basis.append(tuple(v))
    return basis


def regular_max_structure(r: RootSystem, sigma: RootConjugation, q, m_basis) -> dict:
    """Verify the data of a regular maximal-CR-dimension structure: the
    complex Cartan part m must have dim = floor(l/2), contain the Q^r-coroot
    span, and meet its conjugate trivially; reports CR dim/codim.

    m_basis: rows of Gaussian-rational ambient vectors (pairs (re, im) of
    rational ambient vectors)."""
    from .gaussq import CMatrix, CNum

    if not check_eq_ha(r, q, sigma):
        raise ValueError("Q fails the partition condition")
    ell = r.rank
    rows = []
    for re, im in m_basis:
        rows.append([CNum(Fraction(x), Fraction(y)) for x, y in zip(re, im)])
    m = CMatrix(rows).rref()
    report = {"dim_m": m.rank(), "expected_dim": ell // 2}
    report["dim_ok"] = m.rank() == ell // 2
    # conj(v) for the h-space conjugation: sigma applied to coordinatewise conj
    conj_rows = []
    for re, im in m_basis:
        cre = apply_matrix_cols(sigma.cols, re)
        cim = apply_matrix_cols(sigma.cols, im)
        conj_rows.append([CNum(Fraction(x), Fraction(-y)) for x, y in zip(cre, cim)])
    mbar = CMatrix(conj_rows).rref()
    inter = m.intersect(mbar)
    report["m_meets_mbar_trivially"] = inter.rank() == 0
    # Q^r coroot span inside m
    qr, qn = split_r_n(r, q)
    from .rootsys import coroot

    ok = True
    for i in sorted(qr):
        cr = coroot(r.roots[i])
        vec = [CNum(Fraction(x), Fraction(0)) for x in cr]
        if not m.contains(vec):
            ok = False
    report["coroot_span_in_m"] = ok
    crdim = m.rank() + len(q)
    crcodim = (ell + r.nroots) - (2 * m.rank() + r.nroots)
    report["cr_dim"] = crdim
    report["cr_codim"] = crcodim
    report["codim_matches_rank_parity"] = crcodim == ell % 2
    report["ok"] = (
        report["dim_ok"] and report["m_meets_mbar_trivially"] and report["coroot_span_in_m"]
    )
    return report
