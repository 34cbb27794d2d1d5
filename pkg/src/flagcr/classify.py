"""Enumeration of maximal lb/fundamental sets, the classification catalogs for
the classical types and G2/F4, the E-series constructors Q_{l,i,anchors}, and
the Z2-grading tables of the E series.

Maximal elements of Q(R) are exactly the maximal cliques of the compatibility
graph whose Z-span contains R (enlarging a set never shrinks its span), so
enumeration is pivoting Bron-Kerbosch plus a fundamentality filter and Weyl
orbit deduplication.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import qsets
from .qsets import compat_graph, is_fundamental, is_lb, property_report
from .rootsys import (
    GradingElement,
    RootSystem,
    build_root_system,
    evaluate_int,
    find_root,
    inner,
    roots_set,
    sorted_indices,
)
from .weyl import generators

H = Fraction(1, 2)


class BudgetExceeded(RuntimeError):
    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


class CatalogClaimFailed(AssertionError):
    def __init__(self, label, predicate, detail=""):
        super().__init__(f"catalog entry {label}: claim {predicate!r} failed {detail}")
        self.label = label
        self.predicate = predicate


class AnchorViolation(ValueError):
    pass


# ---------------------------------------------------------------------------
# clique machinery


def maximal_cliques(adj: dict[int, set[int]], budget: int | None = None):
    """Pivoting Bron-Kerbosch over the adjacency dict; yields sorted tuples.

    ``budget`` bounds the number of recursion nodes; exceeding it raises
    BudgetExceeded with the cliques found so far attached.
    """
    found: list[tuple[int, ...]] = []
    nodes = 0

    def bk(r: set[int], p: set[int], x: set[int]):
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExceeded(f"clique search exceeded {budget} nodes", found)
        if not p and not x:
            found.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda v: len(adj[v] & p))
        for v in sorted(p - adj[pivot]):
            bk(r | {v}, p & adj[v], x & adj[v])
            p.remove(v)
            x.add(v)

    bk(set(), set(adj.keys()), set())
    return found


def all_cliques(adj: dict[int, set[int]]):
    """Every nonempty clique of the graph, each exactly once."""
    verts = sorted(adj)
    out: list[tuple[int, ...]] = []

    def grow(prefix: list[int], allowed: list[int]):
        for k, v in enumerate(allowed):
            cur = prefix + [v]
            out.append(tuple(cur))
            grow(cur, [w for w in allowed[k + 1 :] if w in adj[v]])

    grow([], verts)
    return out


@dataclass
class EnumClass:
    canonical: tuple[int, ...]
    orbit_size: int
    report: qsets.PropertyReport

    def to_jsonable(self, r: RootSystem) -> dict:
        return {
            "roots": [list(r.roots[i]) for i in self.canonical],
            "size": len(self.canonical),
            "orbit_size": self.orbit_size,
            "report": self.report.to_jsonable(),
        }


def enumerate_maximal(
    r: RootSystem,
    quotient: str = "weyl",
    budget: int | None = 2_000_000,
    constraint=None,
) -> list[EnumClass]:
    """All maximal elements of Q(R) (restricted to ``constraint`` if given) up
    to the chosen quotient group, with property reports."""
    adj = compat_graph(r, constraint)
    cliques = maximal_cliques(adj, budget)
    fundamental = [c for c in cliques if is_fundamental(r, c)]
    gens = generators(r, quotient)
    perms = [g.perm for g in gens]
    seen: set[frozenset[int]] = set()
    classes: list[EnumClass] = []
    for cl in sorted(fundamental, key=lambda c: tuple(r.roots[i] for i in c)):
        fs = frozenset(cl)
        if fs in seen:
            continue
        orbit = {fs}
        frontier = [fs]
        best = (tuple(sorted(r.roots[i] for i in fs)), fs)
        while frontier:
            if budget is not None and len(orbit) > budget:
                raise BudgetExceeded("orbit dedup exceeded budget", classes)
            nxt = []
            for cur in frontier:
                for p in perms:
                    img = frozenset(p[i] for i in cur)
                    if img not in orbit:
                        orbit.add(img)
                        nxt.append(img)
                        key = tuple(sorted(r.roots[i] for i in img))
                        if key < best[0]:
                            best = (key, img)
            frontier = nxt
        seen |= orbit
        rep = sorted_indices(best[1])
        classes.append(EnumClass(rep, len(orbit), property_report(r, rep)))
    classes.sort(key=lambda c: tuple(r.roots[i] for i in c.canonical))
    return classes


# ---------------------------------------------------------------------------
# classical catalogs


@dataclass
class CatalogEntry:
    label: str
    indices: tuple[int, ...]
    parameters: dict
    claims: dict
    source: str

    def to_jsonable(self, r: RootSystem) -> dict:
        return {
            "label": self.label,
            "roots": [list(r.roots[i]) for i in self.indices],
            "parameters": {k: list(v) if isinstance(v, tuple) else v for k, v in self.parameters.items()},
            "claims": self.claims,
            "source": self.source,
        }


def _is_maximal_clique(r: RootSystem, q) -> bool:
    qset = set(q)
    for cand in range(r.nroots):
        if cand in qset:
            continue
        if all(qsets.compatible(r, cand, i) for i in qset):
            return False
    return True


def _verify_entry(r: RootSystem, entry: CatalogEntry, witness: GradingElement | None = None):
    q = frozenset(entry.indices)
    if entry.claims.get("lb") and not is_lb(r, q):
        raise CatalogClaimFailed(entry.label, "lb")
    if entry.claims.get("fundamental") and not is_fundamental(r, q):
        raise CatalogClaimFailed(entry.label, "fundamental")
    if entry.claims.get("maximal") and not _is_maximal_clique(r, q):
        raise CatalogClaimFailed(entry.label, "maximal")
    for key, fn in (("symmetric", qsets.is_symmetric), ("weak_j", qsets.has_weak_j), ("j", qsets.has_j)):
        want = entry.claims.get(key)
        if want is None:
            continue
        got = fn(r, q)
        if got is qsets.NOT_FUNDAMENTAL or got[0] is not want:
            raise CatalogClaimFailed(entry.label, key, f"got {got}")
    if witness is not None:
        for i in entry.indices:
            if evaluate_int(r.roots[i], witness) != 1:
                raise CatalogClaimFailed(entry.label, "witness", f"root {r.roots[i]}")


def _e(i, n):
    v = [0] * n
    v[i - 1] = 1
    return tuple(v)


def _epm(i, j, si, sj, n):
    v = [0] * n
    v[i - 1], v[j - 1] = si, sj
    return tuple(v)


def _gap_chains(p: int, n: int, max_s: int):
    """q-chains p = q0 < q1 < ... < qs = n with nonincreasing gaps, s <= max_s
    (s = 0 only when p = n)."""
    if p == n:
        yield ()
        return
    def rec(prev, gaps):
        if prev == n:
            yield tuple(gaps)
            return
        if len(gaps) == max_s:
            return
        hi = gaps[-1] if gaps else n - prev
        for gap in range(min(hi, n - prev), 0, -1):
            yield from rec(prev + gap, gaps + [gap])

    for gaps in rec(p, []):
        yield gaps


def _bd_sets(r: RootSystem, n: int, with_short: bool):
    """Candidate maximal sets of types B (with the short root e_{i0}) and D,
    parametrized by p, the gap chain and (for B) the class of i0."""
    out = []
    for p in range(1, n + 1):
        for gaps in _gap_chains(p, n, p):
            s = len(gaps)
            qs = [p]
            for g in gaps:
                qs.append(qs[-1] + g)
            pairs = [_epm(i, j, 1, 1, n) for i in range(1, p + 1) for j in range(i + 1, p + 1)]
            fams = []
            for t in range(1, s + 1):
                for j in range(qs[t - 1] + 1, qs[t] + 1):
                    fams.append(_epm(t, j, 1, 1, n))
                    fams.append(_epm(t, j, 1, -1, n))
            if with_short:
                # i0 classes: one per distinct gap value, plus the tail (s, p]
                i0s = []
                seen_gap = set()
                for t, g in enumerate(gaps, start=1):
                    if g not in seen_gap:
                        seen_gap.add(g)
                        i0s.append(t)
                if p > s:
                    i0s.append(p)
                if not i0s:
                    i0s = [p]
                for i0 in i0s:
                    specs = [_e(i0, n)] + pairs + fams
                    out.append(
                        (
                            {"i0": i0, "p": p, "q": tuple(qs[1:])},
                            roots_set(r, specs),
                        )
                    )
            else:
                if not pairs and not fams:
                    continue
                specs = pairs + fams
                out.append(({"p": p, "q": tuple(qs[1:])}, roots_set(r, specs)))
    return out


def _bd_symmetric_sets(r: RootSystem, n: int, with_short: bool):
    """Maximal symmetric candidates: cross pairs e_i+e_j (i <= s < j <= p)
    plus the +- families; J-witness e_h -> 1 for h <= s, else 0."""
    out = []
    for p in range(1, n + 1):
        for gaps in _gap_chains(p, n, p):
            s = len(gaps)
            if s == 0 and with_short:
                continue
            qs = [p]
            for g in gaps:
                qs.append(qs[-1] + g)
            pairs = [
                _epm(i, j, 1, 1, n)
                for i in range(1, s + 1)
                for j in range(s + 1, p + 1)
            ]
            fams = []
            for t in range(1, s + 1):
                for j in range(qs[t - 1] + 1, qs[t] + 1):
                    fams.append(_epm(t, j, 1, 1, n))
                    fams.append(_epm(t, j, 1, -1, n))
            witness = [1 if h <= s else 0 for h in range(1, n + 1)]
            if with_short:
                seen_gap = set()
                i0s = []
                for t, g in enumerate(gaps, start=1):
                    if g not in seen_gap:
                        seen_gap.add(g)
                        i0s.append(t)
                for i0 in i0s:
                    specs = [_e(i0, n)] + pairs + fams
                    out.append(
                        ({"i0": i0, "p": p, "q": tuple(qs[1:])}, roots_set(r, specs), witness)
                    )
            else:
                specs = pairs + fams
                if not specs:
                    continue
                out.append(({"p": p, "q": tuple(qs[1:])}, roots_set(r, specs), witness))
    return out


def _dedupe_entries(r: RootSystem, raw, budget: int = 500_000):
    """Drop entries that are W-equivalent to an earlier one and entries that
    are not maximal cliques; deduped via set-orbit marking."""
    from .weyl import set_orbit

    seen: set[frozenset[int]] = set()
    out = []
    for params, q, *extra in raw:
        fq = frozenset(q)
        if fq in seen:
            continue
        if not _is_maximal_clique(r, fq):
            continue
        orbit = set_orbit(r, fq, "weyl", budget)
        seen |= orbit
        out.append((params, fq, *extra))
    return out


def _witness_from_ambient(r: RootSystem, ambient) -> GradingElement:
    coords = r.ambient_to_coweight_coords(ambient)
    if coords is None:
        raise ValueError(f"vector {ambient} is not in the coweight lattice")
    return r.grading_element(coords)


def catalog(type_tag: str, rank: int | None = None, which: str = "all") -> list[CatalogEntry]:
    """Materialized catalog lists as explicit root sets, re-verified on
    construction (CatalogClaimFailed on any failed claim).

    which = 'all' gives the maximal elements of Q(R); 'symmetric' the maximal
    elements of Q_s(R) together with their exact J-witnesses.
    """
    entries: list[CatalogEntry] = []
    if type_tag == "A":
        n = rank
        r = build_root_system("A", n)
        for p in range(1, n):
            specs = [_epm(i, j, 1, -1, n) for i in range(1, p + 1) for j in range(p + 1, n + 1)]
            q = roots_set(r, specs)
            label = f"Q_{p}"
            claims = {"lb": True, "fundamental": True, "maximal": True}
            witness = None
            if which == "symmetric":
                claims.update({"symmetric": True, "j": True})
                witness = _witness_from_ambient(
                    r,
                    [Fraction(n - p, n)] * p + [Fraction(-p, n)] * (n - p),
                )
            entry = CatalogEntry(label, sorted_indices(q), {"p": p}, claims, "classical A list")
            _verify_entry(r, entry, witness)
            entries.append(entry)
        return entries
    if type_tag == "C":
        n = rank
        r = build_root_system("C", n)
        specs = [tuple(2 if k == i else 0 for k in range(n)) for i in range(n)]
        specs += [_epm(i, j, 1, 1, n) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        q = roots_set(r, specs)
        claims = {"lb": True, "fundamental": True, "maximal": True}
        witness = None
        if which == "symmetric":
            claims.update({"symmetric": True, "j": True})
            witness = _witness_from_ambient(r, [H] * n)
        entry = CatalogEntry("Q_0", sorted_indices(q), {}, claims, "classical C list")
        _verify_entry(r, entry, witness)
        return [entry]
    if type_tag in ("B", "D"):
        n = rank
        r = build_root_system(type_tag, n)
        if which == "all":
            raw = _bd_sets(r, n, with_short=(type_tag == "B"))
            if type_tag == "D":
                qm = [_epm(i, j, 1, 1, n) for i in range(1, n) for j in range(i + 1, n)]
                qm += [_epm(i, n, 1, -1, n) for i in range(1, n)]
                raw.append(({"label": "-n"}, roots_set(r, qm)))
            deduped = _dedupe_entries(r, raw)
            for params, q in deduped:
                label = f"Q_{params}"
                entry = CatalogEntry(
                    label,
                    sorted_indices(q),
                    params,
                    {"lb": True, "fundamental": True, "maximal": True},
                    "classical B/D list (enumeration-derived constraints)",
                )
                _verify_entry(r, entry)
                entries.append(entry)
            return entries
        raw = _bd_symmetric_sets(r, n, with_short=(type_tag == "B"))
        if type_tag == "D":
            raw.append(
                (
                    {"label": "n"},
                    roots_set(r, [_epm(i, j, 1, 1, n) for i in range(1, n + 1) for j in range(i + 1, n + 1)]),
                    [H] * n,
                )
            )
            raw.append(
                (
                    {"label": "-n"},
                    roots_set(
                        r,
                        [_epm(i, j, 1, 1, n) for i in range(1, n) for j in range(i + 1, n)]
                        + [_epm(i, n, 1, -1, n) for i in range(1, n)],
                    ),
                    [H] * (n - 1) + [-H],
                )
            )
        kept = []
        seen: set[frozenset[int]] = set()
        from .weyl import set_orbit

        for params, q, witness in raw:
            fq = frozenset(q)
            if fq in seen:
                continue
            if not is_lb(r, fq) or not is_fundamental(r, fq):
                continue
            # maximal within Q_s: no single compatible root keeps symmetry
            if not _is_symmetric_maximal(r, fq):
                continue
            orbit = set_orbit(r, fq, "weyl")
            seen |= orbit
            kept.append((params, fq, witness))
        for params, q, witness in kept:
            entry = CatalogEntry(
                f"Qs_{params}",
                sorted_indices(q),
                params,
                {"lb": True, "fundamental": True, "symmetric": True, "j": True},
                "classical symmetric list",
            )
            _verify_entry(r, entry, _witness_from_ambient(r, witness))
            entries.append(entry)
        return entries
    if type_tag == "G2":
        r = build_root_system("G2")
        q41 = roots_set(r, [(1, 0, -1), (2, -1, -1), (1, -2, 1)])
        q42 = roots_set(r, [(1, 0, -1), (2, -1, -1), (1, 1, -2)])
        q40 = roots_set(r, [(1, 0, -1), (2, -1, -1)])
        if which == "all":
            for label, q, sym in (("Q4_1", q41, True), ("Q4_2", q42, False)):
                entry = CatalogEntry(
                    label,
                    sorted_indices(q),
                    {},
                    {"lb": True, "fundamental": True, "maximal": True, "symmetric": sym},
                    "G2 proposition",
                )
                _verify_entry(r, entry)
                entries.append(entry)
            return entries
        entry = CatalogEntry(
            "Q4_1",
            sorted_indices(q41),
            {},
            {"lb": True, "fundamental": True, "symmetric": True, "weak_j": False},
            "G2 proposition (maximal symmetric; weak-J fails)",
        )
        _verify_entry(r, entry)
        w_entry = CatalogEntry(
            "Q4_0",
            sorted_indices(q40),
            {},
            {"lb": True, "fundamental": True, "symmetric": True, "weak_j": True, "j": True},
            "G2 proposition item (3)",
        )
        _verify_entry(r, w_entry)
        return [entry, w_entry]
    if type_tag == "F4":
        r = build_root_system("F4")
        b0 = (H, H, H, H)
        b4 = (H, H, H, -H)
        base = {
            "Q4_{1,4}": [_e(1, 4)] + [_epm(i, j, 1, 1, 4) for i in range(1, 5) for j in range(i + 1, 5)],
            "Q4_{1,3,4}": [_e(1, 4)]
            + [_epm(i, j, 1, 1, 4) for i in range(1, 4) for j in range(i + 1, 4)]
            + [_epm(1, 4, 1, 1, 4), _epm(1, 4, 1, -1, 4)],
            "Q4_{2,3,4}": [_e(2, 4)]
            + [_epm(i, j, 1, 1, 4) for i in range(1, 4) for j in range(i + 1, 4)]
            + [_epm(1, 4, 1, 1, 4), _epm(1, 4, 1, -1, 4)],
            "Q4_{1,2,3,4}": [_e(1, 4), _epm(1, 2, 1, 1, 4), _epm(1, 3, 1, 1, 4), _epm(1, 3, 1, -1, 4), _epm(2, 4, 1, 1, 4), _epm(2, 4, 1, -1, 4)],
            "Q4_{1,1,4}": [_e(1, 4)] + [_epm(1, j, 1, s, 4) for j in (2, 3, 4) for s in (1, -1)],
        }
        if which == "all":
            for label, specs in base.items():
                q = roots_set(r, list(specs) + [b0, b4])
                entry = CatalogEntry(
                    label,
                    sorted_indices(q),
                    {},
                    {"lb": True, "fundamental": True, "maximal": True},
                    "F4 proposition (five maximal classes)",
                )
                _verify_entry(r, entry)
                entries.append(entry)
            return entries
        specs = [_e(1, 4), b0, b4, _epm(1, 3, 1, 1, 4), _epm(1, 3, 1, -1, 4), _epm(2, 4, 1, 1, 4), _epm(2, 4, 1, -1, 4)]
        q = roots_set(r, specs)
        entry = CatalogEntry(
            "Q4'_{1,2,3,4}",
            sorted_indices(q),
            {},
            {"lb": True, "fundamental": True, "symmetric": True, "weak_j": True, "j": True},
            "F4 symmetric proposition (unique maximal symmetric class)",
        )
        _verify_entry(r, entry, _witness_from_ambient(r, [1, 1, 0, 0]))
        return [entry]
    raise ValueError(f"no catalog for type {type_tag}")


def _is_symmetric_maximal(r: RootSystem, q) -> bool:
    got = qsets.is_symmetric(r, q)
    if got is qsets.NOT_FUNDAMENTAL or not got[0]:
        return False
    qset = set(q)
    for cand in range(r.nroots):
        if cand in qset:
            continue
        if all(qsets.compatible(r, cand, i) for i in qset):
            bigger = frozenset(qset | {cand})
            res = qsets.is_symmetric(r, bigger)
            if res is not qsets.NOT_FUNDAMENTAL and res[0]:
                return False
    return True


# ---------------------------------------------------------------------------
# E-series data

XI = ((6, 1), (6, 2), (7, 1), (7, 2), (7, 3), (8, 1), (8, 2))

_E_VECTORS = {
    (6, 1): (0, 0, 0, 0, 0, Fraction(-2, 3), Fraction(-2, 3), Fraction(2, 3)),
    (6, 2): (H, H, H, H, H, -H, -H, H),
    (7, 1): (0, 0, 0, 0, 0, 0, -1, 1),
    (7, 2): (H, H, H, H, H, H, -1, 1),
    (7, 3): (0, 0, 0, 0, 0, 1, -H, H),
    (8, 1): (0, 0, 0, 0, 0, 0, 0, 2),
    (8, 2): (H, H, H, H, H, H, H, H),
}

_TYPE_LABELS = {
    (6, 1): "D5",
    (6, 2): "A5xA1",
    (7, 1): "D6xA1",
    (7, 2): "A7",
    (7, 3): "E6",
    (8, 1): "D8",
    (8, 2): "E7xA1",
}


def spin(minus, n: int = 8) -> tuple[Fraction, ...]:
    """Half-sum root with minus signs on the given index set (1-based)."""
    ms = set(minus)
    return tuple(-H if k in ms else H for k in range(1, n + 1))


def beta0() -> tuple[Fraction, ...]:
    return spin(())


def v7() -> tuple[int, ...]:
    return (0, 0, 0, 0, 0, 0, -1, 1)


def v6() -> tuple[int, ...]:
    return (0, 0, 0, 0, 0, -1, -1, 1)


def _is_spinor(v: tuple[int, ...]) -> bool:
    return all(abs(x) == 1 for x in v)


def _minus_set(v: tuple[int, ...]) -> frozenset[int]:
    return frozenset(k + 1 for k, x in enumerate(v) if x < 0)


def _printed_s_membership(pair, v) -> bool:
    """Membership of a stored root vector in the printed S^l_i family list."""
    l, i = pair
    if _is_spinor(v):
        m = _minus_set(v)
        if pair == (6, 1) or pair == (7, 1) or pair == (8, 1):
            return True
        if pair == (6, 2):
            return m in _pm_minus_sets({frozenset({a, b, 6, 7}) for a in range(1, 6) for b in range(1, 6) if a < b})
        if pair == (7, 2):
            return m in _pm_minus_sets(
                {frozenset({a, b, c, 7}) for a, b, c in itertools.combinations(range(1, 7), 3)}
            )
        if pair == (7, 3):
            good = {frozenset({6, 8})}
            good |= {frozenset({a, 7}) for a in range(1, 6)}
            good |= {frozenset(t) | {7} for t in itertools.combinations(range(1, 6), 3)}
            good |= {frozenset({a, b, 6, 8}) for a, b in itertools.combinations(range(1, 6), 2)}
            return m in _pm_minus_sets(good)
        if pair == (8, 2):
            return len(m) in (2, 6)
        return False
    # integer-type root
    nz = [(k + 1, x) for k, x in enumerate(v) if x]
    if len(nz) != 2:
        return False
    (a, xa), (b, xb) = nz
    if pair in ((6, 1), (7, 1), (8, 1)):
        return False
    if pair == (6, 2):
        return b <= 5 and (xa > 0) == (xb > 0)
    if pair == (7, 2):
        return b <= 6 and (xa > 0) == (xb > 0)
    if pair == (7, 3):
        return a <= 5 and b == 6
    if pair == (8, 2):
        return (xa > 0) == (xb > 0)
    return False


def _pm_minus_sets(sets_):
    """Close a family of minus-sets under negation (complement in 1..8)."""
    full = frozenset(range(1, 9))
    out = set()
    for s in sets_:
        out.add(frozenset(s))
        out.add(full - frozenset(s))
    return out


def _printed_s_pred(pair):
    l, i = pair
    if pair == (7, 3):
        def pred(v):
            if _is_spinor(v):
                return _printed_s_membership(pair, v)
            nz = [(k + 1, x) for k, x in enumerate(v) if x]
            if tuple(v) in (v7_stored(), tuple(-x for x in v7_stored())):
                return True
            if len(nz) != 2:
                return False
            (a, _), (b, _) = nz
            return a <= 5 and b == 6

        return pred
    return lambda v: _printed_s_membership(pair, v)


def v7_stored() -> tuple[int, ...]:
    return (0, 0, 0, 0, 0, 0, -2, 2)


@dataclass
class GradingTable:
    pair: tuple[int, int]
    type_label: str
    r_part: frozenset[int]
    s_part: frozenset[int]
    e: GradingElement
    system: RootSystem = field(repr=False)


_SYSTEM_CACHE: dict[int, RootSystem] = {}


def e_system(l: int) -> RootSystem:
    if l not in _SYSTEM_CACHE:
        _SYSTEM_CACHE[l] = build_root_system(f"E{l}")
    return _SYSTEM_CACHE[l]


def grading_table(l: int, i: int) -> GradingTable:
    pair = (l, i)
    if pair not in _E_VECTORS:
        raise ValueError(f"(l,i) must be one of {XI}")
    r = e_system(l)
    e = _witness_from_ambient(r, _E_VECTORS[pair])
    r_part, s_part = set(), set()
    for idx, v in enumerate(r.roots):
        if evaluate_int(v, e) % 2 == 0:
            r_part.add(idx)
        else:
            s_part.add(idx)
    return GradingTable(pair, _TYPE_LABELS[pair], frozenset(r_part), frozenset(s_part), e, r)


def verify_grading(l: int, i: int) -> tuple[bool, list[str]]:
    """Check that E_{l,i} splits the root system exactly into the printed
    even/odd families; failures are reported per root."""
    table = grading_table(l, i)
    pred = _printed_s_pred((l, i))
    failures = []
    for idx, v in enumerate(table.system.roots):
        printed_s = pred(v)
        actual_s = idx in table.s_part
        if printed_s != actual_s:
            failures.append(f"root {v}: printed S={printed_s}, E-split S={actual_s}")
    if not table.r_part | table.s_part == frozenset(range(table.system.nroots)):
        failures.append("split does not partition the root system")
    return (not failures, failures)


def construct_q(l: int, i: int, anchors, within=None) -> tuple[int, ...]:
    """The set Q_{l,i,a_1..a_k}: starting from the anchors, sweep each
    anchor's positive shell inside S^l_i in order, adding every root that
    stays nonnegative against everything accumulated.

    Anchors are root indices (or original-coordinate specs); they must lie in
    S^l_i with pairwise nonnegative products.  ``within`` optionally restricts
    the sweep to a sub-level-set of S^l_i (e.g. a mod-4 level set of a
    grading element), the construction used by the catalog's J-examples.
    """
    table = grading_table(l, i)
    r = table.system
    idxs = []
    for a in anchors:
        idxs.append(a if isinstance(a, int) else find_root(r, a))
    for a in idxs:
        if a not in table.s_part:
            raise AnchorViolation(f"anchor {r.roots[a]} is not in S^{l}_{i}")
    for a, b in itertools.combinations(idxs, 2):
        if inner(r.roots[a], r.roots[b]) < 0:
            raise AnchorViolation(
                f"anchors {r.roots[a]}, {r.roots[b]} have negative product"
            )
    pool = table.s_part if within is None else (frozenset(within) & table.s_part)
    if within is not None and any(a not in pool for a in idxs):
        raise AnchorViolation("anchors must lie inside the restriction set")
    s_sorted = sorted(pool, key=lambda k: r.roots[k])
    cur = list(idxs)
    curset = set(idxs)
    for a in idxs:
        for cand in s_sorted:
            if cand in curset:
                continue
            if inner(r.roots[cand], r.roots[a]) <= 0:
                continue
            if all(inner(r.roots[cand], r.roots[t]) >= 0 for t in cur):
                cur.append(cand)
                curset.add(cand)
    return sorted_indices(curset)


def construct_q_stages(l: int, i: int, anchors) -> list[frozenset[int]]:
    """Intermediate accumulation stages of construct_q: stages[p] is the set
    after sweeping the first p anchor shells (stages[0] = the anchor set)."""
    table = grading_table(l, i)
    r = table.system
    idxs = [a if isinstance(a, int) else find_root(r, a) for a in anchors]
    s_sorted = sorted(table.s_part, key=lambda k: r.roots[k])
    cur = list(idxs)
    curset = set(idxs)
    stages = [frozenset(curset)]
    for a in idxs:
        for cand in s_sorted:
            if cand in curset:
                continue
            if inner(r.roots[cand], r.roots[a]) <= 0:
                continue
            if all(inner(r.roots[cand], r.roots[t]) >= 0 for t in cur):
                cur.append(cand)
                curset.add(cand)
        stages.append(frozenset(curset))
    return stages


def grading_level_set(l: int, i: int, value: int, modulus: int | None = None) -> frozenset[int]:
    """Roots of S^l_i on which E_{l,i} evaluates to ``value`` (exactly, or
    mod ``modulus`` when given)."""
    table = grading_table(l, i)
    out = set()
    for idx in table.s_part:
        v = evaluate_int(table.system.roots[idx], table.e)
        if (v == value) if modulus is None else (v % modulus == value % modulus):
            out.add(idx)
    return frozenset(out)


def _epair(i, j):
    return tuple(1 if k + 1 in (i, j) else 0 for k in range(8))


# maximal orthogonal frames in S^l_i used by the maximal-symmetric
# classification (anchor tuples are drawn from prefixes/subsets of these)
ORTH_FRAMES = {
    (6, 2): [_epair(1, 5), _epair(2, 4), spin((1, 2, 6, 7)), spin((4, 5, 6, 7))],
    (7, 1): [spin((6, 8)), spin((1, 7)), spin((2, 5, 6, 7)), spin((3, 4, 6, 7))],
    (7, 2): [
        _epair(1, 2),
        _epair(3, 4),
        _epair(5, 6),
        spin((1, 3, 5, 7)),
        spin((1, 4, 6, 7)),
        spin((2, 3, 6, 7)),
        spin((2, 4, 5, 7)),
    ],
    (8, 1): [
        beta0(),
        spin((1, 2, 3, 4)),
        spin((1, 2, 5, 6)),
        spin((1, 2, 7, 8)),
        spin((1, 3, 5, 8)),
        spin((1, 3, 6, 7)),
        spin((2, 3, 5, 7)),
        spin((2, 3, 6, 8)),
    ],
    (8, 2): [spin((1, 2)), spin((3, 4)), spin((5, 6)), spin((7, 8))],
}


def e8_examples():
    """The nine E8 examples: anchor data and expected membership pattern
    (symmetric, weak-J, J).

    Two repairs of corrupted printed data, recorded in the verification
    report: example (4) sweeps inside the alpha(E_{8,1}) = 1 level set (its
    own derivation concludes the set avoids every root with e_8-coefficient
    -1/2, which the unrestricted sweep does not); example (6) is the catalog's
    explicit member of Q_Upsilon \\ Q_0, relabeled by the coordinate swap
    (1 6)(2 7)(3 8) in W so that it carries the printed mod-4 witness
    e_6 = e_7 = e_8 = -2 (the anchor list printed for (6) generates a set
    that is not even fundamental).
    """
    b = lambda *m: spin(m)
    ex6_members = [b(), b(6, 7), b(6, 8), b(7, 8), b(4, 5), b(1, 2), b(1, 3), b(2, 3)]
    ex6_members += [b(x, y) for x in (1, 2, 3) for y in (4, 5)]
    ex = [
        ("1", (8, 1), [b(), b(1, 2, 3, 4)], None, (True, False, False), None, None),
        ("2", (8, 1), [b(), b(1, 2, 3, 4), b(1, 2, 5, 6)], None, (True, False, False), None, None),
        ("3", (8, 1), [b(1, 2, 3, 4), b(1, 3, 5, 6), b(1, 3, 5, 8)], None, (True, False, False), None, None),
        (
            "4",
            (8, 1),
            [b(), b(1, 2, 3, 4), b(1, 2, 5, 6), b(3, 4, 5, 6), b(1, 3, 5, 7)],
            "level+1",
            (True, True, True),
            None,
            None,
        ),
        (
            "5",
            (8, 1),
            [b(), b(1, 2, 3, 4), b(1, 2, 5, 6), b(1, 3, 6, 7), b(2, 3, 6, 8), b(2, 3, 5, 7), b(1, 3, 5, 8)],
            None,
            (True, False, False),
            None,
            None,
        ),
        ("6", (8, 1), None, None, (True, True, False), (0, 0, 0, 0, 0, -2, -2, -2), ex6_members),
        ("7", (8, 2), [b(7, 8), b(5, 6)], None, (True, True, True), None, None),
        ("8", (8, 2), [b(7, 8), b(5, 6), b(3, 4)], None, (True, True, True), None, None),
        ("9", (8, 2), [b(7, 8), b(5, 6), b(3, 4), b(1, 2)], None, (True, True, True), None, None),
    ]
    out = []
    for label, pair, anchors, within, pattern, wit, members in ex:
        out.append(
            {
                "label": label,
                "pair": pair,
                "anchors": anchors,
                "within": within,
                "pattern": pattern,
                "mod4_witness": wit,
                "members": members,
            }
        )
    return out


def e8_example_set(ex) -> tuple[int, ...]:
    """Materialize an e8_examples() record as a sorted index tuple."""
    l, i = ex["pair"]
    if ex["members"] is not None:
        r = e_system(l)
        return sorted_indices(roots_set(r, ex["members"]))
    within = None
    if ex["within"] == "level+1":
        within = grading_level_set(l, i, 1)
    return construct_q(l, i, ex["anchors"], within=within)


def q_prime_p(p: int) -> tuple[int, ...]:
    """The set Q'_p in E8: {beta0} u {e_i+e_r, beta_{i,j}, beta_{r,s}} with
    i <= p < r; symmetric exactly when p is even."""
    r = e_system(8)
    specs = [beta0()]
    for i in range(1, p + 1):
        for rr in range(p + 1, 9):
            specs.append(tuple(1 if k + 1 in (i, rr) else 0 for k in range(8)))
    for i, j in itertools.combinations(range(1, p + 1), 2):
        specs.append(spin((i, j)))
    for rr, s in itertools.combinations(range(p + 1, 9), 2):
        specs.append(spin((rr, s)))
    return sorted_indices(roots_set(r, specs))


def orbit_lemma_expected(pair):
    """Expected two-orbit decomposition of S^l_i for (6,1) and (7,3): the
    level sets alpha(E_{l,i}) = +-1."""
    table = grading_table(*pair)
    plus, minus = set(), set()
    for idx in table.s_part:
        val = evaluate_int(table.system.roots[idx], table.e)
        (plus if val == 1 else minus).add(idx)
    return frozenset(plus), frozenset(minus)


def printed_orbit_61():
    """The printed W^6_1 orbits of S^6_1 (these lists are exact)."""
    r = e_system(6)
    o1 = [spin((6, 7))]
    o1 += [tuple(-x for x in spin((i, 8))) for i in range(1, 6)]
    o1 += [spin((i, j, 6, 7)) for i, j in itertools.combinations(range(1, 6), 2)]
    o2 = [tuple(-x for x in spin((6, 7)))]
    o2 += [spin((i, 8)) for i in range(1, 6)]
    o2 += [spin((i, j, h, 8)) for i, j, h in itertools.combinations(range(1, 6), 3)]
    return roots_set(r, o1), roots_set(r, o2)


def bn_constraint_discrepancy(n: int) -> dict:
    """Compare the printed B_n parameter constraint with what enumeration
    derives; returns a report dict (the printed inequality admits no chain
    with s >= 2)."""
    printed_ok = []
    for p in range(1, n + 1):
        for s in range(1, p + 1):
            for qs in itertools.combinations(range(p + 1, n), s - 1):
                chain = (p,) + qs + (n,)
                if all(chain[t] < chain[t + 1] for t in range(len(chain) - 1)) and all(
                    chain[t] + 2 * chain[t - 2] <= chain[t - 1] for t in range(2, len(chain))
                ):
                    printed_ok.append(chain)
    derived = catalog("B", n, "all")
    return {
        "printed_chains_with_s_ge_2": [c for c in printed_ok if len(c) >= 4],
        "derived_class_count": len(derived),
        "note": "printed inequality q_i + 2q_{i-2} <= q_{i-1} admits no increasing chain; "
        "enumeration-derived nonincreasing-gap rule used instead",
    }


def subset_universe(r: RootSystem, budget: int = 1_000_000) -> list[frozenset[int]]:
    """All fundamental lb-subsets of the maximal class representatives.

    Every fundamental lb-set is W-equivalent to a subset of some maximal
    class representative, so W-invariant predicates quantified over Q(R) can
    be checked exhaustively on this universe.
    """
    classes = enumerate_maximal(r)
    seen: set[frozenset[int]] = set()
    out: list[frozenset[int]] = []
    count = 0
    for c in classes:
        rep = list(c.canonical)
        for size in range(1, len(rep) + 1):
            for combo in itertools.combinations(rep, size):
                count += 1
                if count > budget:
                    raise BudgetExceeded("subset universe exceeded budget", out)
                fs = frozenset(combo)
                if fs in seen:
                    continue
                seen.add(fs)
                if is_fundamental(r, fs):
                    out.append(fs)
    return out


def maximal_symmetric_classes(r: RootSystem, budget: int = 1_000_000):
    """Maximal elements of Q_s(R) up to W, with their J status, found by
    exhaustive scan of the subset universe."""
    from .weyl import canonical_form

    out: dict[tuple[int, ...], dict] = {}
    for q in subset_universe(r, budget):
        got = qsets.is_symmetric(r, q)
        if got is qsets.NOT_FUNDAMENTAL or not got[0]:
            continue
        if not _is_symmetric_maximal(r, q):
            continue
        cf = tuple(sorted(canonical_form(r, q)))
        if cf not in out:
            out[cf] = {
                "canonical": cf,
                "size": len(cf),
                "weak_j": qsets.has_weak_j(r, q)[0],
                "j": qsets.has_j(r, q)[0],
            }
    return sorted(out.values(), key=lambda d: d["canonical"])


def b3_counterexample():
    """CR-symmetric maximal element of Q(B3) without the weak-J or J
    property; falsifies the classical-collapse claim (see decisions ledger)."""
    r = build_root_system("B", 3)
    q = roots_set(r, [(0, 1, 0), (1, 1, 0), (1, 0, 1), (1, 0, -1)])
    return r, q


def f4_counterexample():
    """CR-symmetric fundamental lb-set in F4 without the weak-J property."""
    r = build_root_system("F4")
    q = roots_set(
        r,
        [(1, 0, 0, 0), (1, 1, 0, 0), (1, 0, 1, 0), (1, 0, -1, 0), (H, H, H, H), (H, H, -H, H), (0, 1, 0, 1), (0, 1, 0, -1)],
    )
    return r, q


# Paper claims that verify-paper checks and reports as failed-but-known.
KNOWN_DISCREPANCIES = (
    {
        "id": "bn-dn-constraints",
        "claim": "printed B_n/D_n parameter constraints",
        "status": "inconsistent as printed; enumeration-derived nonincreasing-gap rule used",
    },
    {
        "id": "f4-count",
        "claim": "five inequivalent maximal classes in Q(F4)",
        "status": "false: 8 classes mod W; the printed five contain a W-equivalent pair",
    },
    {
        "id": "classical-collapse",
        "claim": "Q_s = Q_0 for the classical types",
        "status": "false for B_n (n >= 3) and D_4: explicit 4- and 5-root counterexamples",
    },
    {
        "id": "f4-collapse",
        "claim": "Q_s(F4) = Q_Upsilon(F4) = Q_0(F4), unique maximal symmetric class",
        "status": "false: 8-root symmetric set with no mod-4 witness",
    },
    {
        "id": "e8-example-4",
        "claim": "printed anchor list of E8 example (4)",
        "status": "anchors conflict with the printed members; level-set-restricted sweep used",
    },
    {
        "id": "e8-example-6",
        "claim": "printed set of E8 example (6)",
        "status": "printed set is not fundamental; W-relabeled unnumbered example used",
    },
    {
        "id": "e8-beta0-b12",
        "claim": "Q_{8,1,b0,b12} equals Q_{8,1,b0,b1234,b1256,b1278}",
        "status": "holds modulo W only (both are maximal; a single W-word maps one to the other)",
    },
    {
        "id": "s73-orbit-lists",
        "claim": "printed two-orbit lists for S^7_3",
        "status": "lists drop +-beta_{i,7}; the E_{7,3} level sets are the true orbits",
    },
)


def classify_flags(type_tag: str, rank: int | None = None, quotient: str = "weyl", budget: int | None = 2_000_000) -> dict:
    """Stratification report over the maximal classes of Q(R)."""
    r = build_root_system(type_tag, rank)
    classes = enumerate_maximal(r, quotient, budget)
    out = []
    for c in classes:
        rep = c.report
        out.append(
            {
                "roots": [list(r.roots[i]) for i in c.canonical],
                "size": len(c.canonical),
                "orbit_size": c.orbit_size,
                "maximal": True,
                "symmetric": rep.symmetric,
                "weak_j": rep.weak_j,
                "j": rep.j_property,
                "witnesses": {
                    "mod2": None if rep.witness_mod2 is None else list(rep.witness_mod2.coords),
                    "mod4": None if rep.witness_mod4 is None else list(rep.witness_mod4.coords),
                    "exact": None if rep.witness_exact is None else list(rep.witness_exact.coords),
                },
            }
        )
    return {"type": type_tag, "rank": rank, "quotient": quotient, "classes": out}
