"""Root systems A_{n-1}, B_n, C_n, D_n, G2, F4, E6, E7, E8 in explicit
coordinates, with exact inner products and the coweight lattice
R* = {H : alpha(H) in Z for all alpha}.

Roots are stored in DOUBLED ambient coordinates (stored = 2 * coordinate), so
the half-integer roots of the E series and F4 become integer vectors.  Inner
products in the original normalization are dot(stored)/4; evaluation of a root
on an ambient vector is dot(stored, vector)/2.

A root set is handled as a frozenset of root indices into ``RootSystem.roots``;
the canonical external form is the sorted index tuple.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .intlat import column_solver, hermite_basis, smith_normal_form

TYPES = ("A", "B", "C", "D", "G2", "F4", "E6", "E7", "E8")

FIXED_RANK = {"G2": 2, "F4": 4, "E6": 6, "E7": 7, "E8": 8}

# order of the fundamental group P/Q, used to validate the coweight lattice
FUNDAMENTAL_GROUP_ORDER = {
    "A": lambda n: n,  # n = ambient dimension, type A_{n-1}
    "B": lambda n: 2,
    "C": lambda n: 2,
    "D": lambda n: 4,
    "G2": lambda n: 1,
    "F4": lambda n: 1,
    "E6": lambda n: 3,
    "E7": lambda n: 2,
    "E8": lambda n: 1,
}


class InvalidRank(ValueError):
    pass


def _a_roots(n: int) -> list[tuple[int, ...]]:
    out = []
    for i in range(n):
        for j in range(n):
            if i != j:
                v = [0] * n
                v[i], v[j] = 2, -2
                out.append(tuple(v))
    return out


def _b_roots(n: int) -> list[tuple[int, ...]]:
    out = []
    for i in range(n):
        for s in (2, -2):
            v = [0] * n
            v[i] = s
            out.append(tuple(v))
    out.extend(_pair_roots(n))
    return out


def _c_roots(n: int) -> list[tuple[int, ...]]:
    out = []
    for i in range(n):
        for s in (4, -4):
            v = [0] * n
            v[i] = s
            out.append(tuple(v))
    out.extend(_pair_roots(n))
    return out


def _pair_roots(n: int) -> list[tuple[int, ...]]:
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for si in (2, -2):
                for sj in (2, -2):
                    v = [0] * n
                    v[i], v[j] = si, sj
                    out.append(tuple(v))
    return out


def _g2_roots() -> list[tuple[int, ...]]:
    out = []
    for i, j in itertools.permutations(range(3), 2):
        v = [0, 0, 0]
        v[i], v[j] = 2, -2
        out.append(tuple(v))
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        for s in (1, -1):
            v = [0, 0, 0]
            v[i], v[j], v[k] = 4 * s, -2 * s, -2 * s
            out.append(tuple(v))
    return out


def _f4_roots() -> list[tuple[int, ...]]:
    out = _b_roots(4)
    for signs in itertools.product((1, -1), repeat=4):
        out.append(tuple(signs))
    return out


def _spinor_roots(constraint) -> list[tuple[int, ...]]:
    out = []
    for signs in itertools.product((1, -1), repeat=8):
        prod = 1
        for s in signs:
            prod *= s
        if prod == 1 and constraint(signs):
            out.append(tuple(signs))
    return out


def _pairs_in(indices: list[int]) -> list[tuple[int, ...]]:
    out = []
    for a, b in itertools.combinations(indices, 2):
        for sa in (2, -2):
            for sb in (2, -2):
                v = [0] * 8
                v[a], v[b] = sa, sb
                out.append(tuple(v))
    return out


def _e8_roots() -> list[tuple[int, ...]]:
    return _pairs_in(list(range(8))) + _spinor_roots(lambda s: True)


def _e7_roots() -> list[tuple[int, ...]]:
    out = _pairs_in(list(range(6)))
    out.append((0, 0, 0, 0, 0, 0, 2, -2))
    out.append((0, 0, 0, 0, 0, 0, -2, 2))
    out.extend(_spinor_roots(lambda s: s[6] + s[7] == 0))
    return out


def _e6_roots() -> list[tuple[int, ...]]:
    out = _pairs_in(list(range(5)))
    out.extend(_spinor_roots(lambda s: s[5] == s[6] == -s[7]))
    return out


_BUILDERS = {
    "A": _a_roots,
    "B": _b_roots,
    "C": _c_roots,
    "D": _pair_roots,
    "G2": lambda n: _g2_roots(),
    "F4": lambda n: _f4_roots(),
    "E6": lambda n: _e6_roots(),
    "E7": lambda n: _e7_roots(),
    "E8": lambda n: _e8_roots(),
}


@dataclass(frozen=True)
class GradingElement:
    """Element of the coweight lattice R*, stored both as integer coordinates
    in the coweight basis and as the ambient rational vector."""

    coords: tuple[int, ...]
    ambient: tuple[Fraction, ...]


@dataclass
class RootSystem:
    type_tag: str
    rank: int
    ambient_dim: int
    roots: list[tuple[int, ...]] = field(repr=False)
    index: dict[tuple[int, ...], int] = field(repr=False)
    coweight_basis: list[tuple[Fraction, ...]] = field(repr=False)
    _sum_table: dict[tuple[int, int], int | None] = field(default_factory=dict, repr=False)

    @property
    def nroots(self) -> int:
        return len(self.roots)

    def root_index(self, stored: tuple[int, ...]) -> int:
        return self.index[tuple(stored)]

    def neg(self, i: int) -> int:
        return self.index[tuple(-x for x in self.roots[i])]

    def grading_element(self, coords) -> GradingElement:
        coords = tuple(int(c) for c in coords)
        amb = [Fraction(0)] * self.ambient_dim
        for c, basis_vec in zip(coords, self.coweight_basis):
            for k in range(self.ambient_dim):
                amb[k] += c * basis_vec[k]
        return GradingElement(coords, tuple(amb))

    def ambient_to_coweight_coords(self, ambient) -> tuple[int, ...] | None:
        """Integer coweight coordinates of an ambient vector, or None if it is
        not in the coweight lattice."""
        rows = [[Fraction(v[k]) for v in self.coweight_basis] for k in range(self.ambient_dim)]
        target = [Fraction(x) for x in ambient]
        sol = _solve_rational(rows, target)
        if sol is None or any(x.denominator != 1 for x in sol):
            return None
        return tuple(int(x) for x in sol)


def _solve_rational(rows: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Solve rows * x = b exactly; None if inconsistent (unique solution
    assumed when consistent with full column rank)."""
    nr, nc = len(rows), len(rows[0]) if rows else 0
    a = [rows[i][:] + [b[i]] for i in range(nr)]
    piv_cols = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        f = a[r][c]
        a[r] = [x / f for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                fi = a[i][c]
                a[i] = [x - fi * y for x, y in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
        if r == nr:
            break
    for i in range(r, nr):
        if a[i][nc] != 0:
            return None
    x = [Fraction(0)] * nc
    for i, c in enumerate(piv_cols):
        x[c] = a[i][nc]
    return x


def inner(alpha: tuple[int, ...], beta: tuple[int, ...]) -> Fraction:
    """Exact inner product in the original (undoubled) normalization."""
    if len(alpha) != len(beta):
        raise ValueError("ambient dimension mismatch")
    return Fraction(sum(a * b for a, b in zip(alpha, beta)), 4)


def evaluate(alpha: tuple[int, ...], e: GradingElement | tuple) -> Fraction:
    """alpha(E) for an ambient vector or grading element E."""
    vec = e.ambient if isinstance(e, GradingElement) else e
    return Fraction(sum(a * Fraction(x) for a, x in zip(alpha, vec)), 2)


def evaluate_int(alpha: tuple[int, ...], e: GradingElement) -> int:
    v = evaluate(alpha, e)
    if v.denominator != 1:
        raise ValueError("root does not evaluate integrally")
    return int(v)


def root_sum(r: RootSystem, i: int, j: int) -> int | None:
    """Index of alpha_i + alpha_j when the sum is a root, else None."""
    key = (i, j) if i <= j else (j, i)
    hit = r._sum_table.get(key, -1)
    if hit != -1:
        return hit
    s = tuple(a + b for a, b in zip(r.roots[i], r.roots[j]))
    out = r.index.get(s)
    r._sum_table[key] = out
    return out


def _span_basis(roots: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """A maximal linearly independent subset of the stored root vectors."""
    basis: list[tuple[int, ...]] = []
    rows: list[list[Fraction]] = []
    for v in roots:
        cand = rows + [[Fraction(x) for x in v]]
        if _rank_rational(cand) > len(rows):
            rows = cand
            basis.append(v)
    return basis


def _rank_rational(rows: list[list[Fraction]]) -> int:
    a = [row[:] for row in rows]
    nr, nc = len(a), len(a[0]) if a else 0
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, nr):
            if a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def coweight_lattice_basis(roots: list[tuple[int, ...]]) -> list[tuple[Fraction, ...]]:
    """Basis of {H in span(R) : alpha(H) in Z for all alpha}, computed as the
    dual lattice of the root lattice inside the span of the roots."""
    # Z-basis of the doubled root lattice
    dbasis = hermite_basis([list(v) for v in roots])
    r = len(dbasis)
    n = len(roots[0])
    # root-lattice basis in original coordinates is dbasis/2; we need dual
    # vectors d_j in the span with (dbasis_i/2 | d_j) = delta_ij, where the
    # evaluation pairing alpha(H) equals the euclidean product in original
    # coordinates.  With stored vectors: alpha(H) = dot(stored, H)/2, so we
    # require dot(dbasis_i, d_j)/2 = delta_ij.
    gram = [[Fraction(sum(a * b for a, b in zip(dbasis[i], dbasis[j])), 2) for j in range(r)] for i in range(r)]
    inv = _invert_rational(gram)
    dual = []
    for j in range(r):
        vec = [Fraction(0)] * n
        for i in range(r):
            for k in range(n):
                vec[k] += inv[j][i] * dbasis[i][k]
        dual.append(tuple(vec))
    return dual


def _invert_rational(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [list(m[i]) + [Fraction(1) if j == i else Fraction(0) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        f = a[c][c]
        a[c] = [x / f for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                fi = a[i][c]
                a[i] = [x - fi * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


def build_root_system(type_tag: str, rank: int | None = None) -> RootSystem:
    """Construct a root system in the explicit coordinates used throughout.

    For type A the parameter is the ambient dimension n (the system A_{n-1});
    for B, C, D it is n; the exceptional types have fixed rank and the
    parameter may be omitted.
    """
    if type_tag not in TYPES:
        raise InvalidRank(f"unknown type {type_tag!r}")
    if type_tag in FIXED_RANK:
        if rank is not None and rank != FIXED_RANK[type_tag]:
            raise InvalidRank(f"{type_tag} has fixed rank {FIXED_RANK[type_tag]}")
        n = FIXED_RANK[type_tag]
    else:
        if rank is None:
            raise InvalidRank(f"type {type_tag} requires a rank")
        n = rank
        if type_tag == "A" and n < 2:
            raise InvalidRank("A_{n-1} needs ambient dimension n >= 2")
        if type_tag in ("B", "C") and n < 2:
            raise InvalidRank(f"{type_tag}_n needs n >= 2")
        if type_tag == "D" and n < 3:
            raise InvalidRank("D_n needs n >= 3 (D_2 is reducible)")
    stored = sorted(_BUILDERS[type_tag](n))
    ambient = len(stored[0])
    true_rank = {"A": n - 1, "B": n, "C": n, "D": n}.get(type_tag, FIXED_RANK.get(type_tag))
    cw = coweight_lattice_basis(stored)
    rs = RootSystem(
        type_tag=type_tag,
        rank=true_rank,
        ambient_dim=ambient,
        roots=stored,
        index={v: i for i, v in enumerate(stored)},
        coweight_basis=cw,
    )
    return rs


def coroot(alpha: tuple[int, ...]) -> tuple[Fraction, ...]:
    """Coroot 2*alpha/(alpha|alpha) as an ambient rational vector."""
    nn = inner(alpha, alpha)
    return tuple(Fraction(a, 1) / nn for a in alpha)


def coweight_index(r: RootSystem) -> int:
    """Index of the coroot lattice inside the coweight lattice (equals the
    order of the fundamental group for the nine supported types)."""
    coroots = [coroot(v) for v in r.roots]
    lcm = 1
    for vec in itertools.chain(coroots, r.coweight_basis):
        for x in vec:
            lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
    cor_basis = hermite_basis([[int(x * lcm) for x in c] for c in coroots])
    cw_cols = [[int(x * lcm) for x in v] for v in r.coweight_basis]
    solver = column_solver(cw_cols)
    coords = []
    for v in cor_basis:
        sol = solver.solve(list(v))
        if sol is None:
            raise ValueError("coroot lattice not contained in coweight lattice")
        coords.append(list(sol.particular))
    s, _, _ = smith_normal_form(coords)
    idx = 1
    for i in range(min(len(s), len(s[0]) if s else 0)):
        if s[i][i] == 0:
            raise ValueError("coroot lattice has lower rank than coweight lattice")
        idx *= s[i][i]
    return abs(idx)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def find_root(r: RootSystem, spec) -> int:
    """Index of a root given in ORIGINAL coordinates (ints, Fractions or
    halves as Fraction); convenience for tests and catalogs."""
    stored = tuple(int(Fraction(x) * 2) for x in spec)
    return r.index[stored]


def roots_set(r: RootSystem, specs) -> frozenset[int]:
    return frozenset(find_root(r, s) for s in specs)


def sorted_indices(q) -> tuple[int, ...]:
    return tuple(sorted(q))


def rootset_to_json(r: RootSystem, q) -> str:
    return json.dumps(
        {"type": r.type_tag, "rank": r.rank, "roots": [list(r.roots[i]) for i in sorted_indices(q)]},
        sort_keys=True,
    )


def rootset_from_json(text: str) -> tuple[RootSystem, frozenset[int]]:
    data = json.loads(text)
    tag = data["type"]
    if tag in FIXED_RANK:
        rs = build_root_system(tag)
    else:
        ambient = {"A": lambda rk: rk + 1}.get(tag, lambda rk: rk)(data["rank"])
        rs = build_root_system(tag, ambient)
    q = frozenset(rs.index[tuple(v)] for v in data["roots"])
    return rs, q


def rootsystem_to_json(r: RootSystem) -> str:
    return json.dumps(
        {
            "type": r.type_tag,
            "rank": r.rank,
            "ambient_dim": r.ambient_dim,
            "roots": [list(v) for v in r.roots],
            "coweight_basis": [[str(x) for x in v] for v in r.coweight_basis],
        },
        sort_keys=True,
    )
