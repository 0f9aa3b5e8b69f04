"""Cartan data, quivers with automorphisms, and the folding construction.

A quiver with an admissible automorphism ``a`` determines a symmetrizable
generalized Cartan matrix on the set of vertex orbits::

    m_ij = 2 |i|                    (i == j)
    m_ij = -#edges between orbits   (i != j)
    C    = D^{-1} M,  D = diag(|i|)

Everything here is exact integer/rational arithmetic.  Finite-type oracles
(positive roots, Kostant partition counts, Freudenthal multiplicities, Weyl
dimension) refuse affine and indefinite input.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

from . import linalg


class RejectedInput(ValueError):
    """Input violates a documented precondition."""


class InvariantViolation(AssertionError):
    """An internal invariant (a theorem of the construction) failed at runtime."""


Arrow = tuple[int, int]  # (edge index, direction); direction 0 runs edge[0] -> edge[1]


@dataclass(frozen=True)
class Quiver:
    """Loop-free multigraph with both orientations of every edge and a chosen orientation.

    ``edges`` lists unordered edges as vertex pairs (parallel edges repeated).
    ``orientation[e]`` is the direction (0 or 1) of the arrow of edge ``e`` lying
    in the orientation subset.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    orientation: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise RejectedInput("duplicate vertex names")
        vs = set(self.vertices)
        for u, v in self.edges:
            if u not in vs or v not in vs:
                raise RejectedInput(f"edge {u}-{v} uses an unknown vertex")
            if u == v:
                raise RejectedInput(f"vertex loop at {u}")
        if len(self.orientation) != len(self.edges) or any(d not in (0, 1) for d in self.orientation):
            raise RejectedInput("orientation must pick one direction per edge")

    @classmethod
    def from_edges(cls, vertices: Iterable, edges: Iterable, orientation: Iterable | None = None) -> Quiver:
        """Build from edge pairs; ``orientation`` is a list of ``(out, inc)`` pairs.

        Without an orientation every edge points from its first to its second vertex.
        """
        vertices = tuple(str(v) for v in vertices)
        edges = tuple((str(u), str(v)) for u, v in edges)
        if orientation is None:
            return cls(vertices, edges, (0,) * len(edges))
        pool = Counter((str(u), str(v)) for u, v in orientation)
        dirs = []
        for u, v in edges:
            if pool[(u, v)] > 0:
                pool[(u, v)] -= 1
                dirs.append(0)
            elif pool[(v, u)] > 0:
                pool[(v, u)] -= 1
                dirs.append(1)
            else:
                raise RejectedInput(f"edge {u}-{v} has no orientation entry")
        if +pool:
            raise RejectedInput(f"orientation entries match no edge: {sorted(+pool)}")
        return cls(vertices, edges, tuple(dirs))

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: k for k, v in enumerate(self.vertices)}

    @property
    def arrows(self) -> list[Arrow]:
        return [(e, d) for e in range(len(self.edges)) for d in (0, 1)]

    def out(self, h: Arrow) -> str:
        e, d = h
        return self.edges[e][d]

    def inc(self, h: Arrow) -> str:
        e, d = h
        return self.edges[e][1 - d]

    @staticmethod
    def bar(h: Arrow) -> Arrow:
        return (h[0], 1 - h[1])

    def in_orientation(self, h: Arrow) -> bool:
        return self.orientation[h[0]] == h[1]

    def sign(self, h: Arrow) -> int:
        """+1 on the chosen orientation, -1 on its reverse."""
        return 1 if self.in_orientation(h) else -1

    def multiplicity(self, u: str, v: str) -> int:
        return sum(1 for e in self.edges if e in ((u, v), (v, u)))

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "orientation": [[self.out((e, d)), self.inc((e, d))] for e, d in enumerate(self.orientation)],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> Quiver:
        return cls.from_edges(data["vertices"], data["edges"], data.get("orientation"))


@dataclass(frozen=True)
class Automorphism:
    """Vertex permutation of a quiver together with its induced arrow permutation."""

    quiver: Quiver
    vertex_map: tuple[tuple[str, str], ...]
    edge_map: tuple[int, ...] = field(init=False)
    flips: tuple[bool, ...] = field(init=False)

    def __post_init__(self):
        q = self.quiver
        vmap = dict(self.vertex_map)
        if sorted(vmap) != sorted(q.vertices) or sorted(vmap.values()) != sorted(q.vertices):
            raise RejectedInput("vertex map is not a permutation of the quiver vertices")
        # parallel edges are matched in listed order
        slots: dict[frozenset, list[int]] = {}
        for e, (u, v) in enumerate(q.edges):
            slots.setdefault(frozenset((u, v)), []).append(e)
        used = {k: 0 for k in slots}
        emap, flips = [], []
        for u, v in q.edges:
            key = frozenset((vmap[u], vmap[v]))
            if key not in slots or used[key] >= len(slots[key]):
                raise RejectedInput(f"not a graph automorphism: edge {u}-{v} maps to a non-edge")
            target = slots[key][used[key]]
            used[key] += 1
            emap.append(target)
            flips.append(q.edges[target][0] != vmap[u])
        object.__setattr__(self, "edge_map", tuple(emap))
        object.__setattr__(self, "flips", tuple(flips))

    @classmethod
    def from_mapping(cls, quiver: Quiver, mapping: Mapping) -> Automorphism:
        vmap = {str(k): str(v) for k, v in mapping.items()}
        for v in quiver.vertices:
            vmap.setdefault(v, v)
        return cls(quiver, tuple(sorted(vmap.items(), key=lambda kv: quiver.index.get(kv[0], -1))))

    @classmethod
    def identity(cls, quiver: Quiver) -> Automorphism:
        return cls.from_mapping(quiver, {v: v for v in quiver.vertices})

    @cached_property
    def mapping(self) -> dict[str, str]:
        return dict(self.vertex_map)

    @cached_property
    def inverse_mapping(self) -> dict[str, str]:
        return {v: k for k, v in self.vertex_map}

    def __call__(self, vertex: str) -> str:
        return self.mapping[vertex]

    def arrow(self, h: Arrow) -> Arrow:
        e, d = h
        return (self.edge_map[e], d ^ int(self.flips[e]))

    def arrow_inverse(self, h: Arrow) -> Arrow:
        for g in self.quiver.arrows:
            if self.arrow(g) == h:
                return g
        raise InvariantViolation(f"arrow {h} has no preimage")

    def preserves_orientation(self) -> bool:
        q = self.quiver
        return all(q.in_orientation(self.arrow(h)) == q.in_orientation(h) for h in q.arrows)

    @cached_property
    def orbits(self) -> tuple[tuple[str, ...], ...]:
        """Vertex orbits, members and orbits both ordered by quiver vertex order."""
        q = self.quiver
        seen: set[str] = set()
        out = []
        for v in q.vertices:
            if v in seen:
                continue
            orb = [v]
            w = self.mapping[v]
            while w != v:
                orb.append(w)
                w = self.mapping[w]
            seen.update(orb)
            out.append(tuple(sorted(orb, key=q.index.__getitem__)))
        return tuple(out)

    @cached_property
    def order(self) -> int:
        from math import lcm
        return lcm(*(len(o) for o in self.orbits)) if self.orbits else 1

    def to_json(self) -> dict:
        return {"vertex_map": dict(self.vertex_map)}


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    offending_edges: tuple[tuple[str, str], ...]

    def __bool__(self) -> bool:
        return self.admissible


def check_admissible(q: Quiver, a: Automorphism) -> AdmissibilityReport:
    """An automorphism is admissible when no edge joins two vertices of one orbit."""
    if a.quiver != q:
        raise RejectedInput("automorphism belongs to a different quiver")
    orbit_of = {v: k for k, orb in enumerate(a.orbits) for v in orb}
    bad = tuple(e for e in q.edges if orbit_of[e[0]] == orbit_of[e[1]])
    return AdmissibilityReport(not bad, bad)


@dataclass(frozen=True)
class CartanDatum:
    """Symmetrizable generalized Cartan matrix with a chosen symmetrizer.

    ``matrix[i][j]`` is the pairing of the coroot ``h_i`` with the root ``alpha_j``;
    ``form = diag(symmetrizer) . matrix`` is the symmetric bilinear form on roots.
    """

    nodes: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[int, ...]

    def __post_init__(self):
        n = len(self.nodes)
        if len(set(self.nodes)) != n:
            raise RejectedInput("duplicate node names")
        if len(self.matrix) != n or any(len(r) != n for r in self.matrix) or len(self.symmetrizer) != n:
            raise RejectedInput("Cartan matrix / symmetrizer shape mismatch")
        c, d = self.matrix, self.symmetrizer
        for i in range(n):
            if c[i][i] != 2:
                raise RejectedInput("diagonal entries must be 2")
            if d[i] <= 0:
                raise RejectedInput("symmetrizer entries must be positive")
            for j in range(n):
                if i != j and (c[i][j] > 0 or (c[i][j] == 0) != (c[j][i] == 0)):
                    raise RejectedInput(f"bad off-diagonal pair at ({i}, {j})")
                if d[i] * c[i][j] != d[j] * c[j][i]:
                    raise RejectedInput("diag(symmetrizer) . C is not symmetric")

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]], nodes: Sequence | None = None,
                    symmetrizer: Sequence[int] | None = None) -> CartanDatum:
        n = len(matrix)
        nodes = tuple(str(x) for x in nodes) if nodes is not None else tuple(str(k + 1) for k in range(n))
        mat = tuple(tuple(int(x) for x in row) for row in matrix)
        if symmetrizer is None:
            symmetrizer = find_symmetrizer(mat)
        return cls(nodes, mat, tuple(int(x) for x in symmetrizer))

    @property
    def rank(self) -> int:
        return len(self.nodes)

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: k for k, v in enumerate(self.nodes)}

    @cached_property
    def form(self) -> tuple[tuple[int, ...], ...]:
        d = self.symmetrizer
        return tuple(tuple(d[i] * x for x in row) for i, row in enumerate(self.matrix))

    @cached_property
    def is_finite_type(self) -> bool:
        """Positive-definiteness of the symmetrized form (all leading minors > 0)."""
        f = [[Fraction(x) for x in row] for row in self.form]
        return all(linalg.det([r[:k] for r in f[:k]]) > 0 for k in range(1, self.rank + 1))

    def require_finite(self) -> None:
        if not self.is_finite_type:
            raise RejectedInput("oracle restricted to finite type")

    def to_json(self) -> dict:
        return {"nodes": list(self.nodes), "matrix": [list(r) for r in self.matrix],
                "symmetrizer": list(self.symmetrizer)}

    @classmethod
    def from_json(cls, data: Mapping) -> CartanDatum:
        return cls.from_matrix(data["matrix"], data.get("nodes"), data.get("symmetrizer"))


def find_symmetrizer(matrix: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Smallest positive integer symmetrizer, propagated along the Dynkin graph."""
    n = len(matrix)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and matrix[i][j] != 0:
                    if matrix[j][i] == 0:
                        raise RejectedInput("c_ij = 0 must imply c_ji = 0")
                    val = d[i] * matrix[i][j] / matrix[j][i]
                    if d[j] is None:
                        d[j] = val
                        stack.append(j)
                    elif d[j] != val:
                        raise RejectedInput("Cartan matrix is not symmetrizable")
    from math import lcm
    den = lcm(*(x.denominator for x in d)) if n else 1
    return tuple(int(x * den) for x in d)


def cartan_from_quiver(q: Quiver) -> CartanDatum:
    n = len(q.vertices)
    mat = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for u, v in q.edges:
        i, j = q.index[u], q.index[v]
        if i == j:
            raise RejectedInput(f"vertex loop at {u}")
        mat[i][j] -= 1
        mat[j][i] -= 1
    return CartanDatum(q.vertices, tuple(map(tuple, mat)), (1,) * n)


@dataclass(frozen=True)
class FoldedDatum:
    """Result of folding ``source`` along an admissible ``auto``.

    Folded nodes are named ``"1", "2", ...`` in orbit order (orbits sorted by
    their first vertex in quiver order); ``orbits[k]`` lists the source vertices
    of node ``k``.
    """

    source: Quiver
    auto: Automorphism
    orbits: tuple[tuple[str, ...], ...]
    cartan: CartanDatum
    form: tuple[tuple[int, ...], ...]

    @cached_property
    def source_cartan(self) -> CartanDatum:
        return cartan_from_quiver(self.source)

    @cached_property
    def node_of_vertex(self) -> dict[str, str]:
        return {v: self.cartan.nodes[k] for k, orb in enumerate(self.orbits) for v in orb}

    def orbit(self, node: str) -> tuple[str, ...]:
        return self.orbits[self.cartan.index[node]]

    @property
    def d(self) -> tuple[int, ...]:
        return self.cartan.symmetrizer

    def fold_weight(self, x: Sequence[int]) -> tuple[int, ...]:
        """The canonical bijection from a-invariant I-vectors to orbit-indexed vectors."""
        q = self.source
        if len(x) != len(q.vertices):
            raise RejectedInput("vector length does not match the quiver")
        out = []
        for orb in self.orbits:
            vals = {x[q.index[v]] for v in orb}
            if len(vals) != 1:
                raise RejectedInput(f"vector is not invariant on orbit {orb}")
            out.append(vals.pop())
        return tuple(out)

    def unfold_weight(self, y: Sequence[int]) -> tuple[int, ...]:
        if len(y) != len(self.orbits):
            raise RejectedInput("vector length does not match the folded datum")
        out = [0] * len(self.source.vertices)
        for k, orb in enumerate(self.orbits):
            for v in orb:
                out[self.source.index[v]] = y[k]
        return tuple(out)

    def simple_root_lift(self, node: str) -> tuple[int, ...]:
        return self.unfold_weight([int(n == node) for n in self.cartan.nodes])

    def to_json(self) -> dict:
        out = self.cartan.to_json()
        out["orbits"] = [list(o) for o in self.orbits]
        out["form"] = [list(r) for r in self.form]
        return out


def fold(q: Quiver, a: Automorphism) -> FoldedDatum:
    report = check_admissible(q, a)
    if not report:
        raise RejectedInput(f"automorphism is not admissible; offending edges {list(report.offending_edges)}")
    orbits = a.orbits
    orbit_of = {v: k for k, orb in enumerate(orbits) for v in orb}
    n = len(orbits)
    m = [[0] * n for _ in range(n)]
    for k, orb in enumerate(orbits):
        m[k][k] = 2 * len(orb)
    for u, v in q.edges:
        i, j = orbit_of[u], orbit_of[v]
        m[i][j] -= 1
        m[j][i] -= 1
    d = [len(o) for o in orbits]
    c = []
    for i in range(n):
        row = []
        for j in range(n):
            if m[i][j] % d[i]:
                raise InvariantViolation(f"non-integer Cartan entry m[{i}][{j}]/{d[i]}")
            row.append(m[i][j] // d[i])
        c.append(tuple(row))
    nodes = tuple(str(k + 1) for k in range(n))
    cd = CartanDatum(nodes, tuple(c), tuple(d))
    return FoldedDatum(q, a, orbits, cd, tuple(map(tuple, m)))


@dataclass(frozen=True)
class Weight:
    """``sum base_i omega_i - sum drop_i alpha_i`` over the nodes of a Cartan datum."""

    base: tuple[int, ...]
    drop: tuple[int, ...]

    @classmethod
    def zero(cls, rank: int) -> Weight:
        return cls((0,) * rank, (0,) * rank)

    @classmethod
    def fundamental(cls, rank: int, k: int) -> Weight:
        return cls(tuple(int(i == k) for i in range(rank)), (0,) * rank)

    def lowered(self, k: int, times: int = 1) -> Weight:
        drop = list(self.drop)
        drop[k] += times
        return Weight(self.base, tuple(drop))

    def shifted(self, base: Sequence[int]) -> Weight:
        return Weight(tuple(base), self.drop)

    def dynkin_labels(self, cd: CartanDatum) -> tuple[int, ...]:
        return tuple(pairing(cd, node, self) for node in cd.nodes)

    def to_json(self) -> dict:
        return {"base": list(self.base), "drop": list(self.drop)}

    @classmethod
    def from_json(cls, data: Mapping) -> Weight:
        return cls(tuple(data["base"]), tuple(data["drop"]))


def pairing(cd: CartanDatum | FoldedDatum, node: str, wt: Weight) -> int:
    """``<h_node, wt>``.

    For a folded datum the coroot is the orbit average of source coroots and the
    weight is lifted to the source lattice; the result must be an integer.
    """
    if isinstance(cd, FoldedDatum):
        fd = cd
        src = fd.source_cartan
        lifted = Weight(fd.unfold_weight(wt.base), fd.unfold_weight(wt.drop))
        orb = fd.orbit(node)
        total = Fraction(sum(pairing(src, v, lifted) for v in orb), len(orb))
        if total.denominator != 1:
            raise InvariantViolation(f"non-integral pairing {total} at node {node}")
        return int(total)
    k = cd.index[node]
    if len(wt.base) != cd.rank or len(wt.drop) != cd.rank:
        raise RejectedInput("weight shape does not match Cartan datum")
    return wt.base[k] - sum(c * v for c, v in zip(cd.matrix[k], wt.drop))


# ---------------------------------------------------------------------------
# finite-type oracles


def positive_roots(cd: CartanDatum) -> list[tuple[int, ...]]:
    """Positive roots in simple-root coordinates, sorted by height then lexicographically."""
    cd.require_finite()
    return list(_positive_roots(cd.matrix))


@lru_cache(maxsize=None)
def _positive_roots(matrix: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    n = len(matrix)
    simple = [tuple(int(i == k) for i in range(n)) for k in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = set()
        for beta in layer:
            for i in range(n):
                # i-string through beta: beta - p alpha_i .. beta + q alpha_i, p - q = <h_i, beta>
                p = 0
                while True:
                    cand = tuple(b - (p + 1) * (k == i) for k, b in enumerate(beta))
                    if cand in roots:
                        p += 1
                    else:
                        break
                q = p - sum(matrix[i][j] * beta[j] for j in range(n))
                if q > 0:
                    nxt.add(tuple(b + (k == i) for k, b in enumerate(beta)))
        nxt -= roots
        roots |= nxt
        layer = sorted(nxt)
    return tuple(sorted(roots, key=lambda r: (sum(r), r)))


def kostant_count(cd: CartanDatum, beta: Sequence[int]) -> int:
    """Number of multisets of positive roots summing to ``beta``."""
    roots = positive_roots(cd)
    beta = tuple(beta)
    if any(b < 0 for b in beta):
        return 0
    return _count_multisets(tuple(roots), beta)


@lru_cache(maxsize=None)
def _count_multisets(roots: tuple[tuple[int, ...], ...], beta: tuple[int, ...]) -> int:
    if not any(beta):
        return 1
    if not roots:
        return 0
    first, rest = roots[0], roots[1:]
    total = 0
    rem = beta
    while all(x >= 0 for x in rem):
        total += _count_multisets(rest, rem)
        rem = tuple(x - r for x, r in zip(rem, first))
    return total


def _to_root_coords(cd: CartanDatum, labels: Sequence[int]) -> list[Fraction]:
    """Solve ``C x = labels`` for the simple-root coordinates of a weight."""
    inv = linalg.inverse([[Fraction(x) for x in row] for row in cd.matrix])
    return [sum(inv[i][j] * labels[j] for j in range(cd.rank)) for i in range(cd.rank)]


def _inner(cd: CartanDatum, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    f = cd.form
    n = cd.rank
    return sum(x[i] * f[i][j] * y[j] for i in range(n) for j in range(n) if x[i] and y[j])


def _check_dominant(cd: CartanDatum, lam: Sequence[int]) -> tuple[int, ...]:
    lam = tuple(int(x) for x in lam)
    if len(lam) != cd.rank:
        raise RejectedInput("highest weight has the wrong length")
    if any(x < 0 for x in lam):
        raise RejectedInput("highest weight is not dominant")
    return lam


def weyl_dim(cd: CartanDatum, lam: Sequence[int]) -> int:
    """Weyl dimension formula; ``lam`` in fundamental-weight coordinates."""
    lam = _check_dominant(cd, lam)
    roots = positive_roots(cd)
    lam_r = _to_root_coords(cd, lam)
    rho_r = _to_root_coords(cd, [1] * cd.rank)
    num = Fraction(1)
    for r in roots:
        num *= _inner(cd, [a + b for a, b in zip(lam_r, rho_r)], r) / _inner(cd, rho_r, r)
    if num.denominator != 1:
        raise InvariantViolation(f"non-integral Weyl dimension {num}")
    return int(num)


def freudenthal(cd: CartanDatum, lam: Sequence[int]) -> dict[tuple[int, ...], int]:
    """Weight multiplicities of V(lam), keyed by the drop vector ``v`` (weight lam - sum v_i alpha_i)."""
    lam = _check_dominant(cd, lam)
    roots = positive_roots(cd)
    n = cd.rank
    lam_r = _to_root_coords(cd, lam)
    rho_r = _to_root_coords(cd, [1] * n)
    lr = [a + b for a, b in zip(lam_r, rho_r)]
    norm_top = _inner(cd, lr, lr)

    mult: dict[tuple[int, ...], int] = {(0,) * n: 1}
    # every weight below lam is reached from a weight one simple root higher
    frontier = [(0,) * n]
    seen = set(frontier)
    while frontier:
        nxt = []
        for v in frontier:
            for k in range(n):
                w = tuple(x + (i == k) for i, x in enumerate(v))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        layer = []
        for v in sorted(nxt):
            mu_r = [a - b for a, b in zip(lam_r, v)]
            mr = [a + b for a, b in zip(mu_r, rho_r)]
            denom = norm_top - _inner(cd, mr, mr)
            total = Fraction(0)
            for r in roots:
                k = 1
                while True:
                    u = tuple(a - k * b for a, b in zip(v, r))
                    if any(x < 0 for x in u):
                        break
                    m_u = mult.get(u, 0)
                    if m_u:
                        total += m_u * _inner(cd, [a + k * b for a, b in zip(mu_r, r)], r)
                    k += 1
            if total == 0:
                continue
            if denom == 0:
                raise InvariantViolation("Freudenthal denominator vanished")
            val = 2 * total / denom
            if val.denominator != 1 or val < 0:
                raise InvariantViolation(f"non-integral multiplicity {val} at drop {v}")
            if val:
                mult[v] = int(val)
                layer.append(v)
        frontier = layer
    return mult


# ---------------------------------------------------------------------------
# built-in types


def type_a_quiver(n: int) -> Quiver:
    """Path 1-2-...-n, oriented toward the middle so the flip k -> n+1-k preserves it."""
    if n < 1:
        raise RejectedInput("A_n needs n >= 1")
    verts = [str(k) for k in range(1, n + 1)]
    edges, orient = [], []
    for k in range(1, n):
        edges.append((str(k), str(k + 1)))
        orient.append((str(k), str(k + 1)) if 2 * k < n + 1 else (str(k + 1), str(k)))
    return Quiver.from_edges(verts, edges, orient)


def type_d_quiver(n: int) -> Quiver:
    """Bourbaki labels: chain 1-...-(n-2), fork (n-2)-(n-1) and (n-2)-n; arrows point at n-2."""
    if n < 4:
        raise RejectedInput("D_n needs n >= 4")
    verts = [str(k) for k in range(1, n + 1)]
    edges = [(str(k), str(k + 1)) for k in range(1, n - 1)] + [(str(n - 2), str(n))]
    orient = [(str(k), str(k + 1)) for k in range(1, n - 2)]
    orient += [(str(n - 1), str(n - 2)), (str(n), str(n - 2))]
    return Quiver.from_edges(verts, edges, orient)


def flip_automorphism(q: Quiver) -> Automorphism:
    """k -> n+1-k on the type-A path."""
    n = len(q.vertices)
    return Automorphism.from_mapping(q, {str(k): str(n + 1 - k) for k in range(1, n + 1)})


def triality(q: Quiver) -> Automorphism:
    return Automorphism.from_mapping(q, {"1": "3", "3": "4", "4": "1", "2": "2"})


def fork_swap(q: Quiver) -> Automorphism:
    n = len(q.vertices)
    return Automorphism.from_mapping(q, {str(n - 1): str(n), str(n): str(n - 1)})


_TYPE_RE = re.compile(r"^\s*([A-Za-z])_?(\d+)\s*$")


def parse_type(name: str) -> tuple[str, int]:
    m = _TYPE_RE.match(name)
    if not m:
        raise RejectedInput(f"unrecognised type name {name!r}")
    return m.group(1).upper(), int(m.group(2))


def builtin_quiver(name: str) -> Quiver:
    letter, n = parse_type(name)
    if letter == "A":
        return type_a_quiver(n)
    if letter == "D":
        return type_d_quiver(n)
    raise RejectedInput(f"no built-in simply-laced quiver for {name!r}")


def builtin_fold(name: str) -> FoldedDatum:
    """Non-simply-laced types as folds: B_n <- A_{2n-1}, C_n <- D_{n+1}, G_2 <- D_4."""
    letter, n = parse_type(name)
    if letter == "B" and n >= 1:
        q = type_a_quiver(2 * n - 1)
        return fold(q, flip_automorphism(q))
    if letter == "C" and n >= 3:
        q = type_d_quiver(n + 1)
        return fold(q, fork_swap(q))
    if letter == "G" and n == 2:
        q = type_d_quiver(4)
        return fold(q, triality(q))
    raise RejectedInput(f"no built-in fold for {name!r}")


def builtin_cartan(name: str) -> CartanDatum:
    letter, _ = parse_type(name)
    if letter in ("A", "D"):
        return cartan_from_quiver(builtin_quiver(name))
    return builtin_fold(name).cartan
