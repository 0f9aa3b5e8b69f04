"""Crystals: the sequence realization of B(infinity), highest-weight crystals
cut out of B(infinity) (x) T_lambda, and explicit crystal graphs.

Elements of B(infinity) are finitely supported sequences ``a`` indexed by the
slots of the cyclic word ``i_1 i_2 ... = 1 2 .. n 1 2 .. n ...``.  With

    sigma_k(a) = a_k + sum_{l > k} <h_{i_k}, alpha_{i_l}> a_l,

``eps_i(a)`` is the largest ``sigma_k`` over slots carrying ``i``; ``f_i`` raises
the first slot attaining it and ``e_i`` lowers the last one.  The connected
component of the zero sequence is B(infinity).

"Absent" results (the crystal's 0) are ``None`` throughout.
"""

from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .rootdata import CartanDatum, InvariantViolation, RejectedInput, Weight, pairing

# ---------------------------------------------------------------------------
# elementary crystals and tensor products
#
# eps/phi of -infinity are written as None.


@dataclass(frozen=True)
class ElementaryElement:
    """``b_i(n)``: weight ``n alpha_i``, ``phi_i = n``, ``eps_i = -n``, -infinity elsewhere."""

    node: str
    level: int

    def wt(self, cd: CartanDatum) -> Weight:
        drop = [0] * cd.rank
        drop[cd.index[self.node]] = -self.level
        return Weight((0,) * cd.rank, tuple(drop))

    def eps(self, i: str) -> int | None:
        return -self.level if i == self.node else None

    def phi(self, i: str) -> int | None:
        return self.level if i == self.node else None

    def e(self, i: str) -> ElementaryElement | None:
        return ElementaryElement(self.node, self.level + 1) if i == self.node else None

    def f(self, i: str) -> ElementaryElement | None:
        return ElementaryElement(self.node, self.level - 1) if i == self.node else None


@dataclass(frozen=True)
class TElement:
    """The one-element crystal ``T_w``: every eps/phi is -infinity, every operator absent."""

    weight: Weight

    def wt(self, cd: CartanDatum) -> Weight:
        return self.weight

    def eps(self, i: str) -> None:
        return None

    def phi(self, i: str) -> None:
        return None

    def e(self, i: str) -> None:
        return None

    def f(self, i: str) -> None:
        return None


def _max(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def _add(a: int | None, k: int) -> int | None:
    return None if a is None else a + k


def _gt(a: int | None, b: int | None) -> bool:
    if a is None:
        return False
    return b is None or a > b


@dataclass(frozen=True)
class TensorElement:
    """``b_1 (x) b_2`` with the Kashiwara convention.

    ``f_i`` acts on the left factor when ``phi_i(b_1) > eps_i(b_2)``, otherwise on the
    right; ``e_i`` acts on the left when ``phi_i(b_1) >= eps_i(b_2)``.  Nested
    tensors give longer products.
    """

    left: object
    right: object
    cartan: CartanDatum

    def wt(self, cd: CartanDatum | None = None) -> Weight:
        cd = cd or self.cartan
        a, b = self.left.wt(cd), self.right.wt(cd)
        return Weight(tuple(x + y for x, y in zip(a.base, b.base)), tuple(x + y for x, y in zip(a.drop, b.drop)))

    def eps(self, i: str) -> int | None:
        return _max(self.left.eps(i), _add(self.right.eps(i), -pairing(self.cartan, i, self.left.wt(self.cartan))))

    def phi(self, i: str) -> int | None:
        return _max(self.right.phi(i), _add(self.left.phi(i), pairing(self.cartan, i, self.right.wt(self.cartan))))

    def f(self, i: str) -> TensorElement | None:
        if _gt(self.left.phi(i), self.right.eps(i)):
            new = self.left.f(i)
            return None if new is None else TensorElement(new, self.right, self.cartan)
        new = self.right.f(i)
        return None if new is None else TensorElement(self.left, new, self.cartan)

    def e(self, i: str) -> TensorElement | None:
        lp, re_ = self.left.phi(i), self.right.eps(i)
        if lp is not None and (re_ is None or lp >= re_):
            new = self.left.e(i)
            return None if new is None else TensorElement(new, self.right, self.cartan)
        new = self.right.e(i)
        return None if new is None else TensorElement(self.left, new, self.cartan)


def tensor(cd: CartanDatum, factors: Sequence) -> TensorElement:
    """Right-nested ``factors[0] (x) (factors[1] (x) ...)``."""
    if len(factors) < 2:
        raise RejectedInput("a tensor product needs at least two factors")
    out = factors[-1]
    for b in reversed(factors[:-1]):
        out = TensorElement(b, out, cd)
    return out


# ---------------------------------------------------------------------------
# the sequence realization


@dataclass(frozen=True)
class SeqElement:
    """Finitely supported sequence on the cyclic word; ``support`` holds sorted ``(slot, value)`` pairs."""

    support: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, a: Mapping[int, int]) -> SeqElement:
        return cls(tuple(sorted((k, v) for k, v in a.items() if v)))

    @property
    def id(self) -> str:
        return "a(" + ",".join(f"{k}:{v}" for k, v in self.support) + ")"

    @classmethod
    def from_id(cls, ident: str) -> SeqElement:
        body = ident.strip()[2:-1]
        if not body:
            return cls()
        return cls.from_dict({int(k): int(v) for k, v in (p.split(":") for p in body.split(","))})

    @property
    def height(self) -> int:
        return sum(v for _, v in self.support)

    def drop(self, rank: int) -> tuple[int, ...]:
        out = [0] * rank
        for k, v in self.support:
            out[(k - 1) % rank] += v
        return tuple(out)


def slot_node(rank: int, k: int) -> int:
    """Node index carried by slot ``k`` of the cyclic word."""
    return (k - 1) % rank


def _sigmas(cd: CartanDatum, a: SeqElement, i: int) -> list[tuple[int, int]]:
    """``(slot, sigma)`` for every slot carrying node ``i`` up to one full cycle past the support.

    Later slots carrying ``i`` have ``sigma = 0``, already attained by the first of them
    inside the window, so maxima and extreme argmaxima are unaffected by the cut.
    """
    n = cd.rank
    vals = dict(a.support)
    last = a.support[-1][0] if a.support else 0
    limit = last + n
    c = cd.matrix[i]
    suffix = [0] * n
    out = []
    for k in range(limit, 0, -1):
        node = slot_node(n, k)
        ak = vals.get(k, 0)
        if node == i:
            out.append((k, ak + sum(c[j] * suffix[j] for j in range(n) if suffix[j])))
        if ak:
            suffix[node] += ak
    out.reverse()
    return out


def seq_eps(cd: CartanDatum, a: SeqElement, node: str) -> int:
    return max(s for _, s in _sigmas(cd, a, cd.index[node]))


def seq_f(cd: CartanDatum, a: SeqElement, node: str) -> SeqElement:
    sig = _sigmas(cd, a, cd.index[node])
    top = max(s for _, s in sig)
    k = min(k for k, s in sig if s == top)
    vals = dict(a.support)
    vals[k] = vals.get(k, 0) + 1
    return SeqElement.from_dict(vals)


def seq_e(cd: CartanDatum, a: SeqElement, node: str) -> SeqElement | None:
    sig = _sigmas(cd, a, cd.index[node])
    top = max(s for _, s in sig)
    if top <= 0:
        return None
    k = max(k for k, s in sig if s == top)
    vals = dict(a.support)
    if vals.get(k, 0) <= 0:
        raise InvariantViolation(f"e_{node} would lower an empty slot {k}")
    vals[k] -= 1
    return SeqElement.from_dict(vals)


class BInfinity:
    """B(infinity) for any symmetrizable Cartan datum, evaluated lazily on sequences."""

    def __init__(self, cd: CartanDatum):
        self.cartan = cd
        self.highest = SeqElement()

    @property
    def nodes(self) -> tuple[str, ...]:
        return self.cartan.nodes

    def key(self, b: SeqElement) -> str:
        return b.id

    def height(self, b: SeqElement) -> int:
        return b.height

    def wt(self, b: SeqElement) -> Weight:
        return Weight((0,) * self.cartan.rank, b.drop(self.cartan.rank))

    def eps(self, b: SeqElement, i: str) -> int:
        return seq_eps(self.cartan, b, i)

    def phi(self, b: SeqElement, i: str) -> int:
        return self.eps(b, i) + pairing(self.cartan, i, self.wt(b))

    def f(self, b: SeqElement, i: str) -> SeqElement | None:
        return seq_f(self.cartan, b, i)

    def e(self, b: SeqElement, i: str) -> SeqElement | None:
        return seq_e(self.cartan, b, i)


class HighestWeightCrystal(BInfinity):
    """B(lambda) as the part of B(infinity) (x) T_lambda surviving the phi cutoff.

    ``f_i`` is applied only when ``phi_i = eps_i + <h_i, wt + lambda> > 0``.
    """

    def __init__(self, cd: CartanDatum, lam: Sequence[int]):
        super().__init__(cd)
        lam = tuple(int(x) for x in lam)
        if len(lam) != cd.rank:
            raise RejectedInput("highest weight has the wrong length")
        if any(x < 0 for x in lam):
            raise RejectedInput("highest weight is not dominant")
        self.lam = lam

    def wt(self, b: SeqElement) -> Weight:
        return Weight(self.lam, b.drop(self.cartan.rank))

    def f(self, b: SeqElement, i: str) -> SeqElement | None:
        if self.phi(b, i) <= 0:
            return None
        return seq_f(self.cartan, b, i)


# ---------------------------------------------------------------------------
# explicit crystal graphs


@dataclass(frozen=True)
class Vertex:
    id: str
    wt: Weight
    eps: tuple[int, ...]
    phi: tuple[int, ...]


@dataclass(frozen=True)
class CrystalGraph:
    """Finite labelled graph of crystal elements.

    ``edges`` are ``(src, node, dst)`` triples meaning ``f_node(src) = dst``.
    ``complete`` marks a whole normal crystal, where ``phi`` is also an
    ``f``-string length; truncations of B(infinity) are not complete.
    """

    cartan: CartanDatum
    highest: str
    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[str, str, str], ...]
    lam: tuple[int, ...] | None = None
    complete: bool = True
    folding: Mapping | None = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.vertices)

    @cached_property
    def by_id(self) -> dict[str, Vertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def f_map(self) -> dict[tuple[str, str], str]:
        return {(s, i): d for s, i, d in self.edges}

    @cached_property
    def e_map(self) -> dict[tuple[str, str], str]:
        return {(d, i): s for s, i, d in self.edges}

    @property
    def nodes(self) -> tuple[str, ...]:
        return self.cartan.nodes

    # the lazy-crystal interface, with elements being ids

    def key(self, b: str) -> str:
        return b

    def wt(self, b: str) -> Weight:
        return self.by_id[b].wt

    def eps(self, b: str, i: str) -> int:
        return self.by_id[b].eps[self.cartan.index[i]]

    def phi(self, b: str, i: str) -> int:
        return self.by_id[b].phi[self.cartan.index[i]]

    def f(self, b: str, i: str) -> str | None:
        return self.f_map.get((b, i))

    def e(self, b: str, i: str) -> str | None:
        return self.e_map.get((b, i))

    def height(self, b: str) -> int:
        return sum(self.by_id[b].wt.drop)

    def to_json(self) -> dict:
        nodes = self.cartan.nodes
        out = {
            "schema": SCHEMA,
            "cartan": self.cartan.to_json(),
            "highest": self.highest,
        }
        if self.lam is not None:
            out["lambda"] = list(self.lam)
        out["complete"] = self.complete
        out["vertices"] = [
            {"id": v.id, "wt": v.wt.to_json(),
             "eps": dict(zip(nodes, v.eps)), "phi": dict(zip(nodes, v.phi))}
            for v in self.vertices
        ]
        out["edges"] = [{"src": s, "node": i, "dst": d} for s, i, d in self.edges]
        if self.folding is not None:
            out["folding"] = self.folding
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=False, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, data: Mapping) -> CrystalGraph:
        if data.get("schema") != SCHEMA:
            raise RejectedInput(f"expected schema {SCHEMA!r}, got {data.get('schema')!r}")
        cd = CartanDatum.from_json(data["cartan"])
        verts = tuple(
            Vertex(v["id"], Weight.from_json(v["wt"]),
                   tuple(int(v["eps"][n]) for n in cd.nodes), tuple(int(v["phi"][n]) for n in cd.nodes))
            for v in data["vertices"]
        )
        edges = tuple((e["src"], e["node"], e["dst"]) for e in data["edges"])
        lam = tuple(data["lambda"]) if "lambda" in data else None
        return cls(cd, data["highest"], verts, edges, lam, bool(data.get("complete", True)), data.get("folding"))

    def to_dot(self) -> str:
        lines = ["digraph crystal {", "  rankdir=TB;"]
        for v in self.vertices:
            label = f"({','.join(map(str, v.wt.base))}; {','.join(map(str, v.wt.drop))})"
            lines.append(f"  {json.dumps(v.id)} [label={json.dumps(label)}];")
        for s, i, d in self.edges:
            lines.append(f"  {json.dumps(s)} -> {json.dumps(d)} [label={json.dumps(i)}];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_table(self) -> str:
        nodes = self.cartan.nodes
        header = ["id", "base", "drop"] + [f"eps_{n}" for n in nodes] + [f"phi_{n}" for n in nodes]
        rows = ["\t".join(header)]
        for v in self.vertices:
            rows.append("\t".join([v.id, ",".join(map(str, v.wt.base)), ",".join(map(str, v.wt.drop))]
                                  + [str(x) for x in v.eps] + [str(x) for x in v.phi]))
        return "\n".join(rows) + "\n"


SCHEMA = "crystal-fold/1"


def explore(crystal, max_height: int | None = None, roots: Iterable | None = None,
            ops: Iterable[str] | None = None, step=None) -> list:
    """Breadth-first closure from ``crystal.highest`` under ``step(b, i)`` (default ``crystal.f``).

    Elements past ``max_height`` are dropped.  Returns elements in (height, key) order.
    """
    step = step or crystal.f
    ops = tuple(ops) if ops is not None else crystal.nodes
    start = list(roots) if roots is not None else [crystal.highest]
    seen = {crystal.key(b): b for b in start}
    queue = deque(start)
    while queue:
        b = queue.popleft()
        for i in ops:
            c = step(b, i)
            if c is None:
                continue
            if max_height is not None and crystal.height(c) > max_height:
                continue
            k = crystal.key(c)
            if k not in seen:
                seen[k] = c
                queue.append(c)
    return sorted(seen.values(), key=lambda b: (crystal.height(b), crystal.key(b)))


def graph_from_crystal(crystal, elements: Sequence, *, lam=None, complete: bool,
                       step=None, ops: Sequence[str] | None = None, cartan: CartanDatum | None = None,
                       eps=None, phi=None, wt=None, folding=None) -> CrystalGraph:
    """Tabulate ``elements`` of a lazy crystal into a graph; edges leaving the set are dropped."""
    cd = cartan or crystal.cartan
    ops = tuple(ops) if ops is not None else cd.nodes
    step = step or crystal.f
    eps = eps or crystal.eps
    phi = phi or crystal.phi
    wt = wt or crystal.wt
    keys = {crystal.key(b) for b in elements}
    verts, edges = [], []
    for b in elements:
        k = crystal.key(b)
        verts.append(Vertex(k, wt(b), tuple(eps(b, i) for i in ops), tuple(phi(b, i) for i in ops)))
        for i in ops:
            c = step(b, i)
            if c is not None and crystal.key(c) in keys:
                edges.append((k, i, crystal.key(c)))
    return CrystalGraph(cd, crystal.key(elements[0]), tuple(verts), tuple(edges), lam, complete, folding)


def generate_binfinity(cd: CartanDatum, depth: int) -> CrystalGraph:
    """All elements of B(infinity) at height <= depth, with f-edges inside the window."""
    if depth < 0:
        raise RejectedInput("depth must be nonnegative")
    crystal = BInfinity(cd)
    elements = explore(crystal, max_height=depth)
    return graph_from_crystal(crystal, elements, complete=False)


def generate_blambda(cd: CartanDatum, lam: Sequence[int], depth: int | None = None) -> CrystalGraph:
    """B(lambda); unbounded generation needs finite type."""
    crystal = HighestWeightCrystal(cd, lam)
    if depth is None and not cd.is_finite_type:
        raise RejectedInput("unbounded B(lambda) generation requires finite type")
    elements = explore(crystal, max_height=depth)
    return graph_from_crystal(crystal, elements, lam=crystal.lam, complete=depth is None)


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class Violation:
    """Failed checks at one location: ``(element, node)`` or an edge triple."""

    location: tuple
    checks: tuple[str, ...]


@dataclass(frozen=True)
class AxiomReport:
    violations: tuple[Violation, ...]
    checked_elements: int
    checked_edges: int

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return f"ok ({self.checked_elements} elements, {self.checked_edges} edges)"
        return f"{len(self.violations)} violation(s), first {self.violations[0]}"


def verify_axioms(g: CrystalGraph, cd: CartanDatum | None = None) -> AxiomReport:
    """Check the crystal-graph invariants of ``g`` over ``cd`` (default ``g.cartan``).

    Per element and node: ``phi = eps + <h, wt>``; at most one f- and one e-edge;
    ``eps`` equals the e-string length inside ``g``, and for complete graphs ``phi``
    equals the f-string length.  Per edge: weight drops by the simple root and
    ``eps`` rises by one.  The edge rule for ``phi`` follows from these and is not
    tested separately.  Failures are grouped by location.
    """
    cd = cd or g.cartan
    found: dict[tuple, list[str]] = {}

    def flag(loc, what):
        found.setdefault(loc, []).append(what)

    out_count: Counter = Counter()
    in_count: Counter = Counter()
    for s, i, d in g.edges:
        out_count[(s, i)] += 1
        in_count[(d, i)] += 1
        if s not in g.by_id or d not in g.by_id:
            flag((s, i, d), "edge endpoint missing")
            continue
        if i not in cd.index:
            flag((s, i, d), "unknown node label")
            continue
        k = cd.index[i]
        ws, wd = g.by_id[s].wt, g.by_id[d].wt
        if wd.base != ws.base or wd.drop != ws.lowered(k).drop:
            flag((s, i, d), "weight does not drop by the simple root")
        if g.by_id[d].eps[k] != g.by_id[s].eps[k] + 1:
            flag((s, i, d), "eps does not rise by one")

    for v in g.vertices:
        for k, i in enumerate(cd.nodes):
            loc = (v.id, i)
            if v.phi[k] != v.eps[k] + pairing(cd, i, v.wt):
                flag(loc, "phi != eps + <h, wt>")
            if out_count[loc] > 1 or in_count[loc] > 1:
                flag(loc, "f/e not a partial bijection")
            length, b = 0, v.id
            while (b, i) in g.e_map and length <= len(g.vertices):
                b = g.e_map[(b, i)]
                length += 1
            if v.eps[k] != length:
                flag(loc, f"eps {v.eps[k]} != e-string length {length}")
            if g.complete:
                length, b = 0, v.id
                while (b, i) in g.f_map and length <= len(g.vertices):
                    b = g.f_map[(b, i)]
                    length += 1
                if v.phi[k] != length:
                    flag(loc, f"phi {v.phi[k]} != f-string length {length}")

    violations = tuple(Violation(loc, tuple(checks)) for loc, checks in found.items())
    return AxiomReport(violations, len(g.vertices), len(g.edges))


def character(g: CrystalGraph) -> dict[Weight, int]:
    """Number of elements of each weight."""
    return dict(sorted(Counter(v.wt for v in g.vertices).items(), key=lambda kv: (sum(kv[0].drop), kv[0].drop)))


def highest_elements(g: CrystalGraph) -> list[str]:
    targets = {d for _, _, d in g.edges}
    return [v.id for v in g.vertices if v.id not in targets]


def isomorphic(g1: CrystalGraph, g2: CrystalGraph) -> dict[str, str] | None:
    """The unique label-, weight-, eps- and phi-preserving bijection, or None.

    Both graphs must be connected with a unique highest element; the map is
    propagated from highest to highest along matching f-labels.
    """
    h1, h2 = highest_elements(g1), highest_elements(g2)
    if len(h1) != 1 or len(h2) != 1:
        raise RejectedInput("isomorphism check needs a unique highest element in each graph")
    if g1.cartan.nodes != g2.cartan.nodes or g1.cartan.matrix != g2.cartan.matrix:
        return None
    if len(g1) != len(g2):
        return None
    nodes = g1.cartan.nodes
    mapping = {h1[0]: h2[0]}
    queue = deque([h1[0]])
    while queue:
        b = queue.popleft()
        c = mapping[b]
        vb, vc = g1.by_id[b], g2.by_id[c]
        if vb.wt != vc.wt or vb.eps != vc.eps or vb.phi != vc.phi:
            return None
        for i in nodes:
            nb, nc = g1.f((b), i), g2.f(c, i)
            if (nb is None) != (nc is None):
                return None
            if nb is None:
                continue
            if nb in mapping:
                if mapping[nb] != nc:
                    return None
            else:
                mapping[nb] = nc
                queue.append(nb)
    if len(mapping) != len(g1) or len(set(mapping.values())) != len(g2):
        return None
    return mapping
