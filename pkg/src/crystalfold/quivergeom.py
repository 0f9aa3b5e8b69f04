"""Point-level checks on explicit quiver representations.

A representation assigns a rational matrix ``x_h : V_out(h) -> V_inc(h)`` to
every arrow of the doubled quiver.  A Nakajima point adds ``t_i : V_i -> W_i``.
The checkers decide membership in the zero set of the moment map, nilpotency
and stability exactly, and compute the cokernel dimension ``eps_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import linalg
from .rootdata import Arrow, Automorphism, InvariantViolation, Quiver, RejectedInput


@dataclass(frozen=True)
class QuiverRep:
    quiver: Quiver
    dims: Mapping[str, int]
    maps: Mapping[Arrow, list] = field(default_factory=dict)

    def __post_init__(self):
        q = self.quiver
        dims = {v: int(self.dims.get(v, 0)) for v in q.vertices}
        if any(d < 0 for d in dims.values()):
            raise RejectedInput("negative dimension")
        maps = {}
        for h in q.arrows:
            rows, cols = dims[q.inc(h)], dims[q.out(h)]
            m = self.maps.get(h)
            if m is None:
                m = linalg.zeros(rows, cols)
            m = linalg.as_fraction_matrix(m)
            if len(m) != rows or any(len(r) != cols for r in m):
                raise RejectedInput(f"matrix on arrow {q.out(h)}->{q.inc(h)} must be {rows}x{cols}")
            maps[h] = m
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "maps", maps)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def x(self, h: Arrow) -> linalg.Matrix:
        return self.maps[h]

    def to_json(self) -> dict:
        q = self.quiver
        return {
            "quiver": q.to_json(),
            "dims": dict(self.dims),
            "maps": [{"edge": [q.out(h), q.inc(h)], "matrix": _mat_json(self.maps[h])} for h in q.arrows],
        }

    @classmethod
    def from_json(cls, data: Mapping, quiver: Quiver | None = None) -> QuiverRep:
        q = quiver or Quiver.from_json(data["quiver"])
        dims = {str(k): int(v) for k, v in data["dims"].items()}
        maps: dict[Arrow, list] = {}
        pool = {}
        for h in q.arrows:
            pool.setdefault((q.out(h), q.inc(h)), []).append(h)
        for entry in data.get("maps", []):
            key = tuple(str(v) for v in entry["edge"])
            if not pool.get(key):
                raise RejectedInput(f"no free arrow {key[0]}->{key[1]}")
            h = pool[key].pop(0)
            rows, cols = dims.get(key[1], 0), dims.get(key[0], 0)
            maps[h] = _mat_parse(entry["matrix"], rows, cols)
        return cls(q, dims, maps)


@dataclass(frozen=True)
class NakajimaPoint:
    rep: QuiverRep
    wdims: Mapping[str, int]
    t: Mapping[str, list] = field(default_factory=dict)

    def __post_init__(self):
        q = self.rep.quiver
        wdims = {v: int(self.wdims.get(v, 0)) for v in q.vertices}
        t = {}
        for v in q.vertices:
            rows, cols = wdims[v], self.rep.dims[v]
            m = self.t.get(v)
            m = linalg.zeros(rows, cols) if m is None else linalg.as_fraction_matrix(m)
            if len(m) != rows or any(len(r) != cols for r in m):
                raise RejectedInput(f"t at {v} must be {rows}x{cols}")
            t[v] = m
        object.__setattr__(self, "wdims", wdims)
        object.__setattr__(self, "t", t)

    def to_json(self) -> dict:
        out = self.rep.to_json()
        out["wdims"] = dict(self.wdims)
        out["t"] = {v: _mat_json(m) for v, m in self.t.items()}
        return out

    @classmethod
    def from_json(cls, data: Mapping, quiver: Quiver | None = None) -> NakajimaPoint:
        rep = QuiverRep.from_json(data, quiver)
        wdims = {str(k): int(v) for k, v in data.get("wdims", {}).items()}
        t = {}
        for v, m in data.get("t", {}).items():
            t[str(v)] = _mat_parse(m, wdims.get(str(v), 0), rep.dims[str(v)])
        return cls(rep, wdims, t)


def _mat_json(m: linalg.Matrix) -> list:
    return [[str(x) for x in row] for row in m]


def _mat_parse(rows, nrows: int, ncols: int) -> linalg.Matrix:
    m = [[Fraction(x) for x in row] for row in rows]
    if not m and nrows:
        m = linalg.zeros(nrows, 0) if ncols == 0 else m
    return m


def _as_rep(r) -> QuiverRep:
    return r.rep if isinstance(r, NakajimaPoint) else r


def moment_check(r) -> dict[str, bool]:
    """Per vertex: does ``sum_{inc(h)=i} sign(h) x_h x_hbar`` vanish."""
    r = _as_rep(r)
    q = r.quiver
    out = {}
    for i in q.vertices:
        n = r.dims[i]
        total = linalg.zeros(n, n)
        for h in q.arrows:
            if q.inc(h) != i:
                continue
            hb = q.bar(h)
            prod = linalg.matmul(r.x(h), r.x(hb), r.dims[q.out(h)], n)
            s = q.sign(h)
            for a in range(n):
                for b in range(n):
                    total[a][b] += s * prod[a][b]
        out[i] = linalg.is_zero(total)
    return out


def nilpotency_check(r) -> bool:
    """Do all compositions of ``sum(dims) + 1`` consecutive arrows vanish.

    The images ``K_m`` spanned by all length-``m`` compositions form a
    descending chain; the bound is reached iff the chain hits zero.
    """
    r = _as_rep(r)
    q = r.quiver
    bound = r.total_dim + 1
    # column bases of K_m at each vertex
    current = {v: linalg.identity(r.dims[v]) for v in q.vertices}
    prev_total = r.total_dim
    for _ in range(bound):
        nxt = {}
        for v in q.vertices:
            blocks = []
            for h in q.arrows:
                if q.inc(h) != v:
                    continue
                src = q.out(h)
                basis = current[src]
                if not basis or not basis[0]:
                    continue
                blocks.append(linalg.matmul(r.x(h), basis, r.dims[src], len(basis[0])))
            if blocks and r.dims[v]:
                stacked = linalg.hstack(blocks, r.dims[v])
                nxt[v] = linalg.column_basis(stacked, r.dims[v], len(stacked[0]))
            else:
                nxt[v] = [[] for _ in range(r.dims[v])]
        current = nxt
        total = sum(len(b[0]) if b and b[0] else 0 for b in current.values())
        if total == 0:
            return True
        if total > prev_total:
            raise InvariantViolation("image chain grew")
        prev_total = total
    return False


def epsilon_geom(p, i: str) -> int:
    """``dim V_i`` minus the rank of all arrows into ``i`` taken together; ``t`` plays no role."""
    r = _as_rep(p)
    q = r.quiver
    n = r.dims[i]
    blocks = [r.x(h) for h in q.arrows if q.inc(h) == i and r.dims[q.out(h)]]
    if not blocks or n == 0:
        return n
    return n - linalg.rank(linalg.hstack(blocks, n))


def stability_check(p: NakajimaPoint) -> bool:
    """True iff the only x-stable graded subspace inside ker t is zero.

    Fixpoint of ``S_i <- {v in S_i : x_h v in S_inc(h) for out(h) = i}`` from ``S_i = ker t_i``.
    """
    r = p.rep
    q = r.quiver
    dims = r.dims
    space = {v: linalg.nullspace(p.t[v], dims[v]) if dims[v] else [] for v in q.vertices}

    def sdim(b):
        return len(b[0]) if b and b[0] else 0

    total = sum(sdim(b) for b in space.values())
    for _ in range(r.total_dim + 1):
        if total == 0:
            return True
        new = {}
        for v in q.vertices:
            basis = space[v]
            k = sdim(basis)
            if k == 0:
                new[v] = basis
                continue
            constraints = []
            for h in q.arrows:
                if q.out(h) != v:
                    continue
                w = q.inc(h)
                if dims[w] == 0:
                    continue
                ann = linalg.left_annihilator(space[w], dims[w], sdim(space[w]))
                if not ann:
                    continue
                img = linalg.matmul(r.x(h), basis, dims[v], k)
                constraints.append(linalg.matmul(ann, img, dims[w], k))
            if constraints:
                y = linalg.nullspace(linalg.vstack(constraints), k)
                kk = len(y[0]) if y and y[0] else 0
                new[v] = linalg.matmul(basis, y, k, kk) if kk else [[] for _ in range(dims[v])]
            else:
                new[v] = basis
        new_total = sum(sdim(b) for b in new.values())
        if new_total > total:
            raise InvariantViolation("stability fixpoint is not monotone")
        if new_total == total:
            return False
        space, total = new, new_total
    if total:
        raise InvariantViolation("stability fixpoint did not settle within sum(dims) steps")
    return True


def apply_Fa(r, a: Automorphism):
    """Reindex a representation (or point) along ``a``: ``V'_i = V_{a^-1 i}``, ``x'_h = x_{a^-1 h}``."""
    point = r if isinstance(r, NakajimaPoint) else None
    rep = _as_rep(r)
    q = rep.quiver
    if a.quiver != q:
        raise RejectedInput("automorphism belongs to a different quiver")
    inv = a.inverse_mapping
    dims = {v: rep.dims[inv[v]] for v in q.vertices}
    maps = {h: rep.x(a.arrow_inverse(h)) for h in q.arrows}
    new = QuiverRep(q, dims, maps)
    if point is None:
        return new
    if any(point.wdims[a(v)] != point.wdims[v] for v in q.vertices):
        raise RejectedInput("w is not invariant under the automorphism")
    t = {v: point.t[inv[v]] for v in q.vertices}
    return NakajimaPoint(new, dict(point.wdims), t)


def _is_type_a(q: Quiver) -> bool:
    if len(set(frozenset(e) for e in q.edges)) != len(q.edges):
        return False
    deg = {v: 0 for v in q.vertices}
    for u, v in q.edges:
        deg[u] += 1
        deg[v] += 1
    if any(d > 2 for d in deg.values()) or len(q.edges) != len(q.vertices) - 1:
        return False
    # connected tree with max degree 2 is a path
    adj = {v: [] for v in q.vertices}
    for u, v in q.edges:
        adj[u].append(v)
        adj[v].append(u)
    seen, stack = set(), [q.vertices[0]] if q.vertices else []
    while stack:
        v = stack.pop()
        if v not in seen:
            seen.add(v)
            stack.extend(adj[v])
    return len(seen) == len(q.vertices)


def path_ranks(r) -> dict[tuple[Arrow, ...], int]:
    """Rank of the composition along every arrow path whose composition is nonzero."""
    r = _as_rep(r)
    q = r.quiver
    out: dict[tuple[Arrow, ...], int] = {}
    bound = r.total_dim + 1
    stack: list[tuple[tuple[Arrow, ...], linalg.Matrix, str]] = []
    for v in q.vertices:
        stack.append(((), linalg.identity(r.dims[v]), v))
    while stack:
        path, comp, here = stack.pop()
        if len(path) >= bound:
            continue
        for h in q.arrows:
            if q.out(h) != here:
                continue
            tgt = q.inc(h)
            src_dim = len(comp[0]) if comp and comp[0] else 0
            if r.dims[tgt] == 0 or src_dim == 0:
                continue
            new = linalg.matmul(r.x(h), comp, r.dims[here], src_dim)
            rk = linalg.rank(new)
            if rk == 0:
                continue
            key = path + (h,)
            out[key] = rk
            stack.append((key, new, tgt))
    return out


def reps_isomorphic(r1, r2) -> bool:
    """Isomorphism of nilpotent type-A representations via dims and path-composition ranks."""
    a, b = _as_rep(r1), _as_rep(r2)
    if a.quiver != b.quiver:
        raise RejectedInput("representations live on different quivers")
    if not _is_type_a(a.quiver):
        raise RejectedInput("path-rank criterion is only supported on type-A quivers")
    if a.dims != b.dims:
        return False
    return path_ranks(a) == path_ranks(b)
