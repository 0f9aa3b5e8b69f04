"""The spin crystal of so(2n+1) on self-conjugate Young diagrams in an n x n box.

Box ``(r, c)`` (1-based, row r, column c) sits under vertex ``n + c - r`` of the
A_{2n-1} diagram.  Conjugation reflects the box in the diagonal and sends
degree ``k`` to ``2n - k``.  On self-conjugate diagrams, ``f_k`` adds the pair
of boxes of degrees ``k`` and ``2n - k`` (``k < n``) and ``f_n`` adds the single
diagonal box of degree ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .crystal import CrystalGraph, Vertex
from .quivergeom import NakajimaPoint, QuiverRep
from .rootdata import CartanDatum, RejectedInput, Weight, builtin_fold, cartan_from_quiver, type_a_quiver


@dataclass(frozen=True, order=True)
class YoungDiagram:
    """Partition inside the ``n x n`` box; ``parts`` always has length ``n`` (zero padded)."""

    n: int
    parts: tuple[int, ...]

    def __post_init__(self):
        p = self.parts
        if len(p) != self.n:
            raise RejectedInput("parts must be padded to length n")
        if any(x < 0 or x > self.n for x in p) or any(a < b for a, b in zip(p, p[1:])):
            raise RejectedInput(f"{p} is not a partition in the {self.n}x{self.n} box")

    @classmethod
    def of(cls, n: int, parts=()) -> YoungDiagram:
        parts = [int(x) for x in parts if int(x) != 0]
        if len(parts) > n:
            raise RejectedInput(f"{parts} has more than {n} rows")
        return cls(n, tuple(parts) + (0,) * (n - len(parts)))

    @classmethod
    def parse(cls, n: int, text: str) -> YoungDiagram:
        text = text.strip().strip("()")
        return cls.of(n, [int(x) for x in text.split(",") if x.strip()] if text else [])

    @property
    def id(self) -> str:
        return "(" + ",".join(str(x) for x in self.parts if x) + ")"

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.parts if x) or "()"

    @property
    def size(self) -> int:
        return sum(self.parts)

    def boxes(self) -> list[tuple[int, int]]:
        return [(r + 1, c + 1) for r, length in enumerate(self.parts) for c in range(length)]

    def degree_counts(self) -> list[int]:
        """Number of boxes of each degree 1..2n-1 (index 0 is degree 1)."""
        out = [0] * (2 * self.n - 1)
        for r, c in self.boxes():
            out[degree(self.n, r, c) - 1] += 1
        return out


def degree(n: int, r: int, c: int) -> int:
    if not (1 <= r <= n and 1 <= c <= n):
        raise RejectedInput(f"box ({r}, {c}) is outside the {n}x{n} box")
    return n + c - r


def add_box(y: YoungDiagram, k: int) -> YoungDiagram | None:
    """Add the box of degree ``k`` if that gives a diagram in the box; else None."""
    n, p = y.n, list(y.parts)
    for r in range(1, n + 1):
        c = p[r - 1] + 1
        if c > n or n + c - r != k:
            continue
        if r == 1 or p[r - 2] >= c:
            p[r - 1] = c
            return YoungDiagram(n, tuple(p))
    return None


def remove_box(y: YoungDiagram, k: int) -> YoungDiagram | None:
    n, p = y.n, list(y.parts)
    for r in range(1, n + 1):
        c = p[r - 1]
        if c == 0 or n + c - r != k:
            continue
        if r == n or p[r] < c:
            p[r - 1] = c - 1
            return YoungDiagram(n, tuple(p))
    return None


def conjugate(y: YoungDiagram) -> YoungDiagram:
    return YoungDiagram(y.n, tuple(sum(1 for x in y.parts if x >= i) for i in range(1, y.n + 1)))


def all_diagrams(n: int) -> list[YoungDiagram]:
    """Every diagram in the ``n x n`` box, in lexicographic order of parts."""
    def rows(remaining: int, cap: int):
        if remaining == 0:
            yield ()
            return
        for first in range(cap + 1):
            for rest in rows(remaining - 1, first):
                yield (first,) + rest

    return sorted((YoungDiagram(n, p) for p in rows(n, n)), key=lambda y: y.parts)


@lru_cache(maxsize=None)
def self_conjugate_set(n: int) -> tuple[YoungDiagram, ...]:
    return tuple(y for y in all_diagrams(n) if conjugate(y) == y)


def _require_self_conjugate(y: YoungDiagram) -> None:
    if conjugate(y) != y:
        raise RejectedInput(f"{y} is not self-conjugate")


def spin_f(y: YoungDiagram, k: int) -> YoungDiagram | None:
    _require_self_conjugate(y)
    n = y.n
    if not 1 <= k <= n:
        raise RejectedInput(f"node {k} outside 1..{n}")
    if k == n:
        return add_box(y, n)
    z = add_box(y, k)
    return None if z is None else add_box(z, 2 * n - k)


def spin_e(y: YoungDiagram, k: int) -> YoungDiagram | None:
    _require_self_conjugate(y)
    n = y.n
    if not 1 <= k <= n:
        raise RejectedInput(f"node {k} outside 1..{n}")
    if k == n:
        return remove_box(y, n)
    z = remove_box(y, k)
    return None if z is None else remove_box(z, 2 * n - k)


def spin_wt(y: YoungDiagram) -> Weight:
    """``omega_n`` minus the degree-k box counts (k = 1..n) times ``alpha_k``."""
    n = y.n
    counts = y.degree_counts()
    return Weight(tuple(int(k == n) for k in range(1, n + 1)), tuple(counts[:n]))


def _string(y, step, k) -> int:
    m = 0
    while (y := step(y, k)) is not None:
        m += 1
    return m


def spin_cartan(n: int) -> CartanDatum:
    return builtin_fold(f"B{n}").cartan


def build_spin_crystal(n: int) -> CrystalGraph:
    if n < 1:
        raise RejectedInput("n must be at least 1")
    cd = spin_cartan(n)
    elements = self_conjugate_set(n)
    verts, edges = [], []
    for y in elements:
        eps = tuple(_string(y, spin_e, k) for k in range(1, n + 1))
        phi = tuple(_string(y, spin_f, k) for k in range(1, n + 1))
        verts.append(Vertex(y.id, spin_wt(y), eps, phi))
        for k in range(1, n + 1):
            z = spin_f(y, k)
            if z is not None:
                edges.append((y.id, str(k), z.id))
    return CrystalGraph(cd, YoungDiagram.of(n).id, tuple(verts), tuple(edges),
                        tuple(int(k == n) for k in range(1, n + 1)), True)


def build_young_crystal(n: int) -> CrystalGraph:
    """All diagrams in the box as the A_{2n-1} crystal with ``f_k`` adding the degree-k box."""
    cd = cartan_from_quiver(type_a_quiver(2 * n - 1))
    m = 2 * n - 1
    verts, edges = [], []
    for y in all_diagrams(n):
        eps = tuple(_string(y, remove_box, k) for k in range(1, m + 1))
        phi = tuple(_string(y, add_box, k) for k in range(1, m + 1))
        verts.append(Vertex(y.id, Weight(tuple(int(k == n) for k in range(1, m + 1)), tuple(y.degree_counts())),
                            eps, phi))
        for k in range(1, m + 1):
            z = add_box(y, k)
            if z is not None:
                edges.append((y.id, str(k), z.id))
    return CrystalGraph(cd, YoungDiagram.of(n).id, tuple(verts), tuple(edges),
                        tuple(int(k == n) for k in range(1, m + 1)), True)


# ---------------------------------------------------------------------------
# Chevalley generators


@dataclass(frozen=True)
class SpinMatrices:
    n: int
    basis: tuple[YoungDiagram, ...]
    E: tuple[np.ndarray, ...]
    F: tuple[np.ndarray, ...]
    H: tuple[np.ndarray, ...]

    def to_json(self) -> dict:
        return {
            "schema": "crystal-fold/1",
            "n": self.n,
            "basis": [y.id for y in self.basis],
            "E": {str(k + 1): m.tolist() for k, m in enumerate(self.E)},
            "F": {str(k + 1): m.tolist() for k, m in enumerate(self.F)},
            "H": {str(k + 1): m.tolist() for k, m in enumerate(self.H)},
        }


def chevalley_matrices(n: int) -> SpinMatrices:
    """``E_k``/``F_k`` extend the crystal operators linearly; ``H_k`` is diagonal ``<h_k, wt>``."""
    basis = self_conjugate_set(n)
    pos = {y: i for i, y in enumerate(basis)}
    dim = len(basis)
    cd = spin_cartan(n)
    es, fs, hs = [], [], []
    for k in range(1, n + 1):
        e = np.zeros((dim, dim), dtype=np.int64)
        f = np.zeros((dim, dim), dtype=np.int64)
        h = np.zeros((dim, dim), dtype=np.int64)
        for y, col in pos.items():
            up, down = spin_e(y, k), spin_f(y, k)
            if up is not None:
                e[pos[up], col] = 1
            if down is not None:
                f[pos[down], col] = 1
            h[col, col] = spin_wt(y).dynkin_labels(cd)[k - 1]
        es.append(e)
        fs.append(f)
        hs.append(h)
    return SpinMatrices(n, basis, tuple(es), tuple(fs), tuple(hs))


def _br(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def verify_relations(sm: SpinMatrices, cartan: CartanDatum | None = None) -> dict[str, bool]:
    """Exact Chevalley and Serre relations; returns one verdict per relation family."""
    cd = cartan or spin_cartan(sm.n)
    c = cd.matrix
    E, F, H = sm.E, sm.F, sm.H
    r = range(sm.n)
    zero = np.zeros_like(E[0]) if E else np.zeros((1, 1), dtype=np.int64)
    out = {
        "[H,H]=0": all(np.array_equal(_br(H[k], H[l]), zero) for k in r for l in r),
        "[E,F]=delta H": all(np.array_equal(_br(E[k], F[l]), H[k] if k == l else zero) for k in r for l in r),
        "[H,E]=cE": all(np.array_equal(_br(H[k], E[l]), c[k][l] * E[l]) for k in r for l in r),
        "[H,F]=-cF": all(np.array_equal(_br(H[k], F[l]), -c[k][l] * F[l]) for k in r for l in r),
    }

    def serre(X):
        for k in r:
            for l in r:
                if k == l:
                    continue
                m = X[l]
                for _ in range(1 - c[k][l]):
                    m = _br(X[k], m)
                if not np.array_equal(m, zero):
                    return False
        return True

    out["Serre E"] = serre(E)
    out["Serre F"] = serre(F)
    return out


# ---------------------------------------------------------------------------
# quiver representatives


def rep_from_young(y: YoungDiagram, n: int | None = None) -> NakajimaPoint:
    """Canonical point for ``y`` on the A_{2n-1} quiver with ``w = e^n``.

    Boxes of degree k span ``V_k``.  The arrow ``k -> k-1`` moves a box one column
    left; the arrow ``k -> k+1`` moves it one row up, scaled by the orientation
    sign of that arrow so that the moment map vanishes.  ``t`` reads the
    coefficient of box (1, 1).
    """
    n = y.n if n is None else n
    if n != y.n:
        raise RejectedInput("diagram lives in a different box")
    q = type_a_quiver(2 * n - 1)
    by_degree: dict[int, list[tuple[int, int]]] = {k: [] for k in range(1, 2 * n)}
    for r, c in y.boxes():
        by_degree[degree(n, r, c)].append((r, c))
    pos = {box: idx for k, boxes in by_degree.items() for idx, box in enumerate(boxes)}
    dims = {str(k): len(by_degree[k]) for k in range(1, 2 * n)}
    maps = {}
    for h in q.arrows:
        src, tgt = int(q.out(h)), int(q.inc(h))
        mat = [[0] * dims[str(src)] for _ in range(dims[str(tgt)])]
        for (r, c) in by_degree[src]:
            dest = (r - 1, c) if tgt == src + 1 else (r, c - 1)
            if dest in pos:
                mat[pos[dest]][pos[(r, c)]] = q.sign(h) if tgt == src + 1 else 1
        maps[h] = mat
    rep = QuiverRep(q, dims, maps)
    wdims = {str(k): int(k == n) for k in range(1, 2 * n)}
    t = {}
    if dims[str(n)]:
        t[str(n)] = [[1 if box == (1, 1) else 0 for box in by_degree[n]]]
    return NakajimaPoint(rep, wdims, t)


def young_eps(y: YoungDiagram, k: int) -> int:
    """Combinatorial ``eps_k`` on the A_{2n-1} Young crystal: removable degree-k boxes."""
    return _string(y, remove_box, k)
