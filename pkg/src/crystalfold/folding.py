"""Folding crystals along an admissible automorphism.

For an orbit ``I`` of vertices, ``f_I`` applies ``f_i`` once for every ``i`` in
``I``; operators inside one orbit commute because no edge joins orbit-mates.
The subset of a simply-laced crystal generated by the ``f_I`` from its highest
element, with ``eps_I`` the common ``eps_i`` and ``phi_I = eps_I + <h_I, wt>``,
is a crystal for the folded Cartan datum.  The automorphism also permutes the
source crystal; its fixed points are exactly the generated subset.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import permutations
from typing import Sequence

from .crystal import (
    BInfinity,
    CrystalGraph,
    ElementaryElement,
    HighestWeightCrystal,
    Vertex,
    generate_binfinity,
    generate_blambda,
    isomorphic,
    tensor,
    verify_axioms,
)
from .rootdata import (
    Automorphism,
    FoldedDatum,
    InvariantViolation,
    RejectedInput,
    Weight,
    check_admissible,
    pairing,
)


def _apply_all(crystal, b, members: Sequence[str], op: str):
    step = getattr(crystal, op)
    for i in members:
        b = step(b, i)
        if b is None:
            return None
    return b


def _orbit_apply(crystal, b, members: Sequence[str], op: str, check_order: bool):
    out = _apply_all(crystal, b, members, op)
    if check_order and len(members) > 1:
        ref = None if out is None else crystal.key(out)
        for perm in permutations(members):
            other = _apply_all(crystal, b, perm, op)
            if (None if other is None else crystal.key(other)) != ref:
                raise InvariantViolation(
                    f"{op}-operators of orbit {tuple(members)} do not commute at {crystal.key(b)}")
    return out


def orbit_f(crystal, b, fd: FoldedDatum, node: str, check_order: bool = True):
    """``f_I b``: the product of ``f_i`` over the orbit of ``node``, or None."""
    return _orbit_apply(crystal, b, fd.orbit(node), "f", check_order)


def orbit_e(crystal, b, fd: FoldedDatum, node: str, check_order: bool = True):
    return _orbit_apply(crystal, b, fd.orbit(node), "e", check_order)


def permute_vector(a: Automorphism, x: Sequence[int]) -> tuple[int, ...]:
    """``(a.x)_{a(i)} = x_i`` on vertex-indexed vectors."""
    q = a.quiver
    out = [0] * len(x)
    for v in q.vertices:
        out[q.index[a(v)]] = x[q.index[v]]
    return tuple(out)


@dataclass(frozen=True)
class InducedAutomorphism:
    """Permutation of a source crystal graph induced by a quiver automorphism."""

    graph: CrystalGraph
    auto: Automorphism
    sigma: dict[str, str] = field(compare=False)

    @property
    def fixed(self) -> set[str]:
        return {b for b, c in self.sigma.items() if b == c}

    def __call__(self, b: str) -> str:
        return self.sigma[b]


def induced_automorphism(g: CrystalGraph, a: Automorphism) -> InducedAutomorphism:
    """Propagate ``sigma(f_i b) = f_{a(i)} sigma(b)`` from ``sigma(highest) = highest``.

    Requires only a graph automorphism (admissibility is not needed here).  The
    result is checked edge by edge, on weights and on eps/phi, and for having
    order dividing the order of ``a``.
    """
    q = a.quiver
    if tuple(g.cartan.nodes) != q.vertices:
        raise RejectedInput("graph nodes do not match the quiver vertices")
    if g.lam is not None and permute_vector(a, g.lam) != tuple(g.lam):
        raise RejectedInput("highest weight is not invariant under the automorphism")
    sigma = {g.highest: g.highest}
    queue = deque([g.highest])
    while queue:
        b = queue.popleft()
        sb = sigma[b]
        for i in g.nodes:
            c = g.f(b, i)
            if c is None:
                continue
            sc = g.f(sb, a(i))
            if sc is None:
                raise InvariantViolation(f"f_{a(i)} absent at sigma({b}) = {sb} while f_{i} {b} present")
            if c in sigma:
                if sigma[c] != sc:
                    raise InvariantViolation(f"inconsistent propagation at {c}")
            else:
                sigma[c] = sc
                queue.append(c)
    if len(sigma) != len(g) or len(set(sigma.values())) != len(g):
        raise InvariantViolation("propagation did not produce a permutation of the graph")
    idx = g.cartan.index
    for s, i, d in g.edges:
        if g.f(sigma[s], a(i)) != sigma[d]:
            raise InvariantViolation(f"sigma does not intertwine f_{i} on edge {s} -> {d}")
    for v in g.vertices:
        w = g.by_id[sigma[v.id]]
        if w.wt != Weight(permute_vector(a, v.wt.base), permute_vector(a, v.wt.drop)):
            raise InvariantViolation(f"sigma does not permute the weight of {v.id}")
        for i in g.nodes:
            if w.eps[idx[a(i)]] != v.eps[idx[i]] or w.phi[idx[a(i)]] != v.phi[idx[i]]:
                raise InvariantViolation(f"sigma does not permute eps/phi at {v.id}")
    for b in sigma:
        c = b
        for _ in range(a.order):
            c = sigma[c]
        if c != b:
            raise InvariantViolation("sigma^order(a) is not the identity")
    return InducedAutomorphism(g, a, sigma)


def _source_crystal(source, fd: FoldedDatum, mode: str, lam):
    """Normalise ``source`` to an object with the lazy crystal interface."""
    if isinstance(source, (CrystalGraph, BInfinity)):
        return source
    if source == "infinity" or (source is None and mode == "infinity"):
        return BInfinity(fd.source_cartan)
    if source is None and mode == "highest_weight":
        if lam is None:
            raise RejectedInput("highest_weight mode needs a highest weight")
        return HighestWeightCrystal(fd.source_cartan, lam)
    raise RejectedInput(f"cannot use {source!r} as a source crystal")


def folded_crystal(source, fd: FoldedDatum, mode: str = "highest_weight", *, lam: Sequence[int] | None = None,
                   depth: int | None = None, source_depth: int | None = None,
                   sigma: InducedAutomorphism | None = None, source_ref: str = "") -> CrystalGraph:
    """Subset of the source crystal generated by the orbit operators, as a graph over the folded datum.

    ``source`` is a source crystal graph, a lazy source crystal, or None (built
    from ``fd`` and ``lam``; ``lam`` is the a-invariant source highest weight).
    ``depth`` bounds the number of orbit operators applied, ``source_depth`` the
    source height; elements beyond either bound are left out.
    """
    if mode not in ("infinity", "highest_weight"):
        raise RejectedInput(f"unknown mode {mode!r}")
    if not check_admissible(fd.source, fd.auto):
        raise RejectedInput("folding requires an admissible automorphism")
    crystal = _source_crystal(source, fd, mode, lam)
    src_lam = getattr(crystal, "lam", None)
    if src_lam is not None:
        if permute_vector(fd.auto, src_lam) != tuple(src_lam):
            raise RejectedInput("highest weight is not invariant under the automorphism")
    if mode == "highest_weight" and src_lam is None:
        raise RejectedInput("highest_weight mode needs a highest-weight source")
    if mode == "infinity" and src_lam is not None:
        raise RejectedInput("infinity mode needs a B(infinity) source")
    if mode == "infinity" and depth is None and source_depth is None:
        raise RejectedInput("infinity mode needs a depth bound")

    cd = fd.cartan
    nodes = cd.nodes

    def folded_wt(b) -> Weight:
        w = crystal.wt(b)
        return Weight(fd.fold_weight(w.base), fd.fold_weight(w.drop))

    def gamma_height(b) -> int:
        return sum(fd.fold_weight(crystal.wt(b).drop))

    def within(b) -> bool:
        if source_depth is not None and crystal.height(b) > source_depth:
            return False
        return depth is None or gamma_height(b) <= depth

    start = crystal.highest
    seen = {crystal.key(start): start}
    queue = deque([start])
    while queue:
        b = queue.popleft()
        for i in nodes:
            c = orbit_f(crystal, b, fd, i)
            if c is None or not within(c):
                continue
            k = crystal.key(c)
            if k not in seen:
                seen[k] = c
                queue.append(c)
    elements = sorted(seen.values(), key=lambda b: (gamma_height(b), crystal.key(b)))
    keys = set(seen)

    verts, edges = [], []
    for b in elements:
        k = crystal.key(b)
        wt = folded_wt(b)
        eps_row, phi_row = [], []
        for i in nodes:
            vals = {crystal.eps(b, v) for v in fd.orbit(i)}
            if len(vals) != 1:
                raise InvariantViolation(f"eps differs across orbit {fd.orbit(i)} at {k}: {sorted(vals)}")
            e = vals.pop()
            p = e + pairing(cd, i, wt)
            if pairing(fd, i, wt) != pairing(cd, i, wt):
                raise InvariantViolation("orbit-averaged pairing disagrees with the folded Cartan matrix")
            eps_row.append(e)
            phi_row.append(p)
            c = orbit_f(crystal, b, fd, i)
            if c is not None and crystal.key(c) in keys:
                edges.append((k, i, crystal.key(c)))
        verts.append(Vertex(k, wt, tuple(eps_row), tuple(phi_row)))

    lam_folded = fd.fold_weight(src_lam) if src_lam is not None else None
    block = {"orbits": [list(o) for o in fd.orbits], "source_graph_ref": source_ref}
    if sigma is not None:
        block["sigma"] = {b: sigma.sigma[b] for b in sorted(sigma.sigma)}
    complete = mode == "highest_weight" and depth is None and source_depth is None
    return CrystalGraph(cd, crystal.key(start), tuple(verts), tuple(edges), lam_folded, complete, block)


@dataclass(frozen=True)
class FixedReport:
    fixed: frozenset
    generated: frozenset

    @property
    def ok(self) -> bool:
        return self.fixed == self.generated

    @property
    def missing(self) -> frozenset:
        """Fixed but not generated."""
        return self.fixed - self.generated

    @property
    def extra(self) -> frozenset:
        """Generated but not fixed."""
        return self.generated - self.fixed

    def __bool__(self) -> bool:
        return self.ok


def check_fixed_equals_generated(g: CrystalGraph, ia: InducedAutomorphism, fc: CrystalGraph,
                                 depth: int | None = None) -> FixedReport:
    """Compare the sigma-fixed elements of ``g`` with the elements of ``fc``.

    With ``depth`` both sets are cut to source height <= depth.
    """
    def keep(b):
        return depth is None or g.height(b) <= depth

    fixed = frozenset(b for b in ia.fixed if keep(b))
    gen = frozenset(v.id for v in fc.vertices if v.id in g.by_id and keep(v.id))
    stray = {v.id for v in fc.vertices} - set(g.by_id)
    if depth is None and stray:
        raise InvariantViolation(f"folded elements missing from the source graph: {sorted(stray)[:3]}")
    return FixedReport(fixed, gen)


@dataclass
class TargetReport:
    checks: dict[str, bool]
    details: dict[str, str]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def __bool__(self) -> bool:
        return self.ok


def verify_folded_is_target(fc: CrystalGraph, fd: FoldedDatum, mode: str, lam: Sequence[int] | None = None,
                            depth: int | None = None) -> TargetReport:
    """Check a folded crystal against the crystal built directly for the folded datum.

    ``highest_weight``: axioms and isomorphism with B(lam) (``lam`` in folded
    coordinates, default ``fc.lam``).  ``infinity``: axioms, per-weight counts
    against B(infinity) up to folded height ``depth``, and the weight-zero,
    integrality and predecessor conditions characterising B(infinity).
    """
    cd = fd.cartan
    checks: dict[str, bool] = {}
    details: dict[str, str] = {}
    ax = verify_axioms(fc, cd)
    checks["axioms"] = ax.ok
    details["axioms"] = ax.summary()
    zero = (0,) * cd.rank
    if mode == "highest_weight":
        lam = tuple(lam) if lam is not None else fc.lam
        direct = generate_blambda(cd, lam)
        iso = isomorphic(fc, direct)
        checks["isomorphic"] = iso is not None
        details["isomorphic"] = f"bijection of size {len(iso)}" if iso else "no isomorphism"
        top = [v.id for v in fc.vertices if v.wt.drop == zero]
        checks["unique highest weight"] = len(top) == 1
    elif mode == "infinity":
        if depth is None:
            depth = max(sum(v.wt.drop) for v in fc.vertices)
        direct = generate_binfinity(cd, depth)
        mine = Counter(v.wt.drop for v in fc.vertices if sum(v.wt.drop) <= depth)
        ref = Counter(v.wt.drop for v in direct.vertices)
        checks["weight counts"] = mine == ref
        details["weight counts"] = f"{sum(mine.values())} vs {sum(ref.values())} elements up to height {depth}"
        checks["negative root lattice"] = all(
            v.wt.base == zero and all(x >= 0 for x in v.wt.drop) for v in fc.vertices)
        b0 = [v for v in fc.vertices if v.wt.drop == zero]
        checks["unique weight-zero element"] = len(b0) == 1 and b0[0].id == fc.highest
        checks["eps vanishes at b0"] = bool(b0) and all(x == 0 for x in b0[0].eps)
        checks["eps integral"] = all(isinstance(x, int) and x >= 0 for v in fc.vertices for x in v.eps)
        has_pred = {d for _, _, d in fc.edges}
        checks["predecessor exists"] = all(v.id in has_pred for v in fc.vertices if v.id != fc.highest)
    else:
        raise RejectedInput(f"unknown mode {mode!r}")
    return TargetReport(checks, details)


def check_orbit_tensor(fd: FoldedDatum, node: str, levels: Sequence[int] = range(-3, 4)) -> list[str]:
    """Compare ``b_{i1}(n) (x) ... (x) b_{ik}(n)`` over an orbit with the elementary ``b_I(n)``.

    Returns a list of discrepancies (empty when the tensor product behaves as
    the elementary crystal of the orbit).
    """
    src = fd.source_cartan
    orbit = fd.orbit(node)
    problems = []

    def make(n):
        factors = [ElementaryElement(i, n) for i in orbit]
        return factors[0] if len(factors) == 1 else tensor(src, factors)

    def same(x, y):
        return x is not None and y is not None and x == y

    for n in levels:
        b = make(n)
        for i in orbit:
            if b.phi(i) != n or b.eps(i) != -n:
                problems.append(f"n={n}: phi/eps at {i} are {b.phi(i)}/{b.eps(i)}")
        for j in src.nodes:
            if j not in orbit and (b.phi(j) is not None or b.eps(j) is not None):
                problems.append(f"n={n}: node {j} outside the orbit is not -infinity")
        if fd.fold_weight(b.wt(src).drop) != tuple(-n * int(x == node) for x in fd.cartan.nodes):
            problems.append(f"n={n}: weight is not n alpha_I")
        up, down = b, b
        for i in orbit:
            up = None if up is None else up.e(i)
            down = None if down is None else down.f(i)
        if not same(up, make(n + 1)):
            problems.append(f"n={n}: e_I does not raise the level")
        if not same(down, make(n - 1)):
            problems.append(f"n={n}: f_I does not lower the level")
        for other in fd.cartan.nodes:
            if other == node:
                continue
            for j in fd.orbit(other):
                if b.e(j) is not None or b.f(j) is not None:
                    problems.append(f"n={n}: operator at {j} acts on another orbit's tensor")
    return problems
