"""Command-line front end.

    crystal-fold fold --quiver A3 --auto "1:3,2:2,3:1"
    crystal-fold generate --type B2 --weight 0,1 --emit dot
    crystal-fold fold-crystal --quiver D4 --auto triality --weight center
    crystal-fold verify --fold A5:Bn --weight spin --against direct
    crystal-fold spin --n 3 --emit json
    crystal-fold rep --n 2 --young 2,1

Artifacts go to standard output, or to files under ``--out-dir`` (default
``$CRYSTAL_FOLD_OUT``).  Rejected input exits with status 2 and a JSON error
object on standard error; a failing ``verify`` exits with status 1.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from pathlib import Path

from . import __version__
from .crystal import SCHEMA, CrystalGraph, character, generate_binfinity, generate_blambda, isomorphic, verify_axioms
from .folding import (
    check_fixed_equals_generated,
    check_orbit_tensor,
    folded_crystal,
    induced_automorphism,
    verify_folded_is_target,
)
from .quivergeom import apply_Fa, epsilon_geom, moment_check, nilpotency_check, reps_isomorphic, stability_check
from .rootdata import (
    Automorphism,
    CartanDatum,
    FoldedDatum,
    InvariantViolation,
    Quiver,
    RejectedInput,
    builtin_cartan,
    builtin_quiver,
    cartan_from_quiver,
    flip_automorphism,
    fold,
    fork_swap,
    freudenthal,
    kostant_count,
    triality,
    weyl_dim,
)
from .spin import (
    YoungDiagram,
    build_spin_crystal,
    chevalley_matrices,
    conjugate,
    rep_from_young,
    verify_relations,
    young_eps,
)

OUT_ENV = "CRYSTAL_FOLD_OUT"


def _load_json(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def load_quiver(text: str) -> Quiver:
    if os.path.exists(text):
        return Quiver.from_json(_load_json(text))
    return builtin_quiver(text)


def load_cartan(text: str) -> CartanDatum:
    if os.path.exists(text):
        data = _load_json(text)
        if "matrix" in data:
            return CartanDatum.from_json(data)
        return cartan_from_quiver(Quiver.from_json(data))
    return builtin_cartan(text)


_NAMED_AUTOS = {"flip": flip_automorphism, "triality": triality, "fork": fork_swap,
                "bn": flip_automorphism, "g2": triality, "cn": fork_swap}


def load_automorphism(q: Quiver, text: str) -> Automorphism:
    key = text.strip().lower()
    if key in ("identity", "id"):
        return Automorphism.identity(q)
    if key in _NAMED_AUTOS:
        return _NAMED_AUTOS[key](q)
    if os.path.exists(text):
        return Automorphism.from_mapping(q, _load_json(text)["vertex_map"])
    try:
        mapping = dict(part.split(":") for part in text.split(",") if part.strip())
    except ValueError:
        raise RejectedInput(f"cannot parse automorphism {text!r}") from None
    return Automorphism.from_mapping(q, {k.strip(): v.strip() for k, v in mapping.items()})


def parse_fold_arg(text: str) -> FoldedDatum:
    """``A5:Bn``, ``D4:G2``, ``D5:Cn`` or ``<quiver>:<automorphism>``."""
    if ":" not in text:
        raise RejectedInput(f"fold argument {text!r} must look like QUIVER:AUTOMORPHISM")
    qs, auto = text.split(":", 1)
    q = load_quiver(qs)
    return fold(q, load_automorphism(q, auto))


def parse_weight(text: str | None, rank: int, *, quiver: Quiver | None = None,
                 cartan: CartanDatum | None = None) -> tuple[int, ...]:
    """Comma list, or ``spin`` (middle vertex of A_{2n-1} / last node of B_n) or ``center`` (D_n branch node)."""
    if text is None:
        raise RejectedInput("a highest weight is required (--weight)")
    key = text.strip().lower()
    if key == "spin":
        if quiver is not None:
            if len(quiver.vertices) % 2 == 0:
                raise RejectedInput("spin weight needs A_{2n-1}")
            mid = len(quiver.vertices) // 2
            return tuple(int(k == mid) for k in range(rank))
        return tuple(int(k == rank - 1) for k in range(rank))
    if key == "center":
        if rank < 4:
            raise RejectedInput("center weight needs D_n")
        return tuple(int(k == rank - 3) for k in range(rank))
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise RejectedInput(f"cannot parse weight {text!r}") from None
    if len(vals) != rank:
        raise RejectedInput(f"weight {text!r} has {len(vals)} entries, expected {rank}")
    return vals


def render(g: CrystalGraph, emit: str) -> str:
    if emit == "json":
        return g.dumps()
    if emit == "dot":
        return g.to_dot()
    if emit == "table":
        return g.to_table()
    raise RejectedInput(f"unknown output format {emit!r}")


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, ensure_ascii=False) + "\n"


class Emitter:
    def __init__(self, out_dir: str | None):
        self.out_dir = Path(out_dir) if out_dir else None
        self.written: list[str] = []

    def emit(self, name: str, text: str) -> None:
        if self.out_dir is None:
            sys.stdout.write(text)
            return
        self.out_dir.mkdir(parents=True, exist_ok=True)
        path = self.out_dir / name
        path.write_text(text, encoding="utf-8")
        self.written.append(str(path))
        sys.stdout.write(f"wrote {path}\n")


_EXT = {"json": "json", "dot": "dot", "table": "tsv"}


def cmd_fold(args, out: Emitter) -> int:
    q = load_quiver(args.quiver)
    fd = fold(q, load_automorphism(q, args.auto))
    data = {"schema": SCHEMA, "cartan": fd.cartan.to_json(), "orbits": [list(o) for o in fd.orbits],
            "form": [list(r) for r in fd.form], "quiver": q.to_json(), "automorphism": fd.auto.to_json()}
    out.emit("fold.json", _dump(data))
    return 0


def cmd_generate(args, out: Emitter) -> int:
    cd = load_cartan(args.type)
    if args.infinity:
        g = generate_binfinity(cd, args.depth if args.depth is not None else 4)
        name = "binfinity"
    else:
        lam = parse_weight(args.weight, cd.rank, cartan=cd)
        g = generate_blambda(cd, lam, args.depth)
        name = "blambda"
    out.emit(f"{name}.{_EXT[args.emit]}", render(g, args.emit))
    return 0


def cmd_fold_crystal(args, out: Emitter) -> int:
    q = load_quiver(args.quiver)
    fd = fold(q, load_automorphism(q, args.auto))
    src = cartan_from_quiver(q)
    if args.infinity:
        depth = args.depth if args.depth is not None else 4
        source = generate_binfinity(src, depth)
        ia = induced_automorphism(source, fd.auto)
        fc = folded_crystal(source, fd, "infinity", source_depth=depth, sigma=ia,
                            source_ref=f"{args.quiver} B(infinity) height<={depth}")
    else:
        lam = parse_weight(args.weight, len(q.vertices), quiver=q)
        source = generate_blambda(src, lam)
        ia = induced_automorphism(source, fd.auto)
        fc = folded_crystal(source, fd, "highest_weight", sigma=ia,
                            source_ref=f"{args.quiver} B({','.join(map(str, lam))})")
    out.emit(f"folded.{_EXT[args.emit]}", render(fc, args.emit))
    return 0


def _line(name: str, ok: bool, detail: str = "") -> str:
    return f"{'PASS' if ok else 'FAIL'}\t{name}\t{detail}\n"


def verify_pipeline(fd: FoldedDatum, lam_source: tuple[int, ...] | None, depth: int | None,
                    against: str = "direct") -> tuple[list[tuple[str, bool, str]], dict[str, str]]:
    """Run the full report chain for one fold; returns result rows and emitted artifacts."""
    rows: list[tuple[str, bool, str]] = []
    artifacts: dict[str, str] = {}
    src = fd.source_cartan
    cd = fd.cartan
    for node in cd.nodes:
        probs = check_orbit_tensor(fd, node)
        rows.append((f"orbit tensor {node}", not probs, "; ".join(probs[:2])))
    if lam_source is None:
        depth = 6 if depth is None else depth
        source = generate_binfinity(src, depth)
        rows.append(("source axioms", verify_axioms(source).ok, verify_axioms(source).summary()))
        ia = induced_automorphism(source, fd.auto)
        fc = folded_crystal(source, fd, "infinity", source_depth=depth, sigma=ia,
                            source_ref=f"B(infinity) height<={depth}")
        fixed = check_fixed_equals_generated(source, ia, fc, depth)
        rows.append(("fixed = generated", fixed.ok, f"{len(fixed.fixed)} fixed, {len(fixed.generated)} generated"))
        fd_gamma = folded_crystal(None, fd, "infinity", depth=depth)
        rep = verify_folded_is_target(fd_gamma, fd, "infinity", depth=depth)
        for k, v in rep.checks.items():
            rows.append((f"target {k}", v, rep.details.get(k, "")))
        if cd.is_finite_type:
            counts = Counter(v.wt.drop for v in fd_gamma.vertices)
            bad = [b for b in counts if counts[b] != kostant_count(cd, b)]
            rows.append(("kostant oracle", not bad, f"{len(counts)} weights"))
        artifacts["folded.json"] = fc.dumps()
        return rows, artifacts

    source = generate_blambda(src, lam_source)
    rows.append(("source axioms", verify_axioms(source).ok, verify_axioms(source).summary()))
    ia = induced_automorphism(source, fd.auto)
    fc = folded_crystal(source, fd, "highest_weight", sigma=ia, source_ref=f"B({','.join(map(str, lam_source))})")
    ax = verify_axioms(fc)
    rows.append(("folded axioms", ax.ok, ax.summary()))
    fixed = check_fixed_equals_generated(source, ia, fc)
    rows.append(("fixed = generated", fixed.ok, f"{len(fixed.fixed)} fixed, {len(fixed.generated)} generated"))
    lam = fc.lam
    if cd.is_finite_type:
        fr = freudenthal(cd, lam)
        ch = {w.drop: m for w, m in character(fc).items()}
        rows.append(("freudenthal character", ch == fr, f"{sum(fr.values())} = weyl_dim {weyl_dim(cd, lam)}"))
    if against == "direct":
        rep = verify_folded_is_target(fc, fd, "highest_weight")
        for k, v in rep.checks.items():
            rows.append((f"target {k}", v, rep.details.get(k, "")))
    letter, nn = _b_from_a(fd)
    if letter and lam == tuple(int(k == nn - 1) for k in range(nn)):
        sc = build_spin_crystal(nn)
        rows.append(("spin crystal axioms", verify_axioms(sc).ok, f"{len(sc)} elements"))
        iso = isomorphic(sc, fc)
        rows.append(("spin crystal = folded", iso is not None, f"{len(iso) if iso else 0} matched"))
        rel = verify_relations(chevalley_matrices(nn), cd)
        rows.append(("chevalley relations", all(rel.values()), ", ".join(k for k, v in rel.items() if not v)))
        artifacts["spin.json"] = sc.dumps()
    artifacts["folded.json"] = fc.dumps()
    return rows, artifacts


def _b_from_a(fd: FoldedDatum) -> tuple[str | None, int]:
    """Detect the A_{2n-1} -> B_n flip so the Young-diagram checks can join the chain."""
    q = fd.source
    m = len(q.vertices)
    if m % 2 == 0 or q != builtin_quiver(f"A{m}"):
        return None, 0
    if fd.auto.mapping != flip_automorphism(q).mapping:
        return None, 0
    return "B", (m + 1) // 2


def cmd_verify(args, out: Emitter) -> int:
    fd = parse_fold_arg(args.fold)
    lam = None if args.infinity else parse_weight(args.weight, len(fd.source.vertices), quiver=fd.source)
    rows, artifacts = verify_pipeline(fd, lam, args.depth, args.against)
    if args.emit == "json":
        report = {"schema": SCHEMA, "fold": args.fold, "cartan": fd.cartan.to_json(),
                  "results": [{"check": n, "pass": ok, "detail": d} for n, ok, d in rows]}
        out.emit("report.json", _dump(report))
    else:
        out.emit("report.tsv", "".join(_line(n, ok, d) for n, ok, d in rows))
    if out.out_dir is not None:
        for name, text in artifacts.items():
            out.emit(name, text)
    return 0 if all(ok for _, ok, _ in rows) else 1


def cmd_spin(args, out: Emitter) -> int:
    if args.emit == "matrices":
        out.emit(f"spin{args.n}_matrices.json", _dump(chevalley_matrices(args.n).to_json()))
        return 0
    out.emit(f"spin{args.n}.{_EXT[args.emit]}", render(build_spin_crystal(args.n), args.emit))
    return 0


def cmd_rep(args, out: Emitter) -> int:
    y = YoungDiagram.parse(args.n, args.young)
    p = rep_from_young(y)
    q = p.rep.quiver
    a = flip_automorphism(q)
    data = p.to_json()
    data["schema"] = SCHEMA
    data["young"] = str(y)
    data["checks"] = {
        "moment": all(moment_check(p).values()),
        "nilpotent": nilpotency_check(p),
        "stable": stability_check(p),
        "epsilon_geom": {v: epsilon_geom(p, v) for v in q.vertices},
        "epsilon_comb": {v: young_eps(y, int(v)) for v in q.vertices},
        "Fa_is_conjugate": reps_isomorphic(apply_Fa(p, a), rep_from_young(conjugate(y))),
    }
    out.emit(f"rep_{str(y).replace(',', '_')}.json", _dump(data))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="crystal-fold", description=__doc__.split("\n\n")[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--out-dir", default=os.environ.get(OUT_ENV),
                    help=f"write artifacts into this directory (default ${OUT_ENV})")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fold", help="fold a quiver along an automorphism into a Cartan datum")
    p.add_argument("--quiver", required=True, help="A<n>, D<n> or a quiver JSON file")
    p.add_argument("--auto", required=True, help="identity, flip, triality, fork, 'v:w,...' or a JSON file")
    p.set_defaults(func=cmd_fold)

    p = sub.add_parser("generate", help="generate B(lambda) or a truncation of B(infinity)")
    p.add_argument("--type", required=True, help="A<n>, B<n>, C<n>, D<n>, G2 or a Cartan/quiver JSON file")
    p.add_argument("--weight", help="highest weight as 'a,b,...', 'spin' or 'center'")
    p.add_argument("--infinity", action="store_true")
    p.add_argument("--depth", type=_nonneg)
    p.add_argument("--emit", choices=["json", "dot", "table"], default="json")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("fold-crystal", help="fold a simply-laced crystal along an automorphism")
    p.add_argument("--quiver", required=True)
    p.add_argument("--auto", required=True)
    p.add_argument("--weight")
    p.add_argument("--infinity", action="store_true")
    p.add_argument("--depth", type=_nonneg)
    p.add_argument("--emit", choices=["json", "dot", "table"], default="json")
    p.set_defaults(func=cmd_fold_crystal)

    p = sub.add_parser("verify", help="run the verification chain for one fold")
    p.add_argument("--fold", required=True, help="QUIVER:AUTO, e.g. A5:Bn, D4:G2, A3:1:3,3:1")
    p.add_argument("--weight")
    p.add_argument("--infinity", action="store_true")
    p.add_argument("--depth", type=_nonneg)
    p.add_argument("--against", choices=["direct", "none"], default="direct")
    p.add_argument("--emit", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spin", help="spin crystal of B_n on self-conjugate Young diagrams")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--emit", choices=["json", "dot", "table", "matrices"], default="json")
    p.set_defaults(func=cmd_spin)

    p = sub.add_parser("rep", help="canonical quiver representation of a Young diagram, with checks")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--young", required=True, help="partition, e.g. 2,1")
    p.set_defaults(func=cmd_rep)
    return ap


def _nonneg(text: str) -> int:
    val = int(text)
    if val < 0:
        raise argparse.ArgumentTypeError("depth must be nonnegative")
    return val


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = Emitter(args.out_dir)
    try:
        return args.func(args, out)
    except RejectedInput as exc:
        sys.stderr.write(json.dumps({"schema": SCHEMA, "error": "rejected_input", "message": str(exc)}) + "\n")
        return 2
    except InvariantViolation as exc:
        sys.stderr.write(json.dumps({"schema": SCHEMA, "error": "invariant_violation", "message": str(exc)}) + "\n")
        return 3
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        sys.stderr.write(json.dumps({"schema": SCHEMA, "error": "io_error", "message": str(exc)}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
