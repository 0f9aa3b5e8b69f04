import json

import pytest

from crystalfold.quivergeom import (
    NakajimaPoint,
    QuiverRep,
    apply_Fa,
    epsilon_geom,
    moment_check,
    nilpotency_check,
    reps_isomorphic,
    stability_check,
)
from crystalfold.rootdata import Automorphism, RejectedInput, builtin_quiver, flip_automorphism
from crystalfold.spin import YoungDiagram, all_diagrams, conjugate, rep_from_young, young_eps

A2 = builtin_quiver("A2")
A3 = builtin_quiver("A3")


def arrow(q, u, v):
    return next(h for h in q.arrows if q.out(h) == u and q.inc(h) == v)


def Y(n, text=""):
    return YoungDiagram.parse(n, text)


def test_zero_rep_checks():
    r = QuiverRep(A3, {"1": 1, "2": 2, "3": 1})
    assert all(moment_check(r).values())
    assert nilpotency_check(r)
    p = NakajimaPoint(r, {"2": 1})
    assert [epsilon_geom(p, v) for v in "123"] == [1, 2, 1]


def test_moment_on_omega_only():
    h = arrow(A3, "1", "2")
    assert A3.in_orientation(h)
    r = QuiverRep(A3, {"1": 1, "2": 1, "3": 1}, {h: [[3]], arrow(A3, "3", "2"): [[2]]})
    assert all(moment_check(r).values())


def test_moment_detects_nonzero():
    r = QuiverRep(A2, {"1": 1, "2": 1}, {arrow(A2, "1", "2"): [[1]], arrow(A2, "2", "1"): [[1]]})
    assert not all(moment_check(r).values())


def test_nilpotency_examples():
    r = QuiverRep(A2, {"1": 1, "2": 1}, {arrow(A2, "1", "2"): [[1]]})
    assert nilpotency_check(r)
    cyc = QuiverRep(A2, {"1": 1, "2": 1}, {arrow(A2, "1", "2"): [[1]], arrow(A2, "2", "1"): [[1]]})
    assert not nilpotency_check(cyc)


def test_young_rep_21():
    p = rep_from_young(Y(2, "2,1"))
    assert p.rep.dims == {"1": 1, "2": 1, "3": 1}
    assert all(moment_check(p).values()) and nilpotency_check(p) and stability_check(p)
    assert [epsilon_geom(p, v) for v in "123"] == [1, 0, 1]


def test_young_rep_empty_and_one_box():
    p = rep_from_young(Y(2))
    assert sum(p.rep.dims.values()) == 0 and stability_check(p)
    assert all(epsilon_geom(p, v) == 0 for v in "123")
    p = rep_from_young(Y(2, "1"))
    assert p.rep.dims == {"1": 0, "2": 1, "3": 0}
    assert epsilon_geom(p, "2") == 1 and stability_check(p)


def test_stability_one_box():
    r = QuiverRep(A3, {"2": 1})
    assert stability_check(NakajimaPoint(r, {"2": 1}, {"2": [[1]]}))
    assert not stability_check(NakajimaPoint(r, {"2": 1}, {"2": [[0]]}))


def test_stability_on_2x2_box():
    for y in all_diagrams(2):
        assert stability_check(rep_from_young(y))


def test_apply_fa_examples():
    p = rep_from_young(Y(2, "2"))
    ident = apply_Fa(p, Automorphism.identity(A3))
    assert ident.to_json() == p.to_json()
    a = flip_automorphism(A3)
    img = apply_Fa(p.rep, a)
    assert img.dims == rep_from_young(Y(2, "1,1")).rep.dims
    for v in "123":
        assert epsilon_geom(apply_Fa(p, a), v) == epsilon_geom(p, a(v))


def test_apply_fa_needs_invariant_w():
    r = QuiverRep(A3, {"1": 1})
    with pytest.raises(RejectedInput):
        apply_Fa(NakajimaPoint(r, {"1": 1}), flip_automorphism(A3))


def test_reps_isomorphic_examples():
    p = rep_from_young(Y(2, "2,1"))
    assert reps_isomorphic(p, p)
    assert not reps_isomorphic(rep_from_young(Y(2, "2")), rep_from_young(Y(2, "1,1")))
    a = flip_automorphism(builtin_quiver("A5"))
    ds = all_diagrams(3)
    assert len(ds) == 20
    for y in ds:
        assert reps_isomorphic(apply_Fa(rep_from_young(y), a), rep_from_young(conjugate(y)))


def test_reps_isomorphic_sees_ranks():
    h = arrow(A2, "1", "2")
    r0 = QuiverRep(A2, {"1": 1, "2": 1})
    r1 = QuiverRep(A2, {"1": 1, "2": 1}, {h: [[5]]})
    assert not reps_isomorphic(r0, r1)
    assert reps_isomorphic(r1, QuiverRep(A2, {"1": 1, "2": 1}, {h: [[-2]]}))


def test_reps_isomorphic_type_a_only():
    q = builtin_quiver("D4")
    r = QuiverRep(q, {})
    with pytest.raises(RejectedInput):
        reps_isomorphic(r, r)


def test_epsilon_matches_combinatorics_n3():
    for y in all_diagrams(3):
        p = rep_from_young(y)
        for k in range(1, 6):
            assert epsilon_geom(p, str(k)) == young_eps(y, k)


def test_shape_validation():
    with pytest.raises(RejectedInput):
        QuiverRep(A2, {"1": 1, "2": 1}, {arrow(A2, "1", "2"): [[1, 0]]})
    with pytest.raises(RejectedInput):
        QuiverRep(A2, {"1": -1})


def test_point_json_round_trip():
    p = rep_from_young(Y(3, "3,2,1"))
    text = json.dumps(p.to_json(), sort_keys=True)
    back = NakajimaPoint.from_json(json.loads(text))
    assert json.dumps(back.to_json(), sort_keys=True) == text
    assert reps_isomorphic(back, p)
