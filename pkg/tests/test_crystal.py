import dataclasses
import json
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crystalfold.crystal import (
    SCHEMA,
    BInfinity,
    CrystalGraph,
    ElementaryElement,
    HighestWeightCrystal,
    SeqElement,
    TElement,
    character,
    generate_binfinity,
    generate_blambda,
    highest_elements,
    isomorphic,
    seq_e,
    seq_eps,
    seq_f,
    tensor,
    verify_axioms,
)
from crystalfold.rootdata import RejectedInput, Weight, builtin_cartan, freudenthal, kostant_count, weyl_dim

A1, A2, A3 = (builtin_cartan(n) for n in ("A1", "A2", "A3"))


def seq(**kw):
    return SeqElement.from_dict({int(k[1:]): v for k, v in kw.items()})


def test_seq_f_examples():
    zero = SeqElement()
    assert seq_f(A2, zero, "1") == seq(a1=1)
    assert seq_f(A2, seq_f(A2, zero, "2"), "1") == seq(a2=1, a3=1)
    assert seq_f(A2, seq_f(A2, zero, "1"), "2") == seq(a1=1, a2=1)
    b = zero
    for _ in range(5):
        b = seq_f(A1, b, "1")
    assert b == seq(a1=5)


def test_seq_e_examples():
    b = seq(a1=1, a2=1)  # f2 f1 0
    assert seq_eps(A2, b, "1") == 0
    assert seq_e(A2, b, "1") is None
    assert seq_e(A2, b, "2") == seq(a1=1)
    for cd in (A1, A3, builtin_cartan("G2")):
        for i in cd.nodes:
            assert seq_e(cd, SeqElement(), i) is None


def test_seq_ids_round_trip():
    b = seq(a1=2, a4=1)
    assert b.id == "a(1:2,4:1)"
    assert SeqElement.from_id(b.id) == b
    assert SeqElement.from_id("a()") == SeqElement()


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
@settings(max_examples=25, deadline=None)
@given(word=st.lists(st.integers(0, 3), max_size=7))
def test_e_inverts_f(name, word):
    cd = builtin_cartan(name)
    b = SeqElement()
    for k in word:
        i = cd.nodes[k % cd.rank]
        c = seq_f(cd, b, i)
        assert seq_e(cd, c, i) == b
        assert seq_eps(cd, c, i) == seq_eps(cd, b, i) + 1
        b = c


def test_binfinity_examples():
    g = generate_binfinity(A1, 3)
    assert len(g) == 4 and not g.complete
    g = generate_binfinity(A2, 2)
    counts = Counter(v.wt.drop for v in g.vertices)
    assert counts[(1, 1)] == 2
    g = generate_binfinity(A3, 4)
    counts = Counter(v.wt.drop for v in g.vertices)
    assert all(counts[b] == kostant_count(A3, b) for b in counts)
    # coefficients of prod (1 - q^ht)^-1 over the six positive roots
    assert sum(counts.values()) == 1 + 3 + 8 + 17 + 33


def test_blambda_examples():
    g = generate_blambda(A2, (1, 0))
    assert len(g) == 3
    path, b = [], g.highest
    while True:
        nxt = [(i, g.f(b, i)) for i in g.nodes if g.f(b, i)]
        if not nxt:
            break
        assert len(nxt) == 1
        path.append(nxt[0][0])
        b = nxt[0][1]
    assert path == ["1", "2"]

    g = generate_blambda(A1, (0,))
    assert len(g) == 1 and g.f(g.highest, "1") is None

    g = generate_blambda(builtin_cartan("B2"), (0, 1))
    b, labels = g.highest, []
    while any(g.f(b, i) for i in g.nodes):
        i = next(i for i in g.nodes if g.f(b, i))
        labels.append(i)
        b = g.f(b, i)
    assert labels == ["2", "1", "2"]


@pytest.mark.parametrize("name,lam", [("A2", (1, 0)), ("A3", (0, 1, 0)), ("B2", (0, 1)), ("B3", (0, 0, 1)),
                                      ("G2", (0, 1)), ("D4", (0, 1, 0, 0)), ("C3", (0, 1, 0)), ("G2", (1, 0))])
def test_blambda_character_is_freudenthal(name, lam):
    cd = builtin_cartan(name)
    g = generate_blambda(cd, lam)
    assert verify_axioms(g).ok
    assert {w.drop: m for w, m in character(g).items()} == freudenthal(cd, lam)
    assert len(g) == weyl_dim(cd, lam)


def test_unbounded_blambda_rejects_infinite_type():
    from crystalfold.rootdata import CartanDatum
    with pytest.raises(RejectedInput):
        generate_blambda(CartanDatum.from_matrix([[2, -2], [-2, 2]]), (1, 0))


def test_verify_axioms_examples():
    assert verify_axioms(generate_blambda(A2, (1, 0))).ok
    g = generate_blambda(A2, (1, 1))
    bad_v = g.vertices[3]
    corrupted = dataclasses.replace(bad_v, phi=(bad_v.phi[0] + 1,) + bad_v.phi[1:])
    bad = dataclasses.replace(g, vertices=g.vertices[:3] + (corrupted,) + g.vertices[4:])
    rep = verify_axioms(bad)
    assert not rep.ok and len(rep.violations) == 1
    empty = CrystalGraph(A2, "", (), ())
    assert verify_axioms(empty).ok


def test_verify_axioms_flags_bad_edge():
    g = generate_blambda(A2, (1, 0))
    src, i, dst = g.edges[0]
    bad = dataclasses.replace(g, edges=((src, "2" if i == "1" else "1", dst),) + g.edges[1:])
    assert not verify_axioms(bad).ok


def test_isomorphic_examples():
    g = generate_blambda(A2, (1, 0))
    m = isomorphic(g, g)
    assert m == {v.id: v.id for v in g.vertices}
    assert isomorphic(g, generate_blambda(A2, (0, 1))) is None
    from crystalfold.spin import build_spin_crystal
    m = isomorphic(build_spin_crystal(2), generate_blambda(builtin_cartan("B2"), (0, 1)))
    assert m is not None and len(m) == 4


def test_highest_elements():
    g = generate_blambda(A3, (1, 0, 1))
    assert highest_elements(g) == [g.highest]


def test_json_round_trip_and_schema():
    g = generate_blambda(builtin_cartan("G2"), (0, 1))
    data = json.loads(g.dumps())
    assert data["schema"] == SCHEMA
    g2 = CrystalGraph.from_json(data)
    assert g2 == g and g2.dumps() == g.dumps()
    inf = generate_binfinity(A2, 3)
    assert CrystalGraph.from_json(json.loads(inf.dumps())).dumps() == inf.dumps()


def test_output_is_deterministic():
    a = generate_binfinity(builtin_cartan("B2"), 5).dumps()
    b = generate_binfinity(builtin_cartan("B2"), 5).dumps()
    assert a == b
    g = generate_blambda(A2, (1, 0))
    assert g.to_dot() == generate_blambda(A2, (1, 0)).to_dot()
    assert g.to_dot().startswith("digraph")
    assert g.to_table().splitlines()[0].startswith("id")


def test_lazy_crystals_agree_with_graphs():
    b = BInfinity(A2)
    x = b.f(b.f(b.highest, "1"), "2")
    assert b.wt(x) == Weight((0, 0), (1, 1))
    assert b.phi(x, "2") == b.eps(x, "2") + (1 - 2)
    h = HighestWeightCrystal(A2, (1, 0))
    assert h.f(h.highest, "2") is None
    assert h.f(h.highest, "1") is not None


def test_tensor_signature_rule():
    cd = A1
    # b_1(0) (x) T_omega: eps stays 0, phi picks up <h, omega> = 1
    x = tensor(cd, [ElementaryElement("1", 0), TElement(Weight((1,), (0,)))])
    assert x.eps("1") == 0 and x.phi("1") == 1
    # elementary crystal: f lowers the level and keeps phi - eps = <h, wt>
    b = ElementaryElement("1", 0)
    assert b.f("1") == ElementaryElement("1", -1)
    assert b.f("1").phi("1") - b.f("1").eps("1") == -2
    with pytest.raises(RejectedInput):
        tensor(cd, [b])


def test_tensor_acts_left_when_phi_exceeds_eps():
    cd = A1
    left = ElementaryElement("1", 2)   # phi = 2
    right = ElementaryElement("1", -1)  # eps = 1
    t = tensor(cd, [left, right])
    assert t.f("1").left == ElementaryElement("1", 1)
    t = tensor(cd, [ElementaryElement("1", 1), right])  # phi = eps: f acts right, e acts left
    assert t.f("1").right == ElementaryElement("1", -2)
    assert t.e("1").left == ElementaryElement("1", 2)
