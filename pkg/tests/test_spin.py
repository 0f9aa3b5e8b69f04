import json
from math import comb

import numpy as np
import pytest

from crystalfold.crystal import CrystalGraph, generate_blambda, isomorphic, verify_axioms
from crystalfold.rootdata import RejectedInput, Weight, builtin_cartan
from crystalfold.spin import (
    YoungDiagram,
    add_box,
    all_diagrams,
    build_spin_crystal,
    build_young_crystal,
    chevalley_matrices,
    conjugate,
    degree,
    remove_box,
    self_conjugate_set,
    spin_cartan,
    spin_e,
    spin_f,
    spin_wt,
    verify_relations,
    young_eps,
)


def Y(n, text=""):
    return YoungDiagram.parse(n, text)


def test_degree_examples():
    for n in range(1, 6):
        assert degree(n, 1, 1) == n
        for r in range(1, n + 1):
            for c in range(1, n + 1):
                assert 1 <= degree(n, r, c) <= 2 * n - 1
                assert degree(n, c, r) == 2 * n - degree(n, r, c)
    assert degree(2, 2, 1) == 1 and degree(2, 1, 2) == 3


def test_add_remove_examples():
    assert add_box(Y(3), 3) == Y(3, "1")
    assert add_box(Y(3), 2) is None
    assert add_box(Y(2, "1"), 1) == Y(2, "1,1")
    assert add_box(Y(2, "1"), 3) == Y(2, "2")
    for k in range(1, 4):
        assert remove_box(Y(2), k) is None
    assert add_box(Y(2, "2,2"), 2) is None


def test_conjugate_and_self_conjugate_set():
    assert conjugate(Y(2, "2")) == Y(2, "1,1")
    assert conjugate(Y(3, "3,1")) == Y(3, "2,1,1")
    assert [y.id for y in self_conjugate_set(2)] == ["()", "(1)", "(2,1)", "(2,2)"]
    assert len(self_conjugate_set(3)) == 8


def test_all_diagrams_count():
    for n in range(1, 7):
        assert len(all_diagrams(n)) == comb(2 * n, n)


def test_young_diagram_validation():
    with pytest.raises(RejectedInput):
        YoungDiagram.of(2, [1, 2])
    with pytest.raises(RejectedInput):
        YoungDiagram.of(2, [3])
    with pytest.raises(RejectedInput):
        YoungDiagram.of(2, [1, 1, 1])


def test_spin_operator_trace_n2():
    y = Y(2)
    assert spin_f(y, 2) == Y(2, "1")
    assert spin_f(Y(2, "1"), 1) == Y(2, "2,1")
    assert spin_f(Y(2, "2,1"), 2) == Y(2, "2,2")
    assert all(spin_f(Y(2, "2,2"), k) is None for k in (1, 2))
    assert spin_wt(y) == Weight((0, 1), (0, 0))
    assert all(spin_e(y, k) is None for k in (1, 2))
    assert spin_e(Y(2, "2,1"), 1) == Y(2, "1")


def test_spin_operators_need_self_conjugate():
    with pytest.raises(RejectedInput):
        spin_f(Y(2, "2"), 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_build_spin_crystal_small(n):
    g = build_spin_crystal(n)
    assert len(g) == 2 ** n
    assert verify_axioms(g).ok
    assert g.highest == "()"
    if n == 3:
        assert isomorphic(g, generate_blambda(builtin_cartan("B3"), (0, 0, 1))) is not None


def test_spin_n2_is_chain():
    g = build_spin_crystal(2)
    assert sorted((s, i, d) for s, i, d in g.edges) == sorted(
        [("()", "2", "(1)"), ("(1)", "1", "(2,1)"), ("(2,1)", "2", "(2,2)")])


def test_young_crystal_is_a_crystal():
    g = build_young_crystal(2)
    assert len(g) == 6 and verify_axioms(g).ok


def test_chevalley_n1_is_sl2_triple():
    sm = chevalley_matrices(1)
    assert np.array_equal(sm.E[0], [[0, 1], [0, 0]])
    assert np.array_equal(sm.F[0], [[0, 0], [1, 0]])
    assert np.array_equal(sm.H[0], [[1, 0], [0, -1]])


@pytest.mark.parametrize("n", [2, 4])
def test_chevalley_relations(n):
    sm = chevalley_matrices(n)
    assert sm.E[0].shape == (2 ** n, 2 ** n)
    assert all(verify_relations(sm, spin_cartan(n)).values())


def test_relations_detect_wrong_cartan():
    sm = chevalley_matrices(2)
    rep = verify_relations(sm, builtin_cartan("A2"))
    assert not all(rep.values())


def test_matrices_json():
    data = chevalley_matrices(2).to_json()
    assert data["schema"] == "crystal-fold/1" and data["basis"][0] == "()"
    assert json.loads(json.dumps(data)) == data


def test_spin_json_round_trip():
    g = build_spin_crystal(3)
    assert CrystalGraph.from_json(json.loads(g.dumps())).dumps() == g.dumps()


def test_young_eps():
    assert [young_eps(Y(2, "2,1"), k) for k in (1, 2, 3)] == [1, 0, 1]
    assert [young_eps(Y(2), k) for k in (1, 2, 3)] == [0, 0, 0]
