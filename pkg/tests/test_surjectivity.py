import json

import pytest
from hypothesis import given, settings, strategies as st

from wonderlat.catalog import catalog, model
from wonderlat.lattice import LatticeError, add, below, is_low_triple
from wonderlat.surjectivity import (
    LeafOracle,
    closure_necessity_check,
    degeneracy_flag,
    edges_decrease,
    fundamental_pairs,
    induced_colors,
    lemma_b_constant,
    reduce_triple,
    triple_measure,
    verify_multiplication,
)

ENGINE_LATTICES = ["model:A5", "model:B4", "model:C4", "model:D5", "model:F4", "model:G2",
                   "model:E6", "comodel:A4", "comodel:D5", "comodel:E6", "bd:11,4", "caseV"]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ENGINE_LATTICES), st.data())
def test_reduction_trees_decrease_and_end_low(sel, data):
    L = catalog(sel)
    D, E = data.draw(st.sampled_from(list(fundamental_pairs(L))))
    F, _ = data.draw(st.sampled_from(below(add(D, E), L)))
    tree = reduce_triple(D, E, F, L)
    assert edges_decrease(tree, L)
    for leaf in tree.leaves():
        assert leaf.step in ("trivial", "leaf")
        if leaf.step == "leaf":
            assert is_low_triple(leaf.D, leaf.E, leaf.F, L)
            assert triple_measure(leaf.D, leaf.E, leaf.F, L)[1] <= lemma_b_constant(L)


@pytest.mark.parametrize("sel", ["model:A4", "model:A6", "model:D5", "model:D7"])
def test_model_a_and_d_are_surjective(sel):
    L = catalog(sel)
    oracle = LeafOracle()
    for D, E in fundamental_pairs(L):
        cert = verify_multiplication(D, E, L, oracle)
        assert cert.verdict == "surjective", cert.dumps(L)[:500]
        assert not cert.open_leaves


def test_odd_orthogonal_counterexample():
    L = catalog("so_odd:4")
    D2 = L.color(1)
    cert = verify_multiplication(D2, D2, L)
    assert cert.verdict == "not-surjective"
    assert [v.triple for v in cert.failing] == [(D2, D2, L.color(0))]
    assert cert.failing[0].status == "multiplicity-fail"


def test_certificate_is_byte_stable_across_threads():
    L = catalog("model:D6")
    D, E = L.color(2), L.color(2)
    one = verify_multiplication(D, E, L, LeafOracle(), threads=1).dumps(L)
    four = verify_multiplication(D, E, L, LeafOracle(), threads=4).dumps(L)
    assert one == four
    assert json.loads(one)["schema_version"] == 1


def test_zero_factor_shortcut():
    L = model("A", 3)
    cert = verify_multiplication(L.zero(), L.color(0), L)
    assert (cert.verdict, cert.shortcut) == ("surjective", "zero factor")


def test_rejects_negative_divisors():
    L = model("A", 3)
    with pytest.raises(LatticeError):
        verify_multiplication((-1, 0, 0), L.color(0), L)


def test_lowered_cap_is_inconclusive_not_failing():
    L = catalog("comodel:E8")
    cert = verify_multiplication(L.color(4), L.color(7), L, LeafOracle(cap=10))
    assert cert.verdict in ("surjective", "inconclusive")
    assert not cert.failing


def test_closure_refutes_sp8_triple():
    sym, clo = catalog("sp8_symmetric"), catalog("sp8_closure")
    D2 = sym.color(0)
    assert closure_necessity_check(D2, D2, D2, sym, sym)
    assert not closure_necessity_check(D2, D2, D2, sym, clo)


def test_closure_check_needs_matching_colors():
    with pytest.raises(LatticeError):
        closure_necessity_check((1, 0), (1, 0), (1, 0), catalog("sp8_symmetric"), model("A", 2))


@pytest.mark.parametrize("sel,flag", [("sl2_torus", True), ("comodel:E6", True),
                                      ("model:A4", False), ("model:G2", False),
                                      ("so_odd:3", False), ("caseV", False)])
def test_degeneracy_flag(sel, flag):
    assert degeneracy_flag(catalog(sel)) is flag


def test_induced_colors_of_the_model_cover_everything():
    L = model("A", 4)
    assert induced_colors(L) == frozenset(range(L.m))
