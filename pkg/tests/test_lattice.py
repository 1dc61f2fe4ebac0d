import pytest
from hypothesis import assume, given, settings, strategies as st

from wonderlat.catalog import catalog, model, orbit_family_bd
from wonderlat.lattice import (
    LatticeError,
    add,
    below,
    brute_force_covering_differences,
    check_lattice,
    covering_differences,
    distinguished_subsets,
    height,
    is_distinguished,
    is_faithful,
    is_low_triple,
    is_minuscule,
    localization,
    low_fundamental_triples,
    nonneg,
    positive_part,
    quotient,
    sigma_leq,
)

SMALL = ["model:A3", "model:A4", "model:B3", "model:C3", "model:D4", "model:D5", "model:G2",
         "model:F4", "bd:11,4", "caseV"]
EVERYTHING = SMALL + ["model:E6", "model:E7", "model:E8", "comodel:A5", "comodel:E6",
                      "comodel:E8", "caseX", "so_odd:4", "sp8_symmetric", "sp8_closure",
                      "sl2_torus", "induced_comodel:E8", "trivial:B3"]


@pytest.mark.parametrize("sel", EVERYTHING)
def test_catalog_entries_are_consistent(sel):
    assert check_lattice(catalog(sel)) == []


@pytest.mark.parametrize("sel", ["model:A3", "model:B3", "model:C3", "model:D4", "model:G2",
                                 "bd:9,3", "caseX"])
def test_covering_differences_match_brute_force(sel):
    L = catalog(sel)
    depth = 4
    fast = {g for g in covering_differences(L) if sum(g) <= depth}
    slow = {g for g in brute_force_covering_differences(L, depth)
            if height(positive_part(L.embed(g))) <= 4}
    assert fast == slow


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_sigma_order_witnesses(sel, data):
    L = catalog(sel)
    D = tuple(data.draw(st.lists(st.integers(0, 2), min_size=L.m, max_size=L.m)))
    g = tuple(data.draw(st.lists(st.integers(0, 2), min_size=L.n, max_size=L.n)))
    X = add(D, L.embed(g))
    assume(nonneg(X))
    assert sigma_leq(D, X, L) == g
    found = dict(below(X, L))
    assert found[D] == g
    for F, gamma in found.items():
        assert add(F, L.embed(gamma)) == X


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_minuscule_means_nothing_below(sel, data):
    L = catalog(sel)
    D = tuple(data.draw(st.lists(st.integers(0, 2), min_size=L.m, max_size=L.m)))
    assume(any(D))
    others = [F for F, _ in below(D, L) if F != D]
    assert is_minuscule(D, L) == (not others)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_low_triples_are_low(sel, data):
    L = catalog(sel)
    triples = low_fundamental_triples(L)
    assume(triples)
    D, E, F = data.draw(st.sampled_from(triples))
    assert is_low_triple(D, E, F, L)


def test_distinguished_subsets_of_c4():
    L = model("C", 4)
    got = {frozenset(L.colors[d] for d in s) for s in distinguished_subsets(L)}
    assert frozenset({"D1", "D3"}) in got
    assert all(is_distinguished(s, L) for s in distinguished_subsets(L))
    assert not is_distinguished({1}, L)


def test_c4_quotient_is_the_symmetric_sp8_lattice():
    """Quotient of the C4 model by {D1, D3} against the hand-built Sp(8) lattice."""
    Q = quotient(model("C", 4), {0, 2})
    S = catalog("sp8_symmetric")
    assert Q.colors == S.colors
    assert sorted(zip(*Q.pairing)) == sorted(zip(*S.pairing))
    assert sorted(Q.expansions) == sorted(S.expansions)
    assert Q.weight_map == S.weight_map


def test_quotient_needs_distinguished_subset():
    with pytest.raises(LatticeError):
        quotient(model("C", 4), {1})


def test_faithful_on_non_strict_lattice_raises():
    with pytest.raises(LatticeError):
        is_faithful((1, 1), catalog("sl2_torus"))


def test_localization_drops_spherical_roots():
    L = model("D", 6)
    loc = localization(L, [2])
    assert loc.n == L.n - 1 and loc.colors == L.colors


def test_c_type_d2_is_a_sum_of_spherical_roots():
    L = model("C", 5)
    assert sigma_leq(L.zero(), L.color(1), L) == (1,) * L.n


@pytest.mark.parametrize("k,s", [(9, 3), (11, 4), (14, 5), (17, 7)])
def test_bd_lattice_shapes(k, s):
    L = orbit_family_bd(k, s)
    assert (L.m, L.n) == (s + 1, s)


def test_bd_rejects_bad_parameters():
    with pytest.raises(LatticeError):
        orbit_family_bd(8, 3)
