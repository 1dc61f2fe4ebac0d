from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from wonderlat.lie_core import (
    CapExceeded,
    build_root_system,
    dominance_leq,
    parse_type,
    tensor_decomposition,
    tensor_multiplicity,
    weight_multiplicities,
    weight_system,
    weyl_dim,
)

# |positive roots| from the closed formulas per type
POSITIVE_ROOT_COUNT = {("A", 4): 10, ("B", 3): 9, ("C", 4): 16, ("D", 5): 20, ("E", 6): 36,
                       ("E", 7): 63, ("E", 8): 120, ("F", 4): 24, ("G", 2): 6}

# dimensions of standard modules, from their classical constructions
KNOWN_DIMS = [
    ("A", 2, (1, 1), 8),            # sl3 adjoint
    ("A", 3, (0, 1, 0), 6),         # wedge^2 C^4
    ("B", 4, (0, 1, 0, 0), 36),     # wedge^2 C^9
    ("B", 4, (0, 0, 0, 1), 16),     # spin
    ("C", 4, (0, 1, 0, 0), 27),     # wedge^2 C^8 minus the form
    ("D", 4, (1, 0, 0, 0), 8),
    ("G", 2, (1, 0), 7),
    ("G", 2, (0, 1), 14),
    ("F", 4, (0, 0, 0, 1), 26),
    ("F", 4, (1, 0, 0, 0), 52),
    ("E", 6, (1, 0, 0, 0, 0, 0), 27),
    ("E", 7, (0, 0, 0, 0, 0, 0, 1), 56),
    ("E", 8, (0, 0, 0, 0, 0, 0, 0, 1), 248),
]

SMALL_TYPES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("G", 2)]


@pytest.mark.parametrize("fam,r", sorted(POSITIVE_ROOT_COUNT))
def test_positive_root_count(fam, r):
    assert len(build_root_system(fam, r).positive_roots) == POSITIVE_ROOT_COUNT[(fam, r)]


@pytest.mark.parametrize("fam,r,lam,dim", KNOWN_DIMS)
def test_weyl_dim_known_modules(fam, r, lam, dim):
    assert weyl_dim(lam, build_root_system(fam, r)) == dim


def test_highest_root_is_adjoint_weight():
    # adjoint modules: A_r omega_1 + omega_r, B/D omega_2, E8 omega_8, G2 omega_2
    for fam, r, w in [("A", 3, (1, 0, 1)), ("B", 4, (0, 1, 0, 0)), ("D", 5, (0, 1, 0, 0, 0)),
                      ("E", 8, (0,) * 7 + (1,)), ("G", 2, (0, 1)), ("F", 4, (1, 0, 0, 0)),
                      ("E", 7, (1,) + (0,) * 6), ("E", 6, (0, 1, 0, 0, 0, 0))]:
        d = build_root_system(fam, r)
        assert d.root_to_weight(d.highest_root()) == w


def test_bad_types_rejected():
    for fam, r in [("A", 0), ("D", 2), ("E", 9), ("F", 3), ("Q", 2)]:
        with pytest.raises(ValueError):
            build_root_system(fam, r)


def test_product_type_label():
    assert parse_type("A1xA1").label == "A1xA1"


def _weights(rank, top):
    return st.tuples(*[st.integers(0, top)] * rank)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL_TYPES), st.data())
def test_freudenthal_total_matches_weyl(t, data):
    d = build_root_system(*t)
    lam = data.draw(_weights(d.rank, 2))
    assert sum(weight_system(lam, d).values()) == weyl_dim(lam, d)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL_TYPES), st.data())
def test_tensor_sum_rule_and_symmetry(t, data):
    d = build_root_system(*t)
    lam, mu = data.draw(_weights(d.rank, 2)), data.draw(_weights(d.rank, 2))
    parts = tensor_decomposition(lam, mu, d)
    assert all(m > 0 for m in parts.values())
    assert sum(m * weyl_dim(nu, d) for nu, m in parts.items()) == weyl_dim(lam, d) * weyl_dim(mu, d)
    assert parts == tensor_decomposition(mu, lam, d)
    top = tuple(a + b for a, b in zip(lam, mu))
    assert parts[top] == 1
    assert all(dominance_leq(nu, top, d) for nu in parts)


@given(st.integers(0, 12), st.integers(0, 12))
def test_sl2_clebsch_gordan(a, b):
    d = build_root_system("A", 1)
    want = {(a + b - 2 * k,): 1 for k in range(min(a, b) + 1)}
    assert tensor_decomposition((a,), (b,), d) == want


def test_a2_adjoint_zero_weight():
    assert weight_multiplicities((1, 1), build_root_system("A", 2))[(0, 0)] == 2


def test_sl3_symmetric_powers_are_multiplicity_free():
    d = build_root_system("A", 2)
    for n in range(1, 6):
        assert all(m == 1 for m in weight_system((n, 0), d).values())
        assert weyl_dim((n, 0), d) == comb(n + 2, 2)


def test_cap_is_enforced():
    d = build_root_system("E", 8)
    with pytest.raises(CapExceeded):
        weight_multiplicities((1,) + (0,) * 7, d, cap=1000)
    with pytest.raises(CapExceeded):
        tensor_multiplicity((1,) + (0,) * 7, (1,) + (0,) * 7, (0,) * 8, d, cap=1000)


def test_dominance_requires_root_lattice_difference():
    d = build_root_system("A", 2)
    assert dominance_leq((0, 0), (1, 1), d)
    assert not dominance_leq((1, 0), (1, 1), d)
