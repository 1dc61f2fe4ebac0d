from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from wonderlat import invariant_vectors as iv
from wonderlat.invariant_vectors import SparseTensor, canon, lab


def _all_identities():
    return [(fam, k) for fam in iv.FAMILIES for k in range(len(iv.identity_table(fam)))]


@pytest.mark.parametrize("fam,k", _all_identities())
def test_identity_reproduces_stated_scalar(fam, k):
    res = iv.identity_table(fam)[k]()
    assert res.passed, (res.identity_id, res.scalar, res.expected_scalar, res.detail[:300])


def test_comodel_e8_has_eight_identities():
    assert len(iv.identity_table("comodel-E8")) == 8


@pytest.mark.parametrize("fam,params", [("model-A", {"r": 6}), ("model-D", {"r": 9}),
                                        ("comodel-D", {"m": 4}), ("orbit-BD", {"k": 15, "s": 6}),
                                        ("comodel-E6", {}), ("comodel-E7", {}),
                                        ("comodel-E8", {})])
def test_spherical_vectors_are_invariant(fam, params):
    for i in iv.family_indices(fam, **params):
        rep = iv.check_h_invariance(fam, i, **params)
        assert rep["holds"], rep["failures"][:2]


@pytest.mark.parametrize("fam,params", [("model-D", {"r": 7}), ("orbit-BD", {"k": 13, "s": 4}),
                                        ("comodel-D", {"m": 3}), ("comodel-E8", {})])
def test_generators_preserve_the_form(fam, params):
    assert iv.check_skew(fam, **params) == []


def test_e8_frame_form():
    assert iv.e8_frame_form_matches()


def test_spin_weights():
    assert iv.spin_weight_check()["holds"]


# -- exterior algebra ---------------------------------------------------------

LABELS = [("e", i) for i in range(1, 4)] + [("f", i) for i in range(1, 4)]


@given(st.sampled_from(LABELS), st.sampled_from(LABELS))
def test_wedge_is_alternating(x, y):
    a, b = SparseTensor.mono("U", [x]), SparseTensor.mono("U", [y])
    assert iv.wedge(a, b) == -iv.wedge(b, a)
    assert not iv.wedge(a, a)


@given(st.permutations(LABELS))
def test_canon_sign_is_permutation_parity(perm):
    sign, mono = canon(perm)
    inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm))
                     if perm[j] < perm[i])
    assert mono == tuple(sorted(perm))
    assert sign == (-1) ** inversions


def test_label_parser():
    assert lab("x*0") == ("x*", 0)
    with pytest.raises(iv.TensorError):
        lab("E1")


# -- spinors: block factorisation against the plain antisymmetrisation --------

SPIN_LABELS = [("e", i) for i in range(1, 5)] + [("f", i) for i in range(1, 5)]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from(SPIN_LABELS), min_size=1, max_size=4, unique=True),
       st.lists(st.integers(1, 4), max_size=4, unique=True))
def test_spin_wedge_matches_bruteforce(word, idx):
    _, mono = canon(word)
    _, psi = canon([("f", i) for i in idx])
    assert iv.spin_wedge(mono, {psi: Fraction(1)}) == iv.spin_wedge_bruteforce(mono, {psi: Fraction(1)})


# -- SL(2) ---------------------------------------------------------------------


@given(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6), st.integers(0, 6), st.data())
def test_projection_agrees_with_transvectant(a, b, c, d, data):
    m = data.draw(st.integers(0, min(a + b, c + d)))
    assert iv.sl2_transvectant(m, a, b, c, d) == (-1) ** m * factorial(m) * iv.sl2_pi(m, a, b, c, d)


def test_sl2_projection_onto_v2_vanishes():
    # V(2) in V(2) (x) V(2) is the image of pi_m with 1+1+1+1-2m = 2, so m = 1
    assert iv.sl2_pi(1, 1, 1, 1, 1) == 0


def test_sl2_projection_onto_v3_vanishes():
    # V(3) in V(4) (x) V(3): 3+1+1+2-2m = 3, so m = 2
    assert iv.sl2_pi(2, 3, 1, 1, 2) == 0


def test_sl2_pi_rejects_large_m():
    with pytest.raises(ValueError):
        iv.sl2_pi(3, 1, 1, 1, 1)


def test_comodel_d_scalar_closed_form():
    assert [iv.comodel_d_scalar(t, 2 - t) for t in range(3)] == [-2, -4, -2]
    assert iv.comodel_d_scalar(0, 0) == -2
