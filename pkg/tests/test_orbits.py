import pytest

from wonderlat import orbits
from wonderlat.catalog import model, orbit_family_bd
from wonderlat.lattice import is_distinguished, is_minuscule, localization, sigma_leq
from wonderlat.lie_core import build_root_system

NON_NORMAL = {"I", "XI"}


@pytest.mark.parametrize("case_id,n,m", [("I", 1, 1), ("I", 2, 1), ("II", 1, 1), ("II", 1, 2),
                                         ("III", 1, 1), ("III", 2, 1), ("IV", 1, 1),
                                         ("IV", 1, 2), ("IV", 2, 2), ("IV", 2, 3), ("V", 1, 1),
                                         ("VI", 1, 1), ("VII", 1, 1), ("VIII", 1, 1),
                                         ("IX", 1, 1), ("X", 1, 1), ("XI", 1, 1)])
def test_normality_verdicts(case_id, n, m):
    case = orbits.orbit_case(case_id, n, m)
    rep = orbits.normality_verdict(case)
    assert rep["faithful"]
    assert rep["verdict"] == ("non-normal" if case_id in NON_NORMAL else "normal")


def test_verdict_needs_a_surjectivity_basis():
    case = orbits.orbit_case("VII")
    assert orbits.normality_verdict(case, None)["verdict"] == "inconclusive"


def test_theta_values():
    assert orbits.orbit_case("I", 1).theta == (0, 1, 0)
    assert orbits.orbit_case("IX").theta == (0,) * 7 + (1,)
    assert orbits.orbit_case("XI").theta == (0, 1)
    assert orbits.orbit_case("VII").theta == (1,) + (0,) * 6


def test_orbit_height_validation():
    d = build_root_system("E", 8)
    assert orbits.orbit_height((0, 1) + (0,) * 6, d) == (3, True)
    assert orbits.orbit_height((0, 0, 0, 1) + (0,) * 4, d) == (6, False)
    with pytest.raises(orbits.OrbitError):
        orbits.orbit_height((3,) + (0,) * 7, d)
    with pytest.raises(orbits.OrbitError):
        orbits.orbit_height((0, 1), d)


def test_orbit_parameters_validated():
    with pytest.raises(orbits.OrbitError):
        orbits.orbit_case("II", 0, 1)
    with pytest.raises(orbits.OrbitError):
        orbits.orbit_case("XII")


def test_case_iv_index_shift():
    """Even m: the colors dropped are D_{2n+3}..D_r, and the result is the bd lattice."""
    n, m = 1, 2
    r = 2 * n + m + 2
    loc = localization(model("D", r), [2 * n])
    assert not is_distinguished(range(2 * n + 1, 2 * n + m + 2), loc)
    assert is_distinguished(range(2 * n + 2, r), loc)
    Q = orbits.orbit_case("IV", n, m).lattice
    B = orbit_family_bd(4 * n + 2 * m + 4, 2 * n + 1)
    assert Q.weight_map == B.weight_map
    assert sorted(zip(*Q.pairing)) == sorted(zip(*B.pairing))


# -- E8 coordinate ring ---------------------------------------------------------


@pytest.fixture(scope="module")
def e8_ring():
    L = model("E", 8)
    return L, orbits.coordinate_ring_degrees(L, L.color(7), n_max=7)


def test_expansion_identities():
    rep = orbits.verify_expansions()
    assert len(rep["identities"]) == 8
    assert all(r["holds"] and r["weight_holds"] for r in rep["identities"])


def test_first_degrees(e8_ring):
    L, dec = e8_ring
    got = tuple(dec.first_degree(L.omega(L.color(i))) for i in range(8))
    assert got == orbits.E8_DEGREES


def test_semigroup_closed(e8_ring):
    assert orbits.semigroup_gaps(e8_ring[1]) == []


def test_degree_two_dimension(e8_ring):
    # S^2(e8) minus the Killing form, which vanishes on nilpotent elements
    assert orbits.graded_dimension(e8_ring[1])[:3] == [1, 248, 248 * 249 // 2 - 1]


def test_lemma_a_checked(e8_ring):
    assert e8_ring[1].lemma_a_checked > 0


def test_shifted_run():
    assert orbits.shifted_run_matches(5)["matches"]


# -- minuscule lists ------------------------------------------------------------

MINUSCULE_TYPES = ([("A", r) for r in range(2, 8)] + [("B", r) for r in range(2, 7)]
                   + [("C", r) for r in range(3, 6)] + [("D", r) for r in range(4, 8)]
                   + [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)])


@pytest.mark.parametrize("fam,r", MINUSCULE_TYPES)
def test_minuscule_list(fam, r):
    rep = orbits.minuscule_catalog_check(fam, r)
    assert rep["agrees"], (rep["listed_not_minuscule"][:5], rep["disagreements"][:5])


def test_c_type_minuscule_example():
    """aD1 + bD_r for a, b <= 3 on the C model."""
    for r in (3, 4, 5):
        L = model("C", r)
        for a in range(4):
            for b in range(4):
                if a or b:
                    v = tuple(a if i == 0 else b if i == r - 1 else 0 for i in range(r))
                    assert is_minuscule(v, L), (r, a, b)


def test_color_relations_that_decide_minuscule():
    f4 = model("F", 4)
    assert sigma_leq(f4.zero(), f4.color(3), f4) == (1, 1, 2)
    g2 = model("G", 2)
    assert sigma_leq(g2.color(0), g2.color(1), g2) == (1,)
    d5 = model("D", 5)
    assert sigma_leq(d5.color(3), tuple(a + b for a, b in zip(d5.color(0), d5.color(4))), d5)
    e8 = model("E", 8)
    assert sigma_leq(e8.color(1), e8.color(5), e8) is not None
