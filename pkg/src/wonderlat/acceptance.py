"""Acceptance suite: one check per criterion, shared by the CLI and the tests.

Each check returns a :class:`CriterionResult`; ``detail`` holds enough data to
see what was compared.  Expected values for the finite classifications are
transcribed below as plain data.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from . import invariant_vectors as iv
from . import orbits
from .catalog import catalog, model, orbit_family_bd
from .lattice import (
    LatticeError,
    add,
    below,
    check_2ht,
    covering_differences,
    is_distinguished,
    is_faithful,
    is_low_triple,
    low_fundamental_triples,
)
from .lie_core import (
    CapExceeded,
    build_root_system,
    tensor_decomposition,
    tensor_multiplicity,
    weight_multiplicities,
    weyl_dim,
)
from .surjectivity import (
    LeafOracle,
    closure_necessity_check,
    edges_decrease,
    fundamental_pairs,
    lemma_b_constant,
    reduce_triple,
    verify_multiplication,
)

SCHEMA_VERSION = 1
STATUSES = ("pass", "fail", "inconclusive")

MODEL_TYPES = ([("A", r) for r in range(2, 9)] + [("B", r) for r in range(2, 9)]
               + [("C", r) for r in range(3, 9)] + [("D", r) for r in range(4, 9)]
               + [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)])


@dataclass
class CriterionResult:
    cid: int
    title: str
    status: str
    detail: dict = field(default_factory=dict)
    runtime: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self, timing: bool = True) -> dict:
        out = {"id": self.cid, "title": self.title, "status": self.status,
               "detail": self.detail}
        if timing:
            out["runtime_s"] = round(self.runtime, 2)
        return out


def _status(ok: bool, inconclusive: bool = False) -> str:
    if not ok:
        return "fail"
    return "inconclusive" if inconclusive else "pass"


def _unit(n: int, *idx: int) -> tuple[int, ...]:
    v = [0] * n
    for i in idx:
        v[i - 1] += 1
    return tuple(v)


def _vec(n: int, terms: dict[int, int]) -> tuple[int, ...]:
    """Vector from {1-based index: coefficient}; index 0 stands for the zero color."""
    v = [0] * n
    for i, c in terms.items():
        if i:
            v[i - 1] += c
    return tuple(v)


# ---------------------------------------------------------------------------
# 1. full-support covering differences


_EXCEPTIONAL_COVERS = {
    ("E", 6): [((1, 1, 1, 1, 1), {4: 1, 2: -1}), ((2, 2, 1, 1, 2), {1: 1, 6: 1})],
    ("E", 7): [((1, 1, 0, 1, 1, 1), {1: 1, 6: 1, 3: -1})],
    ("E", 8): [((1, 1, 1, 1, 2, 1, 1), {6: 1, 2: -1}),
               ((2, 2, 1, 1, 2, 0, 1), {1: 1, 8: 1, 7: -1})],
    ("F", 4): [((1, 1, 2), {4: 1}), ((1, 0, 1), {1: 1, 4: 1, 3: -1})],
    ("G", 2): [((1,), {2: 1, 1: -1})],
}


def expected_full_support_covers(family: str, r: int) -> set[tuple[tuple, tuple]]:
    """(sigma coefficients, Z Delta form) of every full-support covering difference."""
    if (family, r) in _EXCEPTIONAL_COVERS:
        return {(g, _vec(r, d)) for g, d in _EXCEPTIONAL_COVERS[(family, r)]}
    n = r - 1
    odd_sigmas = tuple(int(i % 2 == 1) for i in range(1, n + 1))
    if family == "A":
        if r % 2 == 0:
            return {(odd_sigmas, _vec(r, {1: 1, r: 1}))}
        return {((1,) * n, _unit(r, 2, r - 1))}
    if family == "B":
        return {(odd_sigmas, _vec(r, {1: 1}))} if r % 2 == 0 else set()
    if family == "C":
        return {((1,) * n, _vec(r, {2: 1}))}
    if family == "D":
        if r % 2 == 0:
            return set()
        out = set()
        for j in range(1, r - 1, 2):
            g = [0] * n
            for i in range(1, (j - 1) // 2 + 1):
                g[2 * i - 2] += 1
            for i in range((j + 1) // 2, (r - 3) // 2 + 1):
                g[2 * i - 2] += 2
            g[r - 3] += 1
            g[r - 2] += 1
            d = [0] * r
            d[0] += 1
            if j > 1:
                d[j - 2] -= 1
            d[j - 1] += 1
            out.add((tuple(g), tuple(d)))
        return out
    raise LatticeError(f"no covering list for {family}{r}")


def criterion_1() -> CriterionResult:
    mismatches = {}
    for fam, r in MODEL_TYPES:
        L = model(fam, r)
        got = {(g, L.embed(g)) for g in covering_differences(L, support_filter=True)}
        want = expected_full_support_covers(fam, r)
        if got != want:
            mismatches[f"{fam}{r}"] = {"computed": sorted(map(str, got)),
                                       "expected": sorted(map(str, want))}
    return CriterionResult(1, "full-support covering differences", _status(not mismatches),
                           {"lattices": len(MODEL_TYPES), "mismatches": mismatches})


# ---------------------------------------------------------------------------
# 2. (2-ht)


def bd_parameters(k_max: int = 17, s_max: int = 7) -> list[tuple[int, int]]:
    return [(k, s) for k in range(7, k_max + 1) for s in range(2, s_max + 1)
            if 2 * s + 3 <= k]


def criterion_2() -> CriterionResult:
    lattices = [model(f, r) for f, r in MODEL_TYPES]
    lattices += [orbit_family_bd(k, s) for k, s in bd_parameters()]
    lattices += [catalog("caseV"), catalog("caseX")]
    failures = {}
    for L in lattices:
        rep = check_2ht(L)
        if not rep["holds"]:
            failures[L.name] = [list(g) for g in rep["violations"]]
    return CriterionResult(2, "(2-ht) on catalog lattices", _status(not failures),
                           {"lattices": len(lattices), "failures": failures})


# ---------------------------------------------------------------------------
# 3. low fundamental triples


_EXCEPTIONAL_TRIPLES = {
    ("E", 6): [(1, 3, {2: 1}), (1, 5, {3: 1}), (1, 6, {}), (3, 6, {5: 1}), (5, 6, {2: 1})],
    ("E", 7): [(1, 6, {3: 1}), (6, 6, {2: 1, 7: 1})],
    ("E", 8): [(1, 1, {2: 1}), (1, 5, {2: 2}), (1, 7, {3: 1}), (1, 8, {7: 1}),
               (3, 8, {5: 1}), (5, 8, {2: 1, 7: 1}), (7, 8, {2: 1})],
    ("F", 4): [(1, 4, {3: 1})],
    ("G", 2): [],
}

_CASE_VX_TRIPLES = [(1, 1, {3: 1}), (2, 4, {3: 1}), (3, 3, {1: 1, 4: 2}), (1, 3, {4: 2}),
                    (2, 3, {1: 1, 4: 1}), (2, 2, {1: 1}), (1, 2, {4: 1})]


def _triples(m: int, rows) -> set:
    return {(_unit(m, p), _unit(m, q), _vec(m, f)) for p, q, f in rows}


def expected_low_triples(family: str, r: int) -> set:
    """Full-support low fundamental triples with D <= E in color order."""
    if (family, r) in _EXCEPTIONAL_TRIPLES:
        return _triples(r, _EXCEPTIONAL_TRIPLES[(family, r)])
    rows = []
    if family == "A":
        for p in range(1, (r + 1) // 2 + 1):
            q = r + 1 - p
            if r % 2 and (p % 2 or q % 2):
                continue
            rows.append((p, q, {}))
    elif family == "D" and r % 2:
        for p in range(1, r - 1, 2):
            for q in range(p, r - 1, 2):
                if p + q <= r - 1:
                    rows.append((p, q, {p + q - 2: 1}))
                elif p + q == r + 1:
                    rows.append((p, q, {r - 1: 1, r: 1}))
    elif family != "D":
        raise LatticeError(f"no low-triple list for {family}{r}")
    return _triples(r, rows)


def expected_bd_triples(s: int) -> set:
    if s % 2:
        return set()
    rows = [(p, q, {p + q - 2: 1}) for p in range(1, s + 3, 2) for q in range(p, s + 3, 2)
            if p + q <= s + 2]
    return _triples(s + 1, rows)


def criterion_3() -> CriterionResult:
    checks = []
    for fam, r in ([("A", r) for r in range(2, 10)] + [("D", r) for r in range(4, 10)]
                   + list(_EXCEPTIONAL_TRIPLES)):
        checks.append((model(fam, r), True, expected_low_triples(fam, r)))
    for s in range(2, 8):
        for k in (2 * s + 3, 2 * s + 4):
            checks.append((orbit_family_bd(k, s), True, expected_bd_triples(s)))
    for sel in ("caseV", "caseX"):
        checks.append((catalog(sel), False, _triples(4, _CASE_VX_TRIPLES)))
    mismatches, counts = {}, {}
    for L, full, want in checks:
        got = set(low_fundamental_triples(L, support_filter=full))
        counts[L.name] = len(got)
        if got != want:
            mismatches[L.name] = {"extra": sorted(map(str, got - want)),
                                  "missing": sorted(map(str, want - got))}
    return CriterionResult(3, "low fundamental triples", _status(not mismatches),
                           {"counts": counts, "mismatches": mismatches})


# ---------------------------------------------------------------------------
# 4. identities


def criterion_4() -> CriterionResult:
    failed, total = [], 0
    for fam in iv.FAMILIES:
        for res in iv.verify_identities(fam):
            total += 1
            if not res.passed:
                failed.append({"id": res.identity_id,
                               "scalar": None if res.scalar is None else str(res.scalar),
                               "expected": None if res.expected_scalar is None
                               else str(res.expected_scalar)})
    return CriterionResult(4, "invariant-vector identities", _status(not failed),
                           {"identities": total, "failed": failed})


# ---------------------------------------------------------------------------
# 5. h_0 invariance


def invariance_jobs() -> list[tuple[str, dict]]:
    jobs = [("model-A", {"r": r}) for r in (2, 4, 6, 8)]
    jobs += [("model-D", {"r": r}) for r in (3, 5, 7, 9)]
    jobs += [("comodel-D", {"m": m}) for m in (2, 3, 4)]
    jobs += [("orbit-BD", {"k": k, "s": s}) for k, s in bd_parameters() if s % 2 == 0]
    jobs += [(f, {}) for f in ("comodel-E6", "comodel-E7", "comodel-E8")]
    return jobs


def criterion_5() -> CriterionResult:
    failed, checked = [], 0
    for fam, params in invariance_jobs():
        for i in iv.family_indices(fam, **params):
            checked += 1
            if not iv.check_h_invariance(fam, i, **params)["holds"]:
                failed.append({"family": fam, "params": params, "index": i})
    return CriterionResult(5, "h_0-invariance of spherical vectors", _status(not failed),
                           {"vectors": checked, "failed": failed})


# ---------------------------------------------------------------------------
# 6. counterexample and saturation


def criterion_6(cap: int | None = None) -> CriterionResult:
    detail, ok, open_ = {}, True, False
    try:
        b4 = tensor_multiplicity((0, 1, 0, 0), (0, 1, 0, 0), (1, 0, 0, 0),
                                 build_root_system("B", 4), cap)
        c4 = tensor_multiplicity((0, 1, 0, 0), (0, 1, 0, 0), (0, 1, 0, 0),
                                 build_root_system("C", 4), cap)
        detail["B4 w2 x w2 -> w1"] = b4
        detail["C4 w2 x w2 -> w2"] = c4
        ok &= b4 == 0 and c4 >= 1
    except CapExceeded as exc:
        detail["multiplicity"] = str(exc)
        open_ = True
    sym, clo = catalog("sp8_symmetric"), catalog("sp8_closure")
    D2 = sym.color(0)
    closure = closure_necessity_check(D2, D2, D2, sym, clo)
    detail["closure admits (D2,D2,D2)"] = closure
    ok &= not closure
    zeros = {"pi2(h(1,1) x h(1,1))": iv.sl2_pi(2, 1, 1, 1, 1),
             "pi2(h(3,1) x h(1,2))": iv.sl2_pi(2, 3, 1, 1, 2)}
    detail.update(zeros)
    ok &= all(v == 0 for v in zeros.values())
    return CriterionResult(6, "counterexample and saturation", _status(ok, open_), detail)


# ---------------------------------------------------------------------------
# 7. oracle soundness


SUM_RULE_TYPES = (("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("B", 4),
                  ("C", 3), ("C", 4), ("D", 4), ("F", 4), ("G", 2))


def random_tensor_pairs(count: int = 100, seed: int = 20240) -> list[tuple[str, int, tuple, tuple]]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        fam, r = rng.choice(SUM_RULE_TYPES)
        top = 1 if fam == "F" else 2
        lam = tuple(rng.randint(0, top) for _ in range(r))
        mu = tuple(rng.randint(0, top) for _ in range(r))
        out.append((fam, r, lam, mu))
    return out


def criterion_7(cap: int | None = None) -> CriterionResult:
    open_, bad = 0, []
    for fam, r, lam, mu in random_tensor_pairs():
        datum = build_root_system(fam, r)
        try:
            parts = tensor_decomposition(lam, mu, datum, cap)
        except CapExceeded:
            open_ += 1
            continue
        total = sum(c * weyl_dim(nu, datum) for nu, c in parts.items())
        if total != weyl_dim(lam, datum) * weyl_dim(mu, datum):
            bad.append(f"{fam}{r} {lam} x {mu}")
    e8 = build_root_system("E", 8)
    dims = {"E8 w1": weyl_dim(_unit(8, 1), e8), "E8 w5": weyl_dim(_unit(8, 5), e8)}
    zero = weight_multiplicities((1, 1), build_root_system("A", 2), cap).get((0, 0))
    ok = not bad and dims == {"E8 w1": 3875, "E8 w5": 146325270} and zero == 2
    detail = {"sum_rule_failures": bad, "sum_rule_over_cap": open_, **dims,
              "A2 adjoint zero weight": zero}
    return CriterionResult(7, "oracle soundness", _status(ok, open_ > 0), detail)


# ---------------------------------------------------------------------------
# 8. distinguished subsets and faithfulness


def listed_distinguished() -> list[tuple[str, frozenset[int]]]:
    """(lattice selector, 0-based color set) pairs named as distinguished."""
    out = [(f"model:A{r}", frozenset(range(0, r, 2))) for r in (3, 5, 7)]
    out += [("model:E6", frozenset({1, 2, 3, 4})), ("model:E8", frozenset({0, 3, 5, 7})),
            ("model:C4", frozenset({0, 2})), ("comodel:E8", frozenset(set(range(8)) - {1}))]
    return out


def criterion_8() -> CriterionResult:
    detail, ok = {"distinguished": {}, "theta_faithful": {}}, True
    for sel, subset in listed_distinguished():
        L = catalog(sel)
        got = is_distinguished(subset, L)
        detail["distinguished"][f"{sel} {{{','.join(L.colors[d] for d in sorted(subset))}}}"] = got
        ok &= got
    c4 = model("C", 4)
    two_d2 = tuple(2 * x for x in c4.color(1))
    faithful = is_faithful(two_d2, c4)
    detail["C4 2D2 faithful"] = faithful
    ok &= not faithful
    for case in orbit_instances():
        L = case.lattice
        good = is_faithful(case.theta, L) if L.strict else orbits.faithful_by_subsets(case.theta, L)
        detail["theta_faithful"][case.label] = good
        ok &= good
    return CriterionResult(8, "distinguished subsets and faithful divisors", _status(ok), detail)


# ---------------------------------------------------------------------------
# 9. normality verdicts


ORBIT_PARAMETERS = {"I": [(1, 1), (2, 1)], "II": [(1, 1), (1, 2)], "III": [(1, 1), (2, 1)],
                    "IV": [(1, 1), (1, 2)]}
EXPECTED_VERDICT = {c: ("non-normal" if c in ("I", "XI") else "normal") for c in orbits.CASE_IDS}


def orbit_instances() -> list[orbits.OrbitCase]:
    out = []
    for c in orbits.CASE_IDS:
        for n, m in ORBIT_PARAMETERS.get(c, [(1, 1)]):
            out.append(orbits.orbit_case(c, n, m))
    return out


def criterion_9() -> CriterionResult:
    verdicts, wrong = {}, []
    for case in orbit_instances():
        rep = orbits.normality_verdict(case)
        verdicts[case.label] = rep["verdict"]
        if rep["verdict"] != EXPECTED_VERDICT[case.case_id]:
            wrong.append(case.label)
    return CriterionResult(9, "orbit normality verdicts", _status(not wrong),
                           {"verdicts": verdicts, "wrong": wrong})


# ---------------------------------------------------------------------------
# 10. coordinate rings


def criterion_10(n_max: int = 7) -> CriterionResult:
    detail, ok = {}, True
    try:
        rep = orbits.verify_expansions()
        detail["expansion identities"] = len(rep["identities"])
        L = model("E", 8)
        decomp = orbits.coordinate_ring_degrees(L, L.color(7), n_max=n_max)
        first = [decomp.first_degree(L.omega(L.color(i))) for i in range(8)]
        gaps = orbits.semigroup_gaps(decomp)
        detail["first degrees"] = first
        detail["semigroup gaps"] = len(gaps)
        ok &= tuple(first) == orbits.E8_DEGREES and not gaps
        shifted = orbits.shifted_run_matches(n_max)
        detail["shifted run matches"] = shifted["matches"]
        ok &= shifted["matches"]
    except LatticeError as exc:
        detail["error"] = str(exc)
        ok = False
    return CriterionResult(10, "E8 coordinate ring", _status(ok), detail)


# ---------------------------------------------------------------------------
# 11. reduction engine


def engine_selectors() -> list[str]:
    out = [f"model:{f}{r}" for f, r in [("A", 1)] + MODEL_TYPES]
    out += [f"comodel:A{r}" for r in range(3, 9)] + [f"comodel:D{r}" for r in range(5, 9)]
    out += [f"comodel:E{r}" for r in (6, 7, 8)]
    return out


def certificate_structure(L) -> dict:
    """Build every reduction tree for fundamental pairs; count structural failures."""
    n = lemma_b_constant(L)
    trees = bad_edges = bad_leaves = 0
    for D, E in fundamental_pairs(L):
        for F, _ in below(add(D, E), L):
            tree = reduce_triple(D, E, F, L, n)
            trees += 1
            bad_edges += not edges_decrease(tree, L)
            bad_leaves += sum(1 for x in tree.leaves()
                              if x.step != "trivial" and not is_low_triple(x.D, x.E, x.F, L))
    return {"trees": trees, "bad_edges": bad_edges, "bad_leaves": bad_leaves}


def criterion_11(cap: int | None = None) -> CriterionResult:
    structure, ok = {}, True
    for sel in engine_selectors():
        rep = certificate_structure(catalog(sel))
        structure[sel] = rep
        ok &= rep["bad_edges"] == 0 and rep["bad_leaves"] == 0
    full, open_ = {}, False
    for sel in [f"model:A{r}" for r in range(1, 8)] + [f"model:D{r}" for r in range(4, 8)]:
        L, oracle = catalog(sel), LeafOracle(cap)
        verdicts = [verify_multiplication(D, E, L, oracle).verdict
                    for D, E in fundamental_pairs(L)]
        full[sel] = sorted(set(verdicts))
        ok &= "not-surjective" not in verdicts
        open_ |= "inconclusive" in verdicts
    detail = {"structure_failures": {k: v for k, v in structure.items()
                                     if v["bad_edges"] or v["bad_leaves"]},
              "lattices": len(structure), "full_certificates": full}
    return CriterionResult(11, "reduction engine certificates", _status(ok, open_), detail)


# ---------------------------------------------------------------------------


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
            11: criterion_11}
TAKES_CAP = {6, 7, 11}


def run_criterion(cid: int, cap: int | None = None) -> CriterionResult:
    fn = CRITERIA[cid]
    start = time.perf_counter()
    res = fn(cap) if cid in TAKES_CAP else fn()
    res.runtime = time.perf_counter() - start
    return res


def run_all(ids=None, cap: int | None = None) -> list[CriterionResult]:
    return [run_criterion(c, cap) for c in sorted(ids or CRITERIA)]
