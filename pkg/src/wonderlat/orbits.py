"""Height-three nilpotent orbits, minuscule catalogs and graded coordinate rings.

Each orbit case carries its Kostant-Dynkin diagram and the lattice of the
wonderful compactification of its projectivization. The highest root,
read as a divisor through the injective weight map, decides normality:
the closure is normal when it is minuscule and faithful.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

from .catalog import _solve_int, catalog, induced_comodel, model, orbit_family_bd
from .lattice import (
    LatticeError, Vec, WonderfulLattice, _compositions, _left_inverse, add, below,
    distinguished_subsets, height, is_faithful, is_minuscule, localization, nonneg,
    quotient, sigma_leq, support,
)
from .lie_core import RootDatum, weyl_dim

SCHEMA_VERSION = 1
VERDICTS = ("normal", "non-normal", "inconclusive")
SURJECTIVITY_BASES = ("certified", "assumed")

CASE_IDS = ("I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI")

# degree at which V(omega_i) first occurs in the E8 model orbit, and the
# spherical-root combination gamma_i with D_i = n_i D_8 - gamma_i, listed
# against the numbering sigma'_1..sigma'_7 used for these identities
E8_DEGREES = (2, 4, 5, 7, 6, 4, 3, 1)
E8_GAMMAS = (
    (0, 0, 0, 1, 2, 1, 2),
    (1, 2, 3, 4, 6, 3, 5),
    (1, 2, 3, 5, 7, 3, 6),
    (1, 2, 4, 6, 9, 4, 8),
    (1, 2, 4, 6, 8, 4, 7),
    (0, 1, 2, 3, 4, 2, 4),
    (0, 1, 2, 3, 4, 2, 3),
    (0, 0, 0, 0, 0, 0, 0),
)
# sigma'_j is the model spherical root with this (1-based) index
E8_SIGMA_ORDER = (6, 4, 1, 2, 5, 3, 7)

DEFAULT_PARAM_BOUND = 3


class OrbitError(ValueError):
    pass


@dataclass(frozen=True)
class OrbitCase:
    case_id: str
    family: str
    rank: int
    params: tuple[tuple[str, int], ...]
    diagram: tuple[int, ...]
    lattice: WonderfulLattice = field(compare=False, repr=False)
    theta: Vec = ()

    @property
    def label(self) -> str:
        extra = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.case_id}[{extra}]" if extra else self.case_id


def orbit_height(diagram, datum: RootDatum) -> tuple[int, bool]:
    """Height of the orbit with this diagram and whether it is spherical."""
    diagram = tuple(diagram)
    if len(diagram) != datum.rank:
        raise OrbitError(f"diagram has {len(diagram)} entries, rank is {datum.rank}")
    if any(x not in (0, 1, 2) for x in diagram):
        raise OrbitError("diagram entries must be 0, 1 or 2")
    top = datum.highest_root()
    h = sum(c * x for c, x in zip(top, diagram))
    return h, h <= 3


def theta_divisor(L: WonderfulLattice) -> Vec:
    """The highest root as an N Delta element, through the inverse weight map."""
    if not L.strict:
        raise OrbitError(f"{L.name}: weight map is only invertible on strict lattices")
    target = L.datum.root_to_weight(L.datum.highest_root())
    c = _solve_int([list(w) for w in L.weight_map], list(target))
    if c is None or any(x < 0 for x in c):
        raise OrbitError(f"{L.name}: highest root is not omega of an N Delta element")
    return tuple(c)


def _marked(rank: int, *nodes: int) -> tuple[int, ...]:
    return tuple(int(k + 1 in nodes) for k in range(rank))


def _case_data(case_id: str, n: int, m: int):
    """(family, rank, params, diagram, lattice) for one case instance."""
    if case_id == "I":
        r = 2 * n + 1
        return "B", r, (("n", n),), _marked(r, 1, r), model("B", r)
    if case_id == "II":
        r = 2 * n + m + 1
        return ("B", r, (("n", n), ("m", m)), _marked(r, 1, 2 * n + 1),
                orbit_family_bd(4 * n + 2 * m + 3, 2 * n + 1))
    if case_id == "III":
        r = 2 * n + 2
        return "D", r, (("n", n),), _marked(r, 1, r - 1, r), model("D", r)
    if case_id == "IV":
        r = 2 * n + m + 2
        if m % 2:
            L = orbit_family_bd(4 * n + 2 * m + 4, 2 * n + 1)
        else:
            # boundary divisor of sigma_{2n+1}, then drop D_{2n+3}..D_r
            L = quotient(localization(model("D", r), [2 * n]), range(2 * n + 2, r),
                         name=f"caseIV:{n},{m}")
        return "D", r, (("n", n), ("m", m)), _marked(r, 1, 2 * n + 1), L
    if case_id == "V":
        return "E", 6, (), _marked(6, 4), catalog("caseV")
    if case_id == "VI":
        L = quotient(localization(model("E", 7), [2]), {1, 4, 6}, name="caseVI")
        return "E", 7, (), _marked(7, 3), L
    if case_id == "VII":
        return "E", 7, (), _marked(7, 2, 7), model("E", 7)
    if case_id == "VIII":
        L = quotient(localization(model("E", 8), [5]), {1, 2, 3, 4}, name="caseVIII")
        return "E", 8, (), _marked(8, 7), L
    if case_id == "IX":
        return "E", 8, (), _marked(8, 2), model("E", 8)
    if case_id == "X":
        return "F", 4, (), _marked(4, 2), catalog("caseX")
    if case_id == "XI":
        return "G", 2, (), _marked(2, 1), model("G", 2)
    raise OrbitError(f"unknown orbit case {case_id!r}")


def orbit_case(case_id: str, n: int = 1, m: int = 1) -> OrbitCase:
    """Build case I..XI; n and m are used only by the parametric families."""
    case_id = case_id.upper()
    if case_id in ("I", "II", "III", "IV") and n < 1:
        raise OrbitError("n must be at least 1")
    if case_id in ("II", "IV") and m < 1:
        raise OrbitError("m must be at least 1")
    fam, r, params, diagram, L = _case_data(case_id, n, m)
    h, _ = orbit_height(diagram, L.datum)
    if h != 3:
        raise OrbitError(f"case {case_id}: diagram height is {h}, expected 3")
    return OrbitCase(case_id, fam, r, params, diagram, L, theta_divisor(L))


def normality_verdict(case: OrbitCase, surjectivity: str | None = "assumed") -> dict:
    """Normal iff theta is minuscule and faithful; never a verdict without a basis.

    ``surjectivity`` records why multiplication of sections is known to be
    surjective on the case lattice: "certified" (engine run) or "assumed".
    """
    L, theta = case.lattice, case.theta
    minuscule = is_minuscule(theta, L)
    faithful = is_faithful(theta, L)
    if surjectivity not in SURJECTIVITY_BASES or not faithful:
        verdict = "inconclusive"
    else:
        verdict = "normal" if minuscule else "non-normal"
    return {
        "case": case.label,
        "group": f"{case.family}{case.rank}",
        "diagram": "".join(map(str, case.diagram)),
        "lattice": L.name,
        "theta": list(theta),
        "minuscule": minuscule,
        "faithful": faithful,
        "surjectivity": surjectivity,
        "verdict": verdict,
    }


# ---------------------------------------------------------------------------
# E8 expansion identities


def verify_expansions(L: WonderfulLattice | None = None) -> dict:
    """Check D_i = n_i D_8 - gamma_i in Z Delta and through the weight map."""
    L = L or model("E", 8)
    if L.kind != ("model", "E", 8):
        raise LatticeError("expansion identities are stated for the E8 model lattice")
    D8 = L.color(7)
    rows = []
    for i, (n_i, gamma_listed) in enumerate(zip(E8_DEGREES, E8_GAMMAS)):
        gamma = [0] * L.n
        for j, c in enumerate(gamma_listed):
            gamma[E8_SIGMA_ORDER[j] - 1] = c
        gamma = tuple(gamma)
        rhs = tuple(n_i * x - y for x, y in zip(D8, L.embed(gamma)))
        in_delta = rhs == L.color(i)
        weight_lhs = L.omega(L.color(i))
        weight_rhs = tuple(n_i * a - b for a, b in
                           zip(L.omega(D8), L.datum.root_to_weight(L.expansion(gamma))))
        rows.append({"color": L.colors[i], "degree": n_i, "gamma": list(gamma),
                     "holds": in_delta, "weight_holds": weight_lhs == weight_rhs})
    bad = [r["color"] for r in rows if not (r["holds"] and r["weight_holds"])]
    if bad:
        raise LatticeError(f"expansion identity fails for {', '.join(bad)}")
    return {"lattice": L.name, "identities": rows, "degrees": list(E8_DEGREES)}


# ---------------------------------------------------------------------------
# graded decompositions


@dataclass
class GradedDecomposition:
    lattice: WonderfulLattice = field(repr=False)
    E: Vec
    shift: Vec
    # degree n -> sorted [(weight, F, gamma)]
    degrees: dict[int, list[tuple[tuple[int, ...], Vec, Vec]]]
    lemma_a_checked: int = 0

    def weights(self, n: int) -> list[tuple[int, ...]]:
        return [w for w, _, _ in self.degrees[n]]

    def first_degree(self, weight) -> int | None:
        weight = tuple(weight)
        for n in sorted(self.degrees):
            if weight in self.weights(n):
                return n
        return None

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "lattice": self.lattice.name,
            "E": list(self.E),
            "shift": list(self.shift),
            "lemma_a_checked": self.lemma_a_checked,
            "degrees": [{"n": n, "terms": [{"weight": list(w), "F": list(F), "gamma": list(g)}
                                           for w, F, g in self.degrees[n]]}
                        for n in sorted(self.degrees)],
        }


def faithful_by_subsets(D, L: WonderfulLattice) -> bool:
    """Support of D meets every distinguished subset (no strictness check)."""
    supp = support(D)
    return all(s & supp for s in distinguished_subsets(L))


def _lemma_a_violations(L: WonderfulLattice, E: Vec, shift: Vec, ht: int) -> tuple[int, list]:
    """Solve F - shift = n E - sigma over N Delta vectors F of height <= ht.

    Any integral solution must have n >= 0 and sigma in N Sigma.
    """
    cols = [tuple(E)] + [tuple(-L.pairing[d][s] for d in range(L.m)) for s in range(L.n)]
    system = tuple(tuple(c[d] for c in cols) for d in range(L.m))
    rows, inv, den = _left_inverse(system, L.m, L.n + 1)
    checked, bad = 0, []
    for h in range(ht + 1):
        for F in _compositions(h, L.m) if h else [L.zero()]:
            v = tuple(f - s for f, s in zip(F, shift))
            sol = []
            for k in range(L.n + 1):
                q, rem = divmod(sum(c * v[t] for c, t in zip(inv[k], rows)), den)
                if rem:
                    break
                sol.append(q)
            else:
                if tuple(sum(c[d] * x for c, x in zip(cols, sol)) for d in range(L.m)) != v:
                    continue
                checked += 1
                if sol[0] < 0 or any(x < 0 for x in sol[1:]):
                    bad.append((F, sol))
    return checked, bad


def coordinate_ring_degrees(L: WonderfulLattice, E, shift=None, n_max: int = 4,
                            lemma_a_height: int = 4) -> GradedDecomposition:
    """All F with F + gamma = shift + n E, gamma in N Sigma, for n <= n_max."""
    E = tuple(E)
    shift = tuple(shift) if shift is not None else L.zero()
    if not (nonneg(E) and nonneg(shift)):
        raise LatticeError("E and the shift must lie in N Delta")
    faithful = is_faithful(E, L) if L.strict else faithful_by_subsets(E, L)
    if not faithful:
        raise LatticeError(f"{list(E)} is not faithful on {L.name}")
    degrees = {}
    for n in range(n_max + 1):
        target = add(shift, tuple(n * x for x in E))
        terms = sorted((L.omega(F), F, g) for F, g in below(target, L))
        ws = [w for w, _, _ in terms]
        if len(set(ws)) != len(ws):
            raise LatticeError(f"degree {n} is not multiplicity free")
        for w, F, g in terms:
            if sigma_leq(F, target, L) != g:
                raise LatticeError(f"witness for {F} at degree {n} does not verify")
        degrees[n] = terms
    checked, bad = _lemma_a_violations(L, E, shift, lemma_a_height)
    if bad:
        raise LatticeError(f"solutions with negative degree or gamma: {bad[:3]}")
    return GradedDecomposition(L, E, shift, degrees, checked)


def graded_dimension(decomp: GradedDecomposition, datum: RootDatum | None = None) -> list[int]:
    datum = datum or decomp.lattice.datum
    return [sum(weyl_dim(w, datum) for w in decomp.weights(n)) for n in sorted(decomp.degrees)]


def semigroup_gaps(decomp: GradedDecomposition) -> list[tuple]:
    """Pairs (lambda at a, mu at b) whose sum is missing at degree a + b."""
    top = max(decomp.degrees)
    sets = {n: set(decomp.weights(n)) for n in decomp.degrees}
    gaps = []
    for a in sorted(sets):
        for b in sorted(sets):
            if a > b or a + b > top:
                continue
            for lam in sorted(sets[a]):
                for mu in sorted(sets[b]):
                    total = tuple(x + y for x, y in zip(lam, mu))
                    if total not in sets[a + b]:
                        gaps.append((a, lam, b, mu))
    return gaps


def shifted_run_matches(n_max: int = 4) -> dict:
    """Sections twisted by D'0 on the induced comodel lattice versus the plain ring."""
    L = induced_comodel("E", 8)
    E = L.color(8)
    plain = coordinate_ring_degrees(L, E, None, n_max)
    twisted = coordinate_ring_degrees(L, E, L.color(0), n_max)
    w0 = L.omega(L.color(0))
    per_degree = []
    for n in range(n_max + 1):
        expected = sorted(tuple(a + b for a, b in zip(w0, w)) for w in plain.weights(n))
        per_degree.append({"n": n, "count": len(expected),
                           "matches": sorted(twisted.weights(n)) == expected})
    return {"lattice": L.name, "degrees": per_degree,
            "matches": all(d["matches"] for d in per_degree)}


# ---------------------------------------------------------------------------
# minuscule catalogs

# cap on the height of N Delta vectors compared against the list, by rank
_HEIGHT_CAP = {1: 12, 2: 12, 3: 8, 4: 6, 5: 5, 6: 4, 7: 4, 8: 3, 9: 3}


def default_height_cap(rank: int) -> int:
    return _HEIGHT_CAP.get(rank, 3)


def in_minuscule_list(v, family: str, rank: int) -> bool:
    """Membership in the parametric list of minuscule divisors of a model lattice."""
    family = family.upper()
    r = rank
    c = {i + 1: x for i, x in enumerate(v) if x}
    if not c:
        return False
    keys = set(c)

    def only(*allowed):
        return keys <= set(allowed)

    def single():
        return len(c) == 1 and next(iter(c.values())) == 1

    if family == "A":
        if single() or only(1) or only(r):
            return True
        mids = keys - {1, r}
        if len(mids) == 1:
            (d,) = mids
            if c[d] != 1:
                return False
            if 1 in keys and r not in keys and d % 2 == 1:
                return True
            if r in keys and 1 not in keys and d % 2 == (0 if r % 2 == 0 else 1):
                return True
            return False
        return r % 2 == 1 and only(1, r)
    if family == "B":
        if r % 2 == 0:
            mids = keys - {r}
            return not mids or (len(mids) == 1 and c[min(mids)] == 1 and min(mids) % 2 == 0)
        mids = keys - {1, r}
        return not mids or (len(mids) == 1 and c[min(mids)] == 1 and min(mids) % 2 == 1)
    if family == "C":
        return single() or only(1, r)
    if family == "D":
        if single():
            return True
        if r % 2 == 0:
            mids = keys - {1, r - 1, r}
            return not mids or (len(mids) == 1 and c[min(mids)] == 1 and min(mids) % 2 == 1)
        if only(1, r - 1, r):
            return True
        mids = keys - {r - 1, r}
        return (len(mids) == 1 and c[min(mids)] == 1 and min(mids) % 2 == 0)
    if family == "E":
        if single() and keys <= ({1, 6} if r != 8 else {1, 6, 7, 8}):
            return True
        bulk = {2} if r != 7 else {2, 7}
        rest = keys - bulk
        return not rest or (len(rest) == 1 and min(rest) in (3, 5) and c[min(rest)] == 1)
    if family == "F":
        return only(1) or v == (1, 1, 0, 0) or v == (0, 0, 1, 1) or (
            single() and keys <= {2, 3, 4})
    if family == "G":
        return only(1) or v == (0, 1)
    raise OrbitError(f"no minuscule list for type {family}")


def minuscule_list_instances(family: str, rank: int, bound: int = DEFAULT_PARAM_BOUND) -> list[Vec]:
    """The list's members with every parameter between 0 and ``bound``."""
    family, r = family.upper(), rank
    P = range(bound + 1)
    out = set()

    def put(*pairs):
        v = [0] * r
        for i, x in pairs:
            v[i - 1] += x
        out.add(tuple(v))

    singles = {"A": range(1, r + 1), "C": range(1, r + 1), "D": range(1, r + 1),
               "E": (1, 6) if r != 8 else (1, 6, 7, 8), "F": (2, 3, 4), "G": (2,)}
    for i in singles.get(family, ()):
        put((i, 1))
    for a, b, cc in iproduct(P, P, P):
        if family == "A":
            put((1, a)); put((r, a))
            for d in range(3, r, 2):
                put((1, a), (d, 1))
            for m_ in range(1, r):
                if m_ % 2 == (0 if r % 2 == 0 else 1):
                    put((m_, 1), (r, b))
            if r % 2:
                put((1, a), (r, b))
        elif family == "B":
            if r % 2 == 0:
                put((r, a))
                for m_ in range(2, r, 2):
                    put((m_, 1), (r, a))
            else:
                put((1, a), (r, b))
                for m_ in range(3, r, 2):
                    put((1, a), (m_, 1), (r, b))
        elif family == "C":
            put((1, a), (r, b))
        elif family == "D":
            put((1, a), (r - 1, b), (r, cc))
            if r % 2 == 0:
                for m_ in range(3, r - 1, 2):
                    put((1, a), (r - 1, b), (m_, 1), (r, cc))
            else:
                for m_ in range(2, r - 1, 2):
                    put((r - 1, a), (m_, 1), (r, b))
        elif family == "E":
            bulk = [(2, a)] + ([(7, b)] if r == 7 else [])
            put(*bulk)
            put(*bulk, (3, 1))
            put(*bulk, (5, 1))
        elif family == "F":
            put((1, a))
        elif family == "G":
            put((1, a))
    if family == "F":
        put((1, 1), (2, 1)); put((3, 1), (4, 1))
    out.discard((0,) * r)
    return sorted(out)


def minuscule_catalog_check(family: str, rank: int, param_bound: int = DEFAULT_PARAM_BOUND,
                            height_cap: int | None = None) -> dict:
    """Compare is_minuscule with the parametric list in both directions."""
    L = model(family, rank)
    cap = default_height_cap(rank) if height_cap is None else height_cap
    not_minuscule = [v for v in minuscule_list_instances(family, rank, param_bound)
                     if not is_minuscule(v, L)]
    disagreements = []
    scanned = 0
    for h in range(1, cap + 1):
        for v in _compositions(h, L.m):
            scanned += 1
            if is_minuscule(v, L) != in_minuscule_list(v, family, rank):
                disagreements.append(v)
    return {
        "lattice": L.name,
        "param_bound": param_bound,
        "height_cap": cap,
        "scanned": scanned,
        "listed_not_minuscule": [list(v) for v in not_minuscule],
        "disagreements": [list(v) for v in disagreements],
        "agrees": not not_minuscule and not disagreements,
    }
