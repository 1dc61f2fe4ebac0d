"""Reduction of multiplication-surjectivity questions to low triples.

A goal ``(D, E)`` asks whether ``V_D V_E`` fills every isotypic piece
``s^gamma V_F`` of ``V_{D+E}``.  For each ``F`` below ``D + E`` a derivation
tree is built: non-low triples are lowered to a smaller pair, low triples
of large height are split through a covered divisor, and what remains are
low triples of small height, which an oracle judges.

The measure ``(ht_Sigma(D+E-F), ht(D+E))`` drops along every edge; the
depth cap exists only to turn a bug into a loud error.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from . import catalog as cat
from . import invariant_vectors as iv
from . import settings
from .lattice import (LatticeError, Vec, WonderfulLattice, _lowering, add, below,
                      covered_by, covering_differences, height, nonneg, positive_part,
                      sigma_leq, sub, support, supports_disjoint)
from .lie_core import CapExceeded, build_root_system, fundamental_support, tensor_multiplicity

SCHEMA_VERSION = 1

STATUSES = ("trivial", "verified-by-vector", "verified-by-quotient-rule",
            "multiplicity-necessary-pass", "multiplicity-fail", "out-of-cap", "refuted")
POSITIVE = frozenset({"trivial", "verified-by-vector", "verified-by-quotient-rule"})
NEGATIVE = frozenset({"multiplicity-fail", "refuted"})

DEFAULT_DEPTH_CAP = 400


class EngineError(RuntimeError):
    """Internal failure of the reduction (never expected on valid input)."""


@dataclass
class TripleVerdict:
    triple: tuple[Vec, Vec, Vec]
    status: str
    witness: str
    result: object = None
    detail: dict = field(default_factory=dict)

    @property
    def positive(self) -> bool:
        return self.status in POSITIVE

    @property
    def negative(self) -> bool:
        return self.status in NEGATIVE

    def to_json(self) -> dict:
        out = {"triple": [list(v) for v in self.triple], "status": self.status,
               "witness": self.witness}
        if isinstance(self.result, iv.SparseTensor):
            out["result_terms"] = len(self.result.terms)
        elif self.result is not None:
            out["result"] = self.result
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Node:
    D: Vec
    E: Vec
    F: Vec
    step: str  # trivial | leaf | lowering | split
    children: list["Node"] = field(default_factory=list)
    verdict: TripleVerdict | None = None
    split: dict | None = None

    def measure(self, L: WonderfulLattice) -> tuple[int, int]:
        return triple_measure(self.D, self.E, self.F, L)

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def leaves(self):
        return [n for n in self.walk() if not n.children]

    def to_json(self, L: WonderfulLattice) -> dict:
        out = {"D": list(self.D), "E": list(self.E), "F": list(self.F), "step": self.step,
               "measure": list(self.measure(L))}
        if self.split:
            out["split"] = {k: list(v) for k, v in self.split.items()}
        if self.verdict is not None:
            out["verdict"] = self.verdict.to_json()
        if self.children:
            out["children"] = [c.to_json(L) for c in self.children]
        return out


@dataclass
class Certificate:
    lattice: str
    goal: tuple[Vec, Vec]
    n: int
    trees: list[Node]
    verdict: str  # surjective | not-surjective | inconclusive
    shortcut: str | None = None
    annotations: dict = field(default_factory=dict)
    failing: list[TripleVerdict] = field(default_factory=list)
    open_leaves: list[TripleVerdict] = field(default_factory=list)

    def leaf_verdicts(self) -> list[TripleVerdict]:
        seen, out = set(), []
        for t in self.trees:
            for leaf in t.leaves():
                v = leaf.verdict
                if v is not None and v.triple not in seen:
                    seen.add(v.triple)
                    out.append(v)
        return out

    def to_json(self, L: WonderfulLattice) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "lattice": self.lattice,
            "goal": [list(self.goal[0]), list(self.goal[1])],
            "n": self.n,
            "verdict": self.verdict,
            "shortcut": self.shortcut,
            "annotations": self.annotations,
            "failing_leaves": [v.to_json() for v in self.failing],
            "open_leaves": [v.to_json() for v in self.open_leaves],
            "trees": [t.to_json(L) for t in self.trees],
        }

    def dumps(self, L: WonderfulLattice) -> str:
        return json.dumps(self.to_json(L), sort_keys=True)


# ---------------------------------------------------------------------------
# the reduction


def triple_measure(D, E, F, L: WonderfulLattice) -> tuple[int, int]:
    gamma = sigma_leq(F, add(D, E), L)
    if gamma is None:
        raise LatticeError("triple requires F <=_Sigma D + E")
    return height(gamma), height(add(D, E))


def lemma_b_constant(L: WonderfulLattice, ht_bound: int | None = None) -> int:
    """Largest ht(gamma+) over the enumerated covering differences."""
    covers = covering_differences(L, ht_bound=ht_bound)
    return max((height(positive_part(L.embed(g))) for g in covers), default=0)


def check_constant(L: WonderfulLattice, n: int, ht_bound: int | None = None) -> None:
    for g in covering_differences(L, ht_bound=ht_bound):
        if height(positive_part(L.embed(g))) > n:
            raise LatticeError(f"covering difference {g} has ht(gamma+) > {n}")


def _split(D, E, F, L: WonderfulLattice):
    """Smallest (F1, D0, F2) for a low triple of large height."""
    X = add(D, E)
    sx = support(X)
    best = None
    for F1, _ in covered_by(X, L):
        if sigma_leq(F, F1, L) is None:
            continue
        for d in sorted(support(F1) & sx):
            D0 = L.color(d)
            top = sub(F1, D0)
            low = sub(F, D0)
            cands = [Y for Y, _ in below(top, L) if sigma_leq(low, Y, L) is not None]
            minimal = [Y for Y in cands
                       if not any(Z != Y and sigma_leq(Z, Y, L) is not None for Z in cands)]
            for F2 in minimal:
                key = (F1, D0, F2)
                if best is None or key < best:
                    best = key
    return best


def reduce_triple(D, E, F, L: WonderfulLattice, n: int | None = None,
                  depth_cap: int = DEFAULT_DEPTH_CAP, ht_bound: int | None = None) -> Node:
    """Derivation tree for ``s^gamma V_F`` inside ``V_D V_E``; leaves carry no verdict yet."""
    D, E, F = tuple(D), tuple(E), tuple(F)
    if not (nonneg(D) and nonneg(E) and nonneg(F)):
        raise LatticeError("D, E and F must lie in N Delta")
    if n is None:
        n = lemma_b_constant(L, ht_bound)
    else:
        check_constant(L, n, ht_bound)
    triple_measure(D, E, F, L)
    memo: dict = {}

    def build(D, E, F, depth: int) -> Node:
        key = (D, E, F)
        if key in memo:
            return memo[key]
        if depth > depth_cap:
            raise EngineError(f"depth cap {depth_cap} reached at {key}")
        here = triple_measure(D, E, F, L)
        if here[0] == 0:
            node = Node(D, E, F, "trivial")
        else:
            lower = _lowering(D, E, F, L)
            if lower is not None:
                node = Node(D, E, F, "lowering", [build(lower[0], lower[1], F, depth + 1)])
            elif here[1] <= n:
                node = Node(D, E, F, "leaf")
            else:
                choice = _split(D, E, F, L)
                if choice is None:
                    raise EngineError(f"no covered divisor dominates F at {key}")
                F1, D0, F2 = choice
                D1, E1 = (sub(D, D0), E) if support(D0) <= support(D) else (D, sub(E, D0))
                node = Node(D, E, F, "split",
                            [build(D0, F2, F, depth + 1), build(D1, E1, F2, depth + 1)],
                            split={"F1": F1, "D0": D0, "F2": F2})
        for child in node.children:
            if not child.measure(L) < here:
                raise EngineError(f"measure does not decrease from {key}")
        memo[key] = node
        return node

    return build(D, E, F, 0)


def edges_decrease(node: Node, L: WonderfulLattice) -> bool:
    return all(c.measure(L) < p.measure(L) for p in node.walk() for c in p.children)


# ---------------------------------------------------------------------------
# sub-diagram identification


def _candidate_types(k: int):
    out = [("A", k)]
    if k >= 2:
        out += [("B", k), ("C", k)]
    if k >= 4:
        out.append(("D", k))
    if k in (6, 7, 8):
        out.append(("E", k))
    if k == 4:
        out.append(("F", 4))
    if k == 2:
        out.append(("G", 2))
    return out


def _connected(nodes, cartan) -> bool:
    nodes = sorted(nodes)
    if not nodes:
        return False
    seen, stack = {nodes[0]}, [nodes[0]]
    while stack:
        a = stack.pop()
        for b in nodes:
            if b not in seen and cartan[a][b]:
                seen.add(b)
                stack.append(b)
    return len(seen) == len(nodes)


def diagram_isomorphisms(cartan, nodes):
    """Yield (family, rank, {node: canonical index}) matching the Cartan submatrix."""
    nodes = sorted(nodes)
    k = len(nodes)
    for fam, rank in _candidate_types(k):
        canon = build_root_system(fam, rank).cartan_matrix
        yield from ((fam, rank, m) for m in _backtrack(cartan, nodes, canon))


def _backtrack(cartan, nodes, canon):
    k = len(nodes)
    image: dict[int, int] = {}

    def rec(i: int):
        if i == k:
            yield dict(image)
            return
        a = nodes[i]
        for t in range(k):
            if t in image.values():
                continue
            if canon[t][t] != cartan[a][a]:
                continue
            if all(canon[t][image[b]] == cartan[a][b] and canon[image[b]][t] == cartan[b][a]
                   for b in nodes[:i]):
                image[a] = t
                yield from rec(i + 1)
                del image[a]

    yield from rec(0)


@dataclass(frozen=True)
class LeviReduction:
    kind: tuple
    lattice: WonderfulLattice  # canonical model lattice carrying the combinatorics
    color_map: dict
    triple: tuple[Vec, Vec, Vec]


def _combinatorial_base(L: WonderfulLattice) -> WonderfulLattice:
    if L.kind and L.kind[0] == "comodel":
        # same pairing as the cotype model: the combinatorics live there
        return cat.model(L.kind[1], L.kind[2])
    return L


def _levi_colors(base: WonderfulLattice, nodes) -> dict[int, int] | None:
    """{simple root: color} when the colors moved by ``nodes`` are its fundamental weights."""
    found: dict[int, int] = {}
    for d, w in enumerate(base.weight_map):
        local = {a: w[a] for a in nodes if w[a]}
        if not local:
            continue
        if len(local) != 1 or set(local.values()) != {1}:
            return None
        (a,) = local
        if a in found:
            return None
        found[a] = d
    return found if set(found) == set(nodes) else None


def levi_reduction(D, E, F, L: WonderfulLattice) -> LeviReduction | None:
    """Restrict a triple to the Levi of Supp(gamma) when that Levi carries a model lattice.

    Comodel lattices are restricted through the model lattice of their cotype.
    """
    base = _combinatorial_base(L)
    gamma = sigma_leq(F, add(D, E), base)
    nodes = base.simple_support(gamma)
    if len(nodes) == base.datum.rank or not _connected(nodes, base.datum.cartan_matrix):
        return None
    colors = _levi_colors(base, nodes)
    if colors is None:
        return None
    local = [s for s in range(base.n)
             if {k for k, x in enumerate(base.expansions[s]) if x} <= nodes]
    for fam, rank, phi in diagram_isomorphisms(base.datum.cartan_matrix, nodes):
        try:
            target = cat.model(fam, rank)
        except (LatticeError, ValueError):
            continue
        order = sorted(nodes, key=phi.get)
        mine = sorted((tuple(base.expansions[s][a] for a in order),
                       tuple(base.pairing[colors[a]][s] for a in order)) for s in local)
        theirs = sorted((tuple(target.expansions[s]),
                         tuple(target.pairing[d][s] for d in range(target.m)))
                        for s in range(target.n))
        if mine != theirs:
            continue
        cmap = {colors[a]: phi[a] for a in nodes}

        def restrict(v):
            out = [0] * target.m
            for d, t in cmap.items():
                out[t] = v[d]
            return tuple(out)

        head = "comodel" if L.kind and L.kind[0] == "comodel" else "model"
        return LeviReduction((head, fam, rank), target, cmap,
                             (restrict(D), restrict(E), restrict(F)))
    return None


def _unit(n: int, i: int) -> Vec:
    return tuple(int(k == i) for k in range(n))


# ---------------------------------------------------------------------------
# per-triple oracle


def _names(L: WonderfulLattice, v) -> str:
    parts = [f"{c if c > 1 else ''}{L.colors[i]}" for i, c in enumerate(v) if c]
    return "+".join(parts) or "0"


def _single(v) -> int | None:
    """1-based index when v is a single color, else None."""
    nz = [i for i, x in enumerate(v) if x]
    return nz[0] + 1 if len(nz) == 1 and v[nz[0]] == 1 else None


@lru_cache(maxsize=None)
def _tensor(name: str, *args):
    fn = {
        "model-A": iv.model_a_projection,
        "model-D": iv.model_d_projection,
        "orbit-BD": iv.orbit_bd_projection,
        "comodel-D": iv.comodel_d_projection,
        "comodel-E6:D5,D6,D2": iv._e6_phi_52,
        "comodel-E6:D3,D6,D5": iv._e6_phi_35,
        "comodel-E7:D1,D6,D3": iv._e7_phi_13,
        "comodel-E7:D6,D6,D2+D7": iv._e7_psi_66,
        "comodel-E8:D1,D1,D2": lambda: iv.contract_bilinear(iv._e8_h(1), iv._e8_h(1), iv.E8_FORM),
        "comodel-E8:D1,D5,2D2": iv._e8_phi_15,
        "comodel-E8:D1,D7,D3": iv._e8_phi_17,
        "comodel-E8:D1,D8,D7": iv._e8_phi_18,
        "comodel-E8:D3,D8,D5": iv._e8_phi_38,
        "comodel-E8:D5,D8,D2+D7": iv._e8_phi_58,
        "comodel-E8:D7,D8,D2": iv._e8_phi_78,
    }[name]
    return fn(*args)


# the diagram automorphism of E6 swapping D1 <-> D6 and D3 <-> D5
_E6_FLIP = {"D1": "D6", "D6": "D1", "D3": "D5", "D5": "D3", "D2": "D2", "D4": "D4"}


def _flip_e6(text: str) -> str:
    return "+".join(_E6_FLIP[p] for p in text.split("+"))


def _exceptional_key(kind, names) -> tuple[str, str] | None:
    """Identity id and a description for a comodel E triple given as names."""
    d, e, f = names
    pair = ",".join(sorted((d, e), key=lambda s: (len(s), s)))
    key = f"comodel-E{kind[2]}:{pair},{f}"
    table = {"comodel-E6:D5,D6,D2", "comodel-E6:D3,D6,D5", "comodel-E7:D1,D6,D3",
             "comodel-E7:D6,D6,D2+D7", "comodel-E8:D1,D1,D2", "comodel-E8:D1,D5,2D2",
             "comodel-E8:D1,D7,D3", "comodel-E8:D1,D8,D7", "comodel-E8:D3,D8,D5",
             "comodel-E8:D5,D8,D2+D7", "comodel-E8:D7,D8,D2"}
    if key in table:
        return key, "identity"
    if kind[2] == 6:
        img = tuple(sorted((_flip_e6(d), _flip_e6(e)), key=lambda s: (len(s), s)))
        key2 = f"comodel-E6:{img[0]},{img[1]},{_flip_e6(f) if f != '0' else f}"
        if key2 in table:
            return key2, "diagram automorphism image"
    return None


def vector_witness(kind: tuple, D, E, F, L: WonderfulLattice):
    """(identity id, nonzero result) for a triple of the vector table, else None.

    ``kind`` names the canonical lattice the triple lives in; ``L`` carries
    its colors.
    """
    head = kind[0]
    p, q = _single(D), _single(E)
    f = _single(F) if any(F) else 0
    if p is not None and q is not None and p > q:
        p, q = q, p
    zero = not any(F)
    if head in ("model", "comodel") and kind[1] == "A" and kind[2] % 2 == 0:
        r = kind[2]
        if p and q and zero and p + q == r + 1:
            if head == "model":
                return f"model-A:r={r},p={p},q={q}", _tensor("model-A", r, p, q)
            # V_{D_p} and V_{D_q} are dual: the invariant pairing is the witness
            return f"comodel-A:r={r},p={p},q={q}:dual-pairing", {"pairing": 1}
        return None
    if head in ("model", "comodel") and kind[1] == "D" and kind[2] % 2 == 1:
        r = kind[2]
        if not (p and q and p % 2 and q % 2 and q <= r - 2):
            return None
        if p + q <= r - 1:
            expected = _unit(L.m, p + q - 3) if p + q > 2 else L.zero()
        elif p + q == r + 1:
            expected = add(_unit(L.m, r - 2), _unit(L.m, r - 1))
        else:
            return None
        if tuple(F) != expected:
            return None
        if head == "model":
            return f"model-D:r={r},i={p},j={q}", _tensor("model-D", r, p, q)
        m = (r - 1) // 2
        t, s = (p - 1) // 2, (q - 1) // 2
        return f"comodel-D:m={m},t={t},s={s}", _tensor("comodel-D", m, t, s)
    if head == "comodel" and kind[1] == "E":
        hit = _exceptional_key(kind, (_names(L, D), _names(L, E), _names(L, F)))
        if hit is None:
            return None
        key, how = hit
        label = key if how == "identity" else f"{key}:{how}"
        return label, _tensor(key)
    if head == "bd":
        k, s = kind[1], kind[2]
        if s % 2 == 0 and p and q and f == p + q - 2 and f <= s + 1:
            return f"orbit-BD:k={k},s={s},p={p},q={q}", _tensor("orbit-BD", k, s, p, q)
    return None


def _quotient_rule(X, quotients) -> frozenset | None:
    sx = support(X)
    for q in quotients:
        if not (q & sx):
            return q
    return None


class LeafOracle:
    """Judges low triples: Levi reduction, quotient rule, vectors, multiplicities."""

    def __init__(self, cap: int | None = None):
        self.cap = settings.dim_cap() if cap is None else (cap if cap > 0 else None)
        self._memo: dict = {}

    def __call__(self, D, E, F, L: WonderfulLattice) -> TripleVerdict:
        key = (L.name, D, E, F)
        got = self._memo.get(key)
        if got is None:
            got = self._judge(tuple(D), tuple(E), tuple(F), L)
            self._memo[key] = got
        return got

    def _judge(self, D, E, F, L: WonderfulLattice) -> TripleVerdict:
        triple = (D, E, F)
        gamma = sigma_leq(F, add(D, E), L)
        if not any(gamma):
            return TripleVerdict(triple, "trivial", "gamma = 0")
        kind, K, tD, tE, tF, note = L.kind, L, D, E, F, {}
        red = levi_reduction(D, E, F, L)
        if red is not None:
            kind, K = red.kind, red.lattice
            tD, tE, tF = red.triple
            note = {"levi": f"{kind[1]}{kind[2]}",
                    "restricted": [_names(K, tD), _names(K, tE), _names(K, tF)]}
            if not any(tD) or not any(tE):
                # the restricted module is trivial on the Levi, so only gamma = 0 survives
                return TripleVerdict(triple, "refuted", "orthogonal-module rule on the Levi",
                                     detail=note)
        q = _quotient_rule(add(tD, tE), K.symmetric_quotients)
        if q is not None:
            note["quotient"] = sorted(K.colors[d] for d in q)
            return TripleVerdict(triple, "verified-by-quotient-rule",
                                 "symmetric quotient avoiding Supp(D+E)", detail=note)
        if kind:
            hit = vector_witness(kind, tD, tE, tF, K)
            if hit is not None:
                ident, result = hit
                if result:
                    return TripleVerdict(triple, "verified-by-vector", ident, result, note)
                note["vector"] = f"{ident} vanished"
        return self._multiplicity(triple, kind, K, (tD, tE, tF), L, note)

    def _multiplicity(self, triple, kind, K, local, L, note) -> TripleVerdict:
        group = K
        if kind and kind[0] == "comodel" and K is not L:
            try:
                group = cat.comodel(kind[1], kind[2])
            except LatticeError:
                note["multiplicity"] = "no acting group for this comodel"
                return TripleVerdict(triple, "out-of-cap", "multiplicity oracle", detail=note)
        elif kind and kind[0] == "comodel":
            group = L
        lam, mu, nu = (group.omega(v) for v in local)
        try:
            mult = tensor_multiplicity(lam, mu, nu, group.datum, self.cap)
        except CapExceeded as exc:
            note["multiplicity"] = str(exc)
            return TripleVerdict(triple, "out-of-cap", "multiplicity oracle", detail=note)
        note["multiplicity"] = mult
        note["weights"] = [list(lam), list(mu), list(nu)]
        note["group"] = group.datum.label
        if mult == 0:
            return TripleVerdict(triple, "multiplicity-fail",
                                 "V_F does not occur in V_D (x) V_E", mult, note)
        return TripleVerdict(triple, "multiplicity-necessary-pass",
                             "V_F occurs in V_D (x) V_E", mult, note)


# ---------------------------------------------------------------------------
# the multiplication map


def induced_colors(L: WonderfulLattice) -> frozenset[int]:
    """Colors whose weight lives on the simple roots touched by Sigma or moving no color."""
    touched = set()
    for s in range(L.n):
        touched |= {k for k, x in enumerate(L.expansions[s]) if x}
    moving = set()
    for w in L.weight_map:
        moving |= fundamental_support(w)
    touched |= set(range(L.datum.rank)) - moving
    return frozenset(d for d in range(L.m) if fundamental_support(L.weight_map[d]) <= touched)


def verify_multiplication(D, E, L: WonderfulLattice, oracle=None, n: int | None = None,
                          threads: int | None = None, ht_bound: int | None = None,
                          depth_cap: int = DEFAULT_DEPTH_CAP) -> Certificate:
    """Certificate for the surjectivity of V_D (x) V_E -> V_{D+E}."""
    D, E = tuple(D), tuple(E)
    if len(D) != L.m or len(E) != L.m or not (nonneg(D) and nonneg(E)):
        raise LatticeError("D and E must lie in N Delta")
    if n is None:
        n = lemma_b_constant(L, ht_bound)
    else:
        check_constant(L, n, ht_bound)
    annotations = {"supports_disjoint": supports_disjoint(D, E, L)}
    X = add(D, E)
    if not any(D) or not any(E):
        return Certificate(L.name, (D, E), n, [], "surjective", "zero factor", annotations)
    q = _quotient_rule(X, L.symmetric_quotients)
    if q is not None:
        annotations["quotient"] = sorted(L.colors[d] for d in q)
        return Certificate(L.name, (D, E), n, [], "surjective", "quotient rule", annotations)
    tilde = induced_colors(L)
    if not (support(D) & tilde) or not (support(E) & tilde):
        annotations["induced_colors"] = sorted(L.colors[d] for d in tilde)
        return Certificate(L.name, (D, E), n, [], "surjective", "orthogonal colors",
                           annotations)

    trees = [reduce_triple(D, E, F, L, n, depth_cap=depth_cap, ht_bound=ht_bound)
             for F, _ in below(X, L)]
    oracle = oracle or LeafOracle()
    pending = sorted({(x.D, x.E, x.F) for t in trees for x in t.leaves()})
    workers = settings.threads() if threads is None else max(1, threads)
    if workers > 1 and len(pending) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda t: oracle(*t, L), pending))
    else:
        results = [oracle(*t, L) for t in pending]
    verdicts = dict(zip(pending, results))
    for t in trees:
        for leaf in t.leaves():
            leaf.verdict = verdicts[(leaf.D, leaf.E, leaf.F)]

    failing = [v for v in results if v.negative and v.triple[:2] == (D, E)]
    open_leaves = [v for v in results if not v.positive and v not in failing]
    if failing:
        verdict = "not-surjective"
    elif open_leaves:
        verdict = "inconclusive"
    else:
        verdict = "surjective"
    return Certificate(L.name, (D, E), n, trees, verdict, None, annotations, failing,
                       open_leaves)


def fundamental_pairs(L: WonderfulLattice):
    for i in range(L.m):
        for j in range(i, L.m):
            yield L.color(i), L.color(j)


# ---------------------------------------------------------------------------
# obstructions


def closure_necessity_check(D, E, F, L: WonderfulLattice, L_closure: WonderfulLattice) -> bool:
    """E + F - D in N Sigma-bar: necessary for s^gamma V_D inside V_E V_F."""
    if tuple(L.colors) != tuple(L_closure.colors):
        raise LatticeError(f"color sets differ: {L.colors} vs {L_closure.colors}")
    return sigma_leq(tuple(D), add(tuple(E), tuple(F)), L_closure) is not None


def degeneracy_flag(L: WonderfulLattice) -> bool:
    """Some spherical root is a simple root."""
    return any(sum(e) == 1 for e in L.expansions)
