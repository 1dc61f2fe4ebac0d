"""Colors, spherical roots and the order they induce on N-combinations of colors.

A lattice stores the pairing matrix ``pairing[d][s]`` (coefficient of color
``d`` in spherical root ``s``), the weight of every color in fundamental
coordinates, and the simple-root expansion of every spherical root.

Divisors are integer tuples indexed by colors; elements of N Sigma are
integer tuples indexed by spherical roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product as iproduct

from .lie_core import RootDatum, Weight, fundamental_support

Vec = tuple[int, ...]

DEFAULT_HT_BOUND = 4


class LatticeError(ValueError):
    pass


@dataclass(eq=False)
class WonderfulLattice:
    name: str
    datum: RootDatum
    colors: tuple[str, ...]
    spherical_roots: tuple[str, ...]
    pairing: tuple[tuple[int, ...], ...]
    weight_map: tuple[Weight, ...]
    expansions: tuple[tuple[int, ...], ...]
    strict: bool = True
    symmetric_quotients: tuple[frozenset[int], ...] = ()
    kind: tuple = ()
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def m(self) -> int:
        return len(self.colors)

    @property
    def n(self) -> int:
        return len(self.spherical_roots)

    def color(self, i: int) -> Vec:
        return tuple(int(k == i) for k in range(self.m))

    def zero(self) -> Vec:
        return (0,) * self.m

    def divisor(self, coeffs: dict[int, int]) -> Vec:
        """Divisor from {color index: coefficient} (0-based)."""
        return tuple(coeffs.get(k, 0) for k in range(self.m))

    def embed(self, gamma) -> Vec:
        """Image of gamma in Z Delta."""
        return tuple(sum(c * g for c, g in zip(row, gamma)) for row in self.pairing)

    def omega(self, divisor) -> Weight:
        r = self.datum.rank
        return tuple(sum(divisor[d] * self.weight_map[d][k] for d in range(self.m))
                     for k in range(r))

    def expansion(self, gamma) -> tuple[int, ...]:
        r = self.datum.rank
        return tuple(sum(gamma[s] * self.expansions[s][k] for s in range(self.n))
                     for k in range(r))

    def simple_support(self, gamma) -> frozenset[int]:
        return frozenset(k for k, x in enumerate(self.expansion(gamma)) if x)

    # -- exact solve of pairing * gamma = v -------------------------------

    def _solver(self):
        solver = self._cache.get("solver")
        if solver is None:
            solver = _left_inverse(self.pairing, self.m, self.n)
            self._cache["solver"] = solver
        return solver

    def sigma_coords(self, v) -> Vec | None:
        """gamma in Z Sigma with embed(gamma) == v, or None."""
        if self.n == 0:
            return () if all(x == 0 for x in v) else None
        rows, inv, den = self._solver()
        gamma = []
        for s in range(self.n):
            q, r = divmod(sum(c * v[t] for c, t in zip(inv[s], rows)), den)
            if r:
                return None
            gamma.append(q)
        gamma = tuple(gamma)
        return gamma if self.embed(gamma) == tuple(v) else None

    # -- bookkeeping --------------------------------------------------------

    def root_heights(self) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...], int]:
        """Scaled simple-root coordinates of each color's weight (for pruning)."""
        got = self._cache.get("root_heights")
        if got is None:
            fr = [self.datum.weight_to_root(w) for w in self.weight_map]
            den = 1
            for row in fr:
                for x in row:
                    den = den * x.denominator // math.gcd(den, x.denominator)
            scaled = tuple(tuple(int(x * den) for x in row) for row in fr)
            got = (tuple(sum(r) for r in scaled), scaled, den)
            self._cache["root_heights"] = got
        return got

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "group": self.datum.label,
            "colors": list(self.colors),
            "spherical_roots": list(self.spherical_roots),
            "pairing": [list(r) for r in self.pairing],
            "weight_map": [list(w) for w in self.weight_map],
            "simple_root_expansions": [list(e) for e in self.expansions],
            "strict": self.strict,
        }


def _left_inverse(pairing, m: int, n: int):
    """Pick n independent rows of the pairing matrix and invert them."""
    rows: list[int] = []
    basis: list[list[Fraction]] = []
    for d in range(m):
        v = [Fraction(x) for x in pairing[d]]
        for piv, b in basis_pivots(basis):
            if v[piv]:
                f = v[piv] / b[piv]
                v = [x - f * y for x, y in zip(v, b)]
        if any(v):
            rows.append(d)
            basis.append(v)
        if len(rows) == n:
            break
    if len(rows) < n:
        raise LatticeError("spherical roots are not linearly independent in Z Delta")
    sub = [[Fraction(pairing[d][s]) for s in range(n)] for d in rows]
    # solve sub * gamma = v_rows  ->  gamma = sub^{-1} v_rows
    inv = _inverse(sub)
    den = 1
    for row in inv:
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
    return rows, tuple(tuple(int(x * den) for x in row) for row in inv), den


def basis_pivots(basis):
    for b in basis:
        piv = next(i for i, x in enumerate(b) if x)
        yield piv, b


def _inverse(a: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


# ---------------------------------------------------------------------------
# vector helpers


def add(a, b) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def height(v) -> int:
    return sum(v)


def support(v) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(v) if x)


def positive_part(v) -> Vec:
    return tuple(max(x, 0) for x in v)


def negative_part(v) -> Vec:
    return tuple(max(-x, 0) for x in v)


def nonneg(v) -> bool:
    return all(x >= 0 for x in v)


def leq(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# order and bounded searches


def check_lattice(L: WonderfulLattice) -> list[str]:
    """Structural problems of a lattice; empty when all invariants hold."""
    problems = []
    datum = L.datum
    for d, w in enumerate(L.weight_map):
        if len(w) != datum.rank or any(x < 0 for x in w):
            problems.append(f"weight of {L.colors[d]} is not dominant")
    for s in range(L.n):
        col = tuple(L.pairing[d][s] for d in range(L.m))
        pushed = L.omega(col)
        expected = datum.root_to_weight(L.expansions[s])
        if pushed != expected:
            problems.append(f"{L.spherical_roots[s]}: pushed pairing {pushed} != expansion {expected}")
        if any(x < 0 for x in L.expansions[s]):
            problems.append(f"{L.spherical_roots[s]}: expansion not in N S")
    try:
        _left_inverse(L.pairing, L.m, L.n)
    except LatticeError as exc:
        problems.append(str(exc))
    return problems


def sigma_leq(E, F, L: WonderfulLattice) -> Vec | None:
    """gamma in N Sigma with F - E = gamma, or None when E is not below F."""
    gamma = L.sigma_coords(sub(F, E))
    if gamma is None or not nonneg(gamma):
        return None
    return gamma


def sigma_height_bound(X, L: WonderfulLattice) -> int:
    """Largest Sigma-height of gamma with X - gamma in N Delta.

    Every dominant weight has nonnegative simple-root coordinates and every
    spherical root contributes at least 2 to the simple-root height.
    """
    heights, _, den = L.root_heights()
    total = sum(X[d] * heights[d] for d in range(L.m))
    return int(Fraction(total, den)) // 2


def below(X, L: WonderfulLattice) -> list[tuple[Vec, Vec]]:
    """All (E, gamma) with E in N Delta, gamma in N Sigma and E + gamma = X.

    Candidates E are enumerated color by color, pruned by requiring that
    omega(X) - omega(E) have nonnegative simple-root coordinates (which
    holds whenever X - E is in N Sigma).
    """
    X = tuple(X)
    cache = L._cache.setdefault("below", {})
    got = cache.get(X)
    if got is not None:
        return got
    if not nonneg(X):
        raise LatticeError("divisor must lie in N Delta")
    _, scaled, _ = L.root_heights()
    r = L.datum.rank
    target = [sum(X[d] * scaled[d][k] for d in range(L.m)) for k in range(r)]
    for d in range(L.m):
        if not any(scaled[d]):
            raise LatticeError(f"color {L.colors[d]} has zero weight")
    out: list[tuple[Vec, Vec]] = []
    current = [0] * L.m

    def rec(d: int, room: list[int]) -> None:
        if d == L.m:
            E = tuple(current)
            gamma = sigma_leq(E, X, L)
            if gamma is not None:
                out.append((E, gamma))
            return
        row = scaled[d]
        top = min((room[k] // row[k] for k in range(r) if row[k]), default=0)
        for c in range(top + 1):
            current[d] = c
            rec(d + 1, [room[k] - c * row[k] for k in range(r)])
        current[d] = 0

    rec(0, target)
    out.sort(key=lambda p: (height(p[1]), p[1], p[0]))
    cache[X] = out
    return out


def sections_decomposition(F, L: WonderfulLattice) -> list[tuple[Vec, Vec]]:
    return below(F, L)


def is_minuscule(D, L: WonderfulLattice) -> bool:
    return len(below(D, L)) == 1


def _minimal_nonzero(gammas: list[Vec]) -> set[Vec]:
    pool = sorted({g for g in gammas if any(g)}, key=height)
    minimal: list[Vec] = []
    for g in pool:
        if not any(leq(h, g) for h in minimal):
            minimal.append(g)
    return set(minimal)


def covered_by(X, L: WonderfulLattice) -> list[tuple[Vec, Vec]]:
    """Divisors covered by X, with the covering difference."""
    items = below(X, L)
    minimal = _minimal_nonzero([g for _, g in items])
    return [(E, g) for E, g in items if g in minimal]


def divisors_up_to(L: WonderfulLattice, ht_max: int, ht_min: int = 1):
    for h in range(ht_min, ht_max + 1):
        for combo in _compositions(h, L.m):
            yield combo


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for idx in combinations(range(total + parts - 1), parts - 1):
        prev = -1
        vec = []
        for i in idx:
            vec.append(i - prev - 1)
            prev = i
        vec.append(total + parts - 1 - prev - 1)
        yield tuple(vec)


def covering_differences(L: WonderfulLattice, support_filter: bool = False,
                         ht_bound: int | None = None) -> list[Vec]:
    """Covering differences gamma with ht(gamma+) <= ht_bound, sorted.

    For each candidate positive part X the divisors covered by X are read
    off the poset of elements below X; gamma is kept when the covered
    divisor has support disjoint from X (so that X is exactly gamma+).
    """
    bound = DEFAULT_HT_BOUND if ht_bound is None else ht_bound
    key = ("covers", bound)
    got = L._cache.get(key)
    if got is None:
        found = set()
        for X in divisors_up_to(L, bound):
            sx = support(X)
            for E, g in covered_by(X, L):
                if not (support(E) & sx):
                    found.add(g)
        got = sorted(found)
        L._cache[key] = got
    if support_filter:
        full = frozenset(range(L.datum.rank))
        return [g for g in got if L.simple_support(g) == full]
    return list(got)


def is_covering_difference(gamma, L: WonderfulLattice) -> bool:
    """Direct test: no 0 < g' < gamma with gamma- + g' in N Delta."""
    v = L.embed(gamma)
    minus = negative_part(v)
    for g in iproduct(*(range(x + 1) for x in gamma)):
        if any(g) and tuple(g) != tuple(gamma) and nonneg(add(minus, L.embed(g))):
            return False
    return any(gamma)


def brute_force_covering_differences(L: WonderfulLattice, sigma_height: int) -> list[Vec]:
    """Every covering difference of Sigma-height <= sigma_height (slow oracle)."""
    out = []
    for h in range(1, sigma_height + 1):
        for g in _compositions(h, L.n):
            if is_covering_difference(g, L):
                out.append(g)
    return sorted(out)


def check_2ht(L: WonderfulLattice, ht_bound: int | None = None) -> dict:
    covers = covering_differences(L, ht_bound=ht_bound)
    bad = [g for g in covers if height(positive_part(L.embed(g))) > 2]
    return {
        "lattice": L.name,
        "covering_differences": len(covers),
        "violations": bad,
        "holds": not bad,
        "max_positive_height": max((height(positive_part(L.embed(g))) for g in covers), default=0),
    }


def is_low_triple(D, E, F, L: WonderfulLattice) -> bool:
    D, E, F = tuple(D), tuple(E), tuple(F)
    if sigma_leq(F, add(D, E), L) is None:
        raise LatticeError("triple requires F <=_Sigma D + E")
    return _lowering(D, E, F, L) is None


def _lowering(D, E, F, L: WonderfulLattice):
    """Some (D', E') != (D, E) below (D, E) still dominating F, else None."""
    best = None
    for D1, gd in below(D, L):
        for E1, ge in below(E, L):
            if D1 == D and E1 == E:
                continue
            g = sigma_leq(F, add(D1, E1), L)
            if g is not None:
                cand = (height(g), D1, E1)
                if best is None or cand < best:
                    best = cand
    return None if best is None else (best[1], best[2])


def low_fundamental_triples(L: WonderfulLattice, support_filter: bool = False,
                            include_trivial: bool = False) -> list[tuple[Vec, Vec, Vec]]:
    full = frozenset(range(L.datum.rank))
    out = []
    for i in range(L.m):
        for j in range(i, L.m):
            D, E = L.color(i), L.color(j)
            for F, g in below(add(D, E), L):
                if not any(g) and not include_trivial:
                    continue
                if support_filter and L.simple_support(g) != full:
                    continue
                if _lowering(D, E, F, L) is None:
                    out.append((D, E, F))
    out.sort(key=lambda t: (height(add(t[0], t[1])), height(t[2]), t))
    return out


def supports_disjoint(D, E, L: WonderfulLattice) -> bool:
    return not (fundamental_support(L.omega(D)) & fundamental_support(L.omega(E)))


# ---------------------------------------------------------------------------
# distinguished and faithful


def fm_feasible(rows: list[list[Fraction]], rhs: list[Fraction]) -> bool:
    """Exact Fourier-Motzkin test for {x : rows . x >= rhs}."""
    system = [(list(map(Fraction, r)), Fraction(b)) for r, b in zip(rows, rhs)]
    nvars = len(rows[0]) if rows else 0
    for var in range(nvars):
        pos, neg, rest = [], [], []
        for r, b in system:
            (pos if r[var] > 0 else neg if r[var] < 0 else rest).append((r, b))
        new = rest
        for rp, bp in pos:
            for rn, bn in neg:
                a, c = -rn[var], rp[var]
                combo = [a * x + c * y for x, y in zip(rp, rn)]
                new.append((combo, a * bp + c * bn))
        system = _dedupe(new)
    return all(b <= 0 for _, b in system)


def _dedupe(system):
    seen = {}
    for r, b in system:
        scale = next((abs(x) for x in r if x), None)
        if scale is None:
            key = (tuple(r), b)
        else:
            r = [x / scale for x in r]
            b = b / scale
            key = tuple(r)
            # keep the tightest right-hand side for identical left sides
            if key in seen and seen[key][1] >= b:
                continue
        seen[key] = (r, b)
    return list(seen.values())


def is_distinguished(subset, L: WonderfulLattice) -> bool:
    subset = sorted(set(subset))
    if not subset:
        raise LatticeError("subset must be nonempty")
    k = len(subset)
    rows, rhs = [], []
    for t in range(k):
        rows.append([Fraction(int(t == u)) for u in range(k)])
        rhs.append(Fraction(1))
    for s in range(L.n):
        rows.append([Fraction(L.pairing[d][s]) for d in subset])
        rhs.append(Fraction(0))
    return fm_feasible(rows, rhs)


def distinguished_subsets(L: WonderfulLattice) -> list[frozenset[int]]:
    got = L._cache.get("distinguished")
    if got is None:
        got = [frozenset(c) for size in range(1, L.m + 1)
               for c in combinations(range(L.m), size) if is_distinguished(c, L)]
        L._cache["distinguished"] = got
    return got


def is_faithful(D, L: WonderfulLattice) -> bool:
    if not L.strict:
        raise LatticeError(f"lattice {L.name} is not flagged strict")
    supp = support(D)
    return all(s & supp for s in distinguished_subsets(L))


# ---------------------------------------------------------------------------
# derived lattices


def localization(L: WonderfulLattice, drop, name: str | None = None) -> WonderfulLattice:
    """Same colors, spherical roots outside ``drop`` (0-based indices)."""
    keep = [s for s in range(L.n) if s not in set(drop)]
    return WonderfulLattice(
        name or f"{L.name}/loc",
        L.datum, L.colors, tuple(L.spherical_roots[s] for s in keep),
        tuple(tuple(row[s] for s in keep) for row in L.pairing),
        L.weight_map, tuple(L.expansions[s] for s in keep), L.strict)


def quotient(L: WonderfulLattice, subset, name: str | None = None,
             search_height: int = 12) -> WonderfulLattice:
    """Quotient by a distinguished set of colors.

    The new spherical roots are the indecomposable elements of
    {gamma in N Sigma : c(D, gamma) = 0 for D in subset}, a free monoid.
    """
    subset = set(subset)
    if not is_distinguished(subset, L):
        raise LatticeError("quotient needs a distinguished subset")
    kernel = []
    for h in range(1, search_height + 1):
        for g in _compositions(h, L.n):
            v = L.embed(g)
            if all(v[d] == 0 for d in subset):
                if not any(leq(k, g) for k in kernel):
                    kernel.append(g)
    keep = [d for d in range(L.m) if d not in subset]
    pairing = tuple(tuple(L.embed(g)[d] for g in kernel) for d in keep)
    Q = WonderfulLattice(
        name or f"{L.name}/quot",
        L.datum, tuple(L.colors[d] for d in keep),
        tuple("+".join(f"{c}{L.spherical_roots[s]}" if c > 1 else L.spherical_roots[s]
                       for s, c in enumerate(g) if c) for g in kernel),
        pairing, tuple(L.weight_map[d] for d in keep),
        tuple(L.expansion(g) for g in kernel), L.strict)
    # freeness: the indecomposables must be linearly independent
    _left_inverse(Q.pairing, Q.m, Q.n)
    return Q
