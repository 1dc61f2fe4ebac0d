"""Root systems, weights and representation multiplicities.

Everything is exact: weights are integer tuples in the fundamental-weight
basis, roots are integer tuples in the simple-root basis, and anything that
needs division goes through :class:`fractions.Fraction`.

Simple roots are numbered as in Bourbaki.  In type E the branch node is
node 2, so that the chain reads 1-3-4-5-6(-7-8) with 2 attached to 4.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product as iproduct

Weight = tuple[int, ...]
Root = tuple[int, ...]

DEFAULT_DIM_CAP = 10**6

_CLASSICAL_COUNT = {
    "A": lambda r: r * (r + 1) // 2,
    "B": lambda r: r * r,
    "C": lambda r: r * r,
    "D": lambda r: r * (r - 1),
    "E": lambda r: {6: 36, 7: 63, 8: 120}[r],
    "F": lambda r: 24,
    "G": lambda r: 6,
}


class CapExceeded(Exception):
    """A computation was refused because a representation is too large."""

    def __init__(self, dimension: int, cap: int):
        super().__init__(f"dimension {dimension} exceeds cap {cap}")
        self.dimension = dimension
        self.cap = cap


def _edges(family: str, rank: int) -> list[tuple[int, int]]:
    if family in "ABCF" or family == "G":
        return [(i, i + 1) for i in range(rank - 1)]
    if family == "D":
        return [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
    if family == "E":
        return [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, rank - 1)]
    raise ValueError(family)


def _validate(family: str, rank: int) -> None:
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": 6 <= rank <= 8,
        "F": rank == 4,
        "G": rank == 2,
    }.get(family)
    if not ok:
        raise ValueError(f"invalid root system type {family}{rank}")


def _cartan(family: str, rank: int) -> tuple[list[list[int]], list[int]]:
    """Cartan matrix C[i][j] = <alpha_i^vee, alpha_j> and the symmetrizer d.

    d[i] is half the squared length of alpha_i (short roots of B, C, F get
    1, long ones 2; G2 uses 1 and 3), so that d[i] * C[i][j] is symmetric.
    """
    c = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j in _edges(family, rank):
        c[i][j] = c[j][i] = -1
    d = [1] * rank
    if family == "B":
        c[rank - 1][rank - 2] = -2
        d = [2] * (rank - 1) + [1]
    elif family == "C":
        c[rank - 2][rank - 1] = -2
        d = [1] * (rank - 1) + [2]
    elif family == "F":
        c[2][1] = -2
        d = [2, 2, 1, 1]
    elif family == "G":
        c[0][1] = -3
        d = [1, 3]
    return c, d


def _invert(matrix: list[list[int]]) -> list[list[Fraction]]:
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _closure_roots(cartan: list[list[int]]) -> list[Root]:
    """Positive roots by adding simple roots, using root strings."""
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                pairing = sum(cartan[i][j] * beta[j] for j in range(n))
                # p = how far beta - k alpha_i stays a root
                p = 0
                probe = list(beta)
                while True:
                    probe[i] -= 1
                    if tuple(probe) in roots:
                        p += 1
                    else:
                        break
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    return sorted(roots, key=lambda r: (sum(r), r))


@dataclass(frozen=True)
class RootDatum:
    family: str
    rank: int
    cartan_matrix: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[int, ...]
    positive_roots: tuple[Root, ...]
    fundamental_weights: tuple[tuple[Fraction, ...], ...]
    components: tuple[tuple[str, int], ...] = field(default=())

    @cached_property
    def rho(self) -> tuple[Fraction, ...]:
        """Half the sum of positive roots, in simple-root coordinates."""
        return tuple(Fraction(sum(r[k] for r in self.positive_roots), 2)
                     for k in range(self.rank))

    @cached_property
    def root_weights(self) -> tuple[Weight, ...]:
        return tuple(self.root_to_weight(b) for b in self.positive_roots)

    @property
    def label(self) -> str:
        return "x".join(f"{f}{r}" for f, r in self.components)

    def root_to_weight(self, beta) -> Weight:
        c = self.cartan_matrix
        return tuple(sum(c[i][j] * beta[j] for j in range(self.rank))
                     for i in range(self.rank))

    def simple_root(self, i: int) -> Weight:
        return tuple(self.cartan_matrix[k][i] for k in range(self.rank))

    def weight_to_root(self, lam) -> tuple[Fraction, ...]:
        fw = self.fundamental_weights
        return tuple(sum((lam[i] * fw[i][k] for i in range(self.rank)), Fraction(0))
                     for k in range(self.rank))

    def inner(self, lam, mu) -> Fraction:
        """Invariant form on weights given in fundamental coordinates."""
        mu_root = self.weight_to_root(mu)
        return sum((lam[k] * self.symmetrizer[k] * mu_root[k] for k in range(self.rank)),
                   Fraction(0))

    def highest_root(self) -> Root:
        """Highest root of the first (or only) simple component."""
        return self.positive_roots_of_component(0)[-1]

    def positive_roots_of_component(self, index: int) -> list[Root]:
        start = sum(r for _, r in self.components[:index])
        stop = start + self.components[index][1]
        inside = [b for b in self.positive_roots
                  if all(b[k] == 0 for k in range(self.rank) if not start <= k < stop)]
        return sorted(inside, key=lambda b: (sum(b), b))


def _assemble(components: list[tuple[str, int]]) -> RootDatum:
    rank = sum(r for _, r in components)
    cartan = [[0] * rank for _ in range(rank)]
    sym: list[int] = []
    off = 0
    for fam, r in components:
        c, d = _cartan(fam, r)
        for i in range(r):
            for j in range(r):
                cartan[off + i][off + j] = c[i][j]
        sym.extend(d)
        off += r
    inv = _invert(cartan)
    # column i of the inverse Cartan matrix is omega_i in root coordinates
    fw = tuple(tuple(inv[k][i] for k in range(rank)) for i in range(rank))
    roots = tuple(_closure_roots(cartan))
    fam = components[0][0] if len(components) == 1 else "x".join(f"{f}{r}" for f, r in components)
    return RootDatum(fam, rank, tuple(map(tuple, cartan)), tuple(sym), roots, fw,
                     tuple(components))


def build_root_system(family: str, rank: int) -> RootDatum:
    family = family.upper()
    _validate(family, rank)
    datum = _assemble([(family, rank)])
    assert len(datum.positive_roots) == _CLASSICAL_COUNT[family](rank)
    return datum


def product_root_system(*parts: tuple[str, int]) -> RootDatum:
    """Semisimple root datum with block-diagonal Cartan matrix."""
    for fam, r in parts:
        _validate(fam.upper(), r)
    return _assemble([(f.upper(), r) for f, r in parts])


def parse_type(text: str) -> RootDatum:
    """'E8' -> E8, 'A2xA3' -> product."""
    parts = []
    for piece in text.upper().split("X"):
        parts.append((piece[0], int(piece[1:])))
    if len(parts) == 1:
        return build_root_system(*parts[0])
    return product_root_system(*parts)


def is_dominant(lam) -> bool:
    return all(x >= 0 for x in lam)


def root_coordinates(lam, datum: RootDatum) -> tuple[Fraction, ...]:
    return datum.weight_to_root(lam)


def dominance_leq(lam, mu, datum: RootDatum) -> bool:
    """True iff mu - lam is a nonnegative integer combination of simple roots."""
    diff = datum.weight_to_root(tuple(m - l for l, m in zip(lam, mu)))
    return all(x.denominator == 1 and x >= 0 for x in diff)


def weyl_dim(lam, datum: RootDatum) -> int:
    if not is_dominant(lam):
        raise ValueError(f"weight {tuple(lam)} is not dominant")
    d = datum.symmetrizer
    num = 1
    den = 1
    for beta in datum.positive_roots:
        # (lam + rho, beta) with rho = (1,...,1) in fundamental coordinates
        num *= sum((lam[k] + 1) * d[k] * beta[k] for k in range(datum.rank))
        den *= sum(d[k] * beta[k] for k in range(datum.rank))
    q, r = divmod(num, den)
    assert r == 0
    return q


def _reflect(v: list[int], i: int, datum: RootDatum) -> None:
    a = v[i]
    col = datum.cartan_matrix
    for k in range(datum.rank):
        v[k] -= a * col[k][i]


def dominant_conjugate(lam, datum: RootDatum) -> tuple[Weight, int]:
    """Dominant Weyl conjugate and the parity of the number of reflections used."""
    v = list(lam)
    sign = 1
    while True:
        i = next((k for k, x in enumerate(v) if x < 0), None)
        if i is None:
            return tuple(v), sign
        _reflect(v, i, datum)
        sign = -sign


def _depth(lam, mu, datum: RootDatum) -> int:
    return int(sum(datum.weight_to_root(tuple(a - b for a, b in zip(lam, mu)))))


def dominant_below(lam, datum: RootDatum) -> list[Weight]:
    """Dominant weights mu <= lam, by increasing height of lam - mu.

    Uses the fact that dominant weights below lam are connected to lam by
    subtracting positive roots one at a time while staying dominant.
    """
    lam = tuple(lam)
    if not is_dominant(lam):
        raise ValueError("weight must be dominant")
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for rw in datum.root_weights:
                nu = tuple(a - b for a, b in zip(mu, rw))
                if is_dominant(nu) and nu not in seen:
                    seen.add(nu)
                    nxt.append(nu)
        frontier = nxt
    return sorted(seen, key=lambda mu: (_depth(lam, mu, datum), mu))


def weight_multiplicities(lam, datum: RootDatum, cap: int | None = DEFAULT_DIM_CAP) -> dict[Weight, int]:
    """Freudenthal multiplicities of the dominant weights of V(lam)."""
    lam = tuple(lam)
    dim = weyl_dim(lam, datum)
    if cap is not None and dim > cap:
        raise CapExceeded(dim, cap)
    return _freudenthal(lam, datum)


def _freudenthal(lam: Weight, datum: RootDatum) -> dict[Weight, int]:
    rho = (1,) * datum.rank
    dominant = dominant_below(lam, datum)
    mult: dict[Weight, int] = {}
    conj_cache: dict[Weight, Weight] = {}
    roots = list(zip(datum.root_weights, datum.positive_roots))
    lr = tuple(a + b for a, b in zip(lam, rho))
    norm_top = datum.inner(lr, lr)

    def m_of(w: Weight) -> int:
        dom = conj_cache.get(w)
        if dom is None:
            dom = dominant_conjugate(w, datum)[0]
            conj_cache[w] = dom
        return mult.get(dom, 0)

    d = datum.symmetrizer
    for mu in dominant:
        if mu == lam:
            mult[mu] = 1
            continue
        total = Fraction(0)
        for rw, beta in roots:
            k = 1
            while True:
                w = tuple(a + k * b for a, b in zip(mu, rw))
                m = m_of(w)
                if m == 0:
                    # root strings through a weight are unbroken
                    break
                total += m * sum(w[j] * d[j] * beta[j] for j in range(datum.rank))
                k += 1
        mr = tuple(a + b for a, b in zip(mu, rho))
        value = 2 * total / (norm_top - datum.inner(mr, mr))
        assert value.denominator == 1
        if value:
            mult[mu] = int(value)
    return mult


def weyl_orbit(mu, datum: RootDatum) -> list[Weight]:
    mu = tuple(mu)
    seen = {mu}
    stack = [mu]
    while stack:
        w = stack.pop()
        for i in range(datum.rank):
            if w[i] > 0:
                v = list(w)
                _reflect(v, i, datum)
                v = tuple(v)
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
    return sorted(seen)


def weight_system(lam, datum: RootDatum, cap: int | None = DEFAULT_DIM_CAP) -> dict[Weight, int]:
    """All weights of V(lam) with multiplicities."""
    out = {}
    for mu, m in weight_multiplicities(lam, datum, cap).items():
        for w in weyl_orbit(mu, datum):
            out[w] = m
    return out


def tensor_decomposition(lam, mu, datum: RootDatum, cap: int | None = DEFAULT_DIM_CAP) -> dict[Weight, int]:
    """V(lam) (x) V(mu) as {highest weight: multiplicity} (Klimyk's rule)."""
    lam, mu = tuple(lam), tuple(mu)
    if weyl_dim(lam, datum) < weyl_dim(mu, datum):
        lam, mu = mu, lam
    small = weight_system(mu, datum, cap)
    out: dict[Weight, int] = {}
    for kappa, m in small.items():
        v = [a + b + 1 for a, b in zip(lam, kappa)]
        sign = 1
        while True:
            i = next((k for k, x in enumerate(v) if x < 0), None)
            if i is None:
                break
            _reflect(v, i, datum)
            sign = -sign
        if 0 in v:
            continue
        nu = tuple(x - 1 for x in v)
        out[nu] = out.get(nu, 0) + sign * m
    return {k: v for k, v in sorted(out.items()) if v}


def tensor_multiplicity(lam, mu, nu, datum: RootDatum, cap: int | None = DEFAULT_DIM_CAP) -> int:
    for w in (lam, mu, nu):
        if not is_dominant(w):
            raise ValueError("weights must be dominant")
    if cap is not None:
        small = min(weyl_dim(lam, datum), weyl_dim(mu, datum))
        if small > cap:
            raise CapExceeded(small, cap)
    return tensor_decomposition(lam, mu, datum, cap).get(tuple(nu), 0)


def weight_positive_part(gamma_weight) -> tuple[Weight, Weight]:
    plus = tuple(max(x, 0) for x in gamma_weight)
    minus = tuple(max(-x, 0) for x in gamma_weight)
    return plus, minus


def weight_covering_differences(datum: RootDatum, max_rank: int = 8,
                                exhaustive: bool = False) -> list[Root]:
    """gamma in N S whose positive part covers its negative part.

    Candidates are the positive roots (covers in the dominance order of
    dominant weights differ by a positive root).  With ``exhaustive`` every
    gamma of height at most that of the highest root is tried instead.
    """
    if datum.rank > max_rank:
        raise ValueError(f"rank {datum.rank} exceeds enumeration bound {max_rank}")
    if exhaustive:
        top = max(sum(b) for b in datum.positive_roots)
        cands = [g for g in iproduct(range(top + 1), repeat=datum.rank)
                 if 0 < sum(g) <= top]
    else:
        cands = list(datum.positive_roots)
    out = []
    for gamma in cands:
        plus, minus = weight_positive_part(datum.root_to_weight(gamma))
        between = [nu for nu in dominant_below(plus, datum)
                   if nu != plus and nu != minus and dominance_leq(minus, nu, datum)]
        if not between:
            out.append(tuple(gamma))
    return sorted(out)


def fundamental_support(lam) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(lam) if x)

