"""Built-in lattices: model, comodel, the Spin(k) orbit family and friends.

Selectors accepted by :func:`catalog` (also used on the command line):

    model:E8   comodel:E8   bd:11,3   caseV   caseX   so_odd:4
    sl2_torus  sp8_symmetric   sp8_closure   trivial:A2   induced_comodel:E8
"""

from __future__ import annotations

from fractions import Fraction

from .lattice import LatticeError, WonderfulLattice, check_lattice
from .lie_core import RootDatum, build_root_system, product_root_system, _edges


def _unit(rank: int, i: int) -> tuple[int, ...]:
    return tuple(int(k == i) for k in range(rank))


def _finish(L: WonderfulLattice) -> WonderfulLattice:
    problems = check_lattice(L)
    if problems:
        raise LatticeError(f"{L.name}: " + "; ".join(problems))
    return L


def _pairing_from_weights(datum: RootDatum, weight_map, expansions) -> tuple[tuple[int, ...], ...]:
    """Solve omega(sum_D c(D, s) D) = expansion(s) for the pairing."""
    m = len(weight_map)
    cols = []
    for exp in expansions:
        target = datum.root_to_weight(exp)
        c = _solve_int([list(w) for w in weight_map], list(target))
        if c is None:
            raise LatticeError(f"expansion {exp} is not an integer combination of color weights")
        cols.append(c)
    return tuple(tuple(cols[s][d] for s in range(len(expansions))) for d in range(m))


def _solve_int(vectors: list[list[int]], target: list[int]) -> list[int] | None:
    """Integer x with sum_d x_d vectors[d] = target (vectors independent)."""
    m, r = len(vectors), len(target)
    a = [[Fraction(vectors[d][k]) for d in range(m)] + [Fraction(target[k])] for k in range(r)]
    pivots = []
    row = 0
    for col in range(m):
        piv = next((i for i in range(row, r) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        p = a[row][col]
        a[row] = [x / p for x in a[row]]
        for i in range(r):
            if i != row and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        pivots.append(col)
        row += 1
    if any(a[i][m] != 0 for i in range(row, r)) or len(pivots) < m:
        return None
    x = [a[i][m] for i in range(m)]
    if any(v.denominator != 1 for v in x):
        return None
    return [int(v) for v in x]


def model(family: str, rank: int) -> WonderfulLattice:
    """Model lattice of the simply connected group: Sigma = non-orthogonal pairs."""
    datum = build_root_system(family, rank)
    edges = _edges(datum.family, rank)
    expansions = tuple(tuple(int(k in e) for k in range(rank)) for e in edges)
    c = datum.cartan_matrix
    # c(D_i, sigma) = <sigma, alpha_i^vee>
    pairing = tuple(tuple(sum(c[i][k] * e[k] for k in range(rank)) for e in expansions)
                    for i in range(rank))
    sym = ()
    if datum.family == "A" and rank % 2 == 1 and rank > 1:
        sym = (frozenset(range(0, rank, 2)),)
    if datum.family == "E" and rank == 6:
        # {D2, D3, D4, D5}: the quotient is symmetric
        sym = (frozenset({1, 2, 3, 4}),)
    return _finish(WonderfulLattice(
        f"model:{datum.family}{rank}", datum,
        tuple(f"D{i + 1}" for i in range(rank)),
        tuple(f"s{i + 1}" for i in range(len(edges))),
        pairing, tuple(_unit(rank, i) for i in range(rank)), expansions,
        symmetric_quotients=sym, kind=("model", datum.family, rank)))


def _comodel_weights(cotype: str, r: int):
    """Acting group and color weights as {global fundamental index: coeff}."""
    if cotype == "E":
        table = {
            6: (("A", 5), [{2: 1}, {3: 1}, {2: 1, 5: 1}, {1: 1, 3: 1, 5: 1}, {1: 1, 4: 1}, {4: 1}]),
            7: (("A", 6), [{3: 1}, {4: 1}, {3: 1, 6: 1}, {2: 1, 4: 1, 6: 1}, {2: 1, 5: 1},
                           {1: 1, 5: 1}, {1: 1}]),
            8: (("D", 7), [{3: 1}, {4: 1}, {3: 1, 6: 1}, {2: 1, 4: 1, 6: 1}, {2: 1, 5: 1},
                           {1: 1, 5: 1}, {1: 1, 7: 1}, {7: 1}]),
        }
        if r not in table:
            raise LatticeError(f"no comodel of cotype E{r}")
        part, ws = table[r]
        # 1-based fundamental indices of a single factor
        return [part], [{k - 1: v for k, v in w.items()} for w in ws]
    if cotype == "A":
        if r % 2 == 0:
            mm = r // 2
            if mm < 2:
                raise LatticeError("cotype A_{2m} needs m >= 2")
            parts = [("A", mm - 1), ("A", mm)]
            off = mm - 1

            def w(i=None, j=None):
                out = {}
                if i:
                    out[i - 1] = 1
                if j:
                    out[off + j - 1] = 1
                return out
            ws = {1: w(j=1), 2 * mm: w(j=mm)}
            for i in range(1, mm):
                ws[2 * i] = w(i, i)
            for i in range(2, mm + 1):
                ws[2 * i - 1] = w(i - 1, i)
        else:
            mm = (r - 1) // 2
            if mm < 1:
                raise LatticeError("cotype A_{2m+1} needs m >= 1")
            parts = [("A", mm), ("A", mm)]
            off = mm

            def w(i=None, j=None):
                out = {}
                if i:
                    out[i - 1] = 1
                if j:
                    out[off + j - 1] = 1
                return out
            ws = {1: w(1), 2 * mm + 1: w(j=mm)}
            for i in range(1, mm + 1):
                ws[2 * i] = w(i, i)
            for i in range(2, mm + 1):
                ws[2 * i - 1] = w(i, i - 1)
        return parts, [ws[k] for k in range(1, r + 1)]
    if cotype == "D":
        if r % 2 == 0:
            mm = r // 2
            if mm < 3:
                raise LatticeError("cotype D_{2m} needs m >= 3")
            parts = [("A", mm - 1), ("D", mm)]
            off = mm - 1

            def w(i=None, *js):
                out = {}
                if i:
                    out[i - 1] = 1
                for j in js:
                    out[off + j - 1] = 1
                return out
            ws = {1: w(1), 2 * mm - 2: w(mm - 1, mm - 1, mm),
                  2 * mm - 1: w(None, mm - 1), 2 * mm: w(None, mm)}
            for i in range(1, mm - 1):
                ws[2 * i] = w(i, i)
            for i in range(2, mm):
                ws[2 * i - 1] = w(i, i - 1)
        else:
            mm = (r - 1) // 2
            if mm < 2:
                raise LatticeError("cotype D_{2m+1} needs m >= 2")
            parts = [("A", mm - 1), ("D", mm + 1)]
            off = mm - 1

            def w(i=None, *js):
                out = {}
                if i:
                    out[i - 1] = 1
                for j in js:
                    out[off + j - 1] = 1
                return out
            ws = {1: w(None, 1), 2 * mm - 1: w(mm - 1, mm, mm + 1),
                  2 * mm: w(None, mm), 2 * mm + 1: w(None, mm + 1)}
            for i in range(1, mm):
                ws[2 * i] = w(i, i)
            for i in range(2, mm):
                ws[2 * i - 1] = w(i - 1, i)
        return parts, [ws[k] for k in range(1, r + 1)]
    raise LatticeError(f"no comodel of cotype {cotype}{r}")


def comodel(cotype: str, rank: int) -> WonderfulLattice:
    """Comodel lattice: pairing of the cotype model, Sigma = simple roots."""
    cotype = cotype.upper()
    base = model(cotype, rank)
    parts, ws = _comodel_weights(cotype, rank)
    datum = build_root_system(*parts[0]) if len(parts) == 1 else product_root_system(*parts)
    weight_map = tuple(tuple(w.get(k, 0) for k in range(datum.rank)) for w in ws)
    expansions = []
    for s in range(base.n):
        col = tuple(base.pairing[d][s] for d in range(base.m))
        pushed = tuple(sum(col[d] * weight_map[d][k] for d in range(base.m))
                       for k in range(datum.rank))
        root = datum.weight_to_root(pushed)
        if any(x.denominator != 1 or x < 0 for x in root):
            raise LatticeError(f"comodel {cotype}{rank}: spherical root {s + 1} is not in N S")
        expansions.append(tuple(int(x) for x in root))
    simple = sorted(expansions)
    if simple != sorted(_unit(datum.rank, k) for k in range(datum.rank)):
        raise LatticeError(f"comodel {cotype}{rank}: spherical roots are not the simple roots")
    return _finish(WonderfulLattice(
        f"comodel:{cotype}{rank}", datum, base.colors, base.spherical_roots,
        base.pairing, weight_map, tuple(expansions),
        symmetric_quotients=base.symmetric_quotients, kind=("comodel", cotype, rank)))


def induced_comodel(cotype: str, rank: int) -> WonderfulLattice:
    """Parabolic induction of a comodel lattice by one extra node in front.

    The group gains a simple root tau_0 attached to the first node; old node
    k becomes k + 1. A new color D'0 carries omega_0 and pairs with each
    spherical root through <tau_0^vee, sigma>. Colors outnumber the rank, so
    the result is not strict.
    """
    base = comodel(cotype, rank)
    fam, r0 = base.datum.components[0]
    if len(base.datum.components) != 1 or fam != "D":
        raise LatticeError(f"induction is implemented for comodels on a type D group, not {fam}")
    datum = build_root_system("D", r0 + 1)
    weight_map = ((1,) + (0,) * r0,) + tuple((0,) + tuple(w) for w in base.weight_map)
    expansions = tuple((0,) + tuple(e) for e in base.expansions)
    front = tuple(datum.root_to_weight(e)[0] for e in expansions)
    pairing = (front,) + base.pairing
    return _finish(WonderfulLattice(
        f"induced_comodel:{cotype}{rank}", datum, ("D0",) + base.colors,
        base.spherical_roots, pairing, weight_map, expansions, strict=False,
        kind=("induced_comodel", cotype, rank)))


def orbit_family_bd(k: int, s: int) -> WonderfulLattice:
    """Spin(k) lattice with colors D1..D_{s+1} and spherical roots s1..s_s."""
    if not 2 <= s <= (k - 3) / 2:
        raise LatticeError("need 2 <= s <= (k - 3)/2")
    odd = k % 2 == 1
    r = (k - 1) // 2 if odd else k // 2
    datum = build_root_system("B" if odd else "D", r)

    def eps_sum(i: int) -> tuple[int, ...]:
        # e_1 + ... + e_i in fundamental coordinates
        w = [0] * r
        if odd and i == r:
            w[r - 1] = 2
        elif not odd and i == r - 1:
            w[r - 2] = w[r - 1] = 1
        elif not odd and i == r:
            w[r - 1] = 2
        else:
            w[i - 1] = 1
        return tuple(w)

    weight_map = tuple(eps_sum(i) for i in range(1, s + 2))
    expansions = []
    for i in range(1, s):
        expansions.append(tuple(int(j in (i, i + 1)) for j in range(1, r + 1)))
    if odd:
        expansions.append(tuple(2 if j >= s + 1 else 0 for j in range(1, r + 1)))
    else:
        expansions.append(tuple(2 if s + 1 <= j <= r - 2 else 1 if j >= r - 1 else 0
                                for j in range(1, r + 1)))
    m = s + 1
    cols = []
    for i in range(1, s):
        col = [0] * m
        for j, v in ((i, 1), (i + 1, 1), (i - 1, -1), (i + 2, -1)):
            if 1 <= j <= m:
                col[j - 1] += v
        cols.append(col)
    last = [0] * m
    last[s] += 2
    last[s - 1] -= 2
    cols.append(last)
    pairing = tuple(tuple(cols[t][d] for t in range(s)) for d in range(m))
    return _finish(WonderfulLattice(
        f"bd:{k},{s}", datum, tuple(f"D{i}" for i in range(1, m + 1)),
        tuple(f"s{i}" for i in range(1, s + 1)), pairing, weight_map, tuple(expansions),
        kind=("bd", k, s)))


_CASE_PAIRING = ((2, 0, -1), (0, 1, 0), (-1, -1, 2), (0, 1, -2))


def case_v() -> WonderfulLattice:
    datum = build_root_system("E", 6)
    weight_map = ((1, 0, 0, 0, 0, 1), (0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 1, 0), (0, 0, 0, 1, 0, 0))
    expansions = ((1, 0, 0, 0, 0, 1), (0, 1, 0, 1, 0, 0), (0, 0, 1, 0, 1, 0))
    return _finish(WonderfulLattice(
        "caseV", datum, ("D1", "D2", "D3", "D4"), ("s1", "s2", "s3"),
        _CASE_PAIRING, weight_map, expansions))


def case_x() -> WonderfulLattice:
    datum = build_root_system("F", 4)
    # D2 -> omega_1 and D4 -> omega_2: the assignment that makes all three
    # pairing columns push forward to 2 alpha_4, alpha_1 + alpha_2, 2 alpha_3
    weight_map = ((0, 0, 0, 2), (1, 0, 0, 0), (0, 0, 2, 0), (0, 1, 0, 0))
    expansions = ((0, 0, 0, 2), (1, 1, 0, 0), (0, 0, 2, 0))
    return _finish(WonderfulLattice(
        "caseX", datum, ("D1", "D2", "D3", "D4"), ("s1", "s2", "s3"),
        _CASE_PAIRING, weight_map, expansions))


def so_odd_model(r: int) -> WonderfulLattice:
    """SO(2r+1) model: weights omega_1..omega_{r-1}, 2 omega_r."""
    datum = build_root_system("B", r)
    weight_map = tuple(tuple((2 if i == r - 1 else 1) * int(k == i) for k in range(r))
                       for i in range(r))
    expansions = tuple(tuple(int(k in (i, i + 1)) for k in range(r)) for i in range(r - 1))
    expansions += (tuple(2 * int(k == r - 1) for k in range(r)),)
    pairing = _pairing_from_weights(datum, weight_map, expansions)
    return _finish(WonderfulLattice(
        f"so_odd:{r}", datum, tuple(f"D{i + 1}" for i in range(r)),
        tuple(f"s{i + 1}" for i in range(r)), pairing, weight_map, expansions))


def sl2_torus() -> WonderfulLattice:
    datum = build_root_system("A", 1)
    return _finish(WonderfulLattice(
        "sl2_torus", datum, ("D+", "D-"), ("a",), ((1,), (1,)), ((1,), (1,)), ((1,),),
        strict=False))


def _sp8(closure: bool) -> WonderfulLattice:
    datum = build_root_system("C", 4)
    weight_map = ((0, 1, 0, 0), (0, 0, 0, 1))
    expansions = ((1, 2, 1, 0), (0, 0, 1, 1))
    name = "sp8_symmetric"
    if closure:
        expansions = ((1, 2, 1, 0), (0, 0, 2, 2))
        name = "sp8_closure"
    pairing = _pairing_from_weights(datum, weight_map, expansions)
    return _finish(WonderfulLattice(
        name, datum, ("D2", "D4"), ("s1", "2s2" if closure else "s2"),
        pairing, weight_map, expansions))


def trivial(family: str, rank: int) -> WonderfulLattice:
    """Rank-0 lattice: one color per fundamental weight, no spherical roots."""
    datum = build_root_system(family, rank)
    return _finish(WonderfulLattice(
        f"trivial:{datum.family}{rank}", datum, tuple(f"D{i + 1}" for i in range(rank)), (),
        tuple(() for _ in range(rank)), tuple(_unit(rank, i) for i in range(rank)), ()))


def _split_type(text: str) -> tuple[str, int]:
    return text[0].upper(), int(text[1:])


def catalog(selector: str) -> WonderfulLattice:
    """Build a lattice from a selector such as ``model:E8`` or ``bd:11,3``."""
    head, _, arg = selector.partition(":")
    head = head.strip().lower()
    try:
        if head == "model":
            return model(*_split_type(arg))
        if head == "comodel":
            return comodel(*_split_type(arg))
        if head in ("bd", "orbit_family_bd"):
            k, s = (int(x) for x in arg.split(","))
            return orbit_family_bd(k, s)
        if head == "casev":
            return case_v()
        if head == "casex":
            return case_x()
        if head in ("so_odd", "so_odd_model"):
            return so_odd_model(int(arg))
        if head == "sl2_torus":
            return sl2_torus()
        if head == "sp8_symmetric":
            return _sp8(False)
        if head == "sp8_closure":
            return _sp8(True)
        if head == "trivial":
            return trivial(*_split_type(arg))
        if head == "induced_comodel":
            return induced_comodel(*_split_type(arg))
    except (ValueError, IndexError) as exc:
        raise LatticeError(f"bad selector {selector!r}: {exc}") from exc
    raise LatticeError(f"unknown lattice {selector!r}")
