"""Command-line front end: ``wonderlat <verb> [options]``.

Every verb builds one report (metadata plus a list of uniform rows) and the
json, tsv and text renderers all print that same report.  Exit codes: 0 ok,
1 refutation, 2 usage error, 3 cap reached or inconclusive.  Errors go to
stderr as a single line ``error<TAB>kind<TAB>message``.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, settings
from . import acceptance as acc
from . import invariant_vectors as iv
from . import orbits
from .catalog import catalog
from .lattice import (
    LatticeError,
    add,
    check_2ht,
    covering_differences,
    distinguished_subsets,
    height,
    is_distinguished,
    is_faithful,
    is_low_triple,
    is_minuscule,
    low_fundamental_triples,
    positive_part,
    sigma_leq,
    _compositions,
)
from .lie_core import CapExceeded
from .surjectivity import (
    EngineError,
    LeafOracle,
    NEGATIVE,
    POSITIVE,
    fundamental_pairs,
    verify_multiplication,
)

SCHEMA_VERSION = 1
EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_OPEN = 0, 1, 2, 3

SELECTORS = ("model:<X><r>", "comodel:<X><r>", "induced_comodel:E8", "bd:<k>,<s>", "caseV",
             "caseX", "so_odd:<r>", "sl2_torus", "sp8_symmetric", "sp8_closure",
             "trivial:<X><r>")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# divisors as text


def parse_divisor(text: str, L) -> tuple[int, ...]:
    """Read ``2D2+D7`` or ``0``; color names are matched longest first."""
    text = text.strip()
    out = [0] * L.m
    if text == "0":
        return tuple(out)
    names = sorted(((c, i) for i, c in enumerate(L.colors)), key=lambda t: -len(t[0]))
    pos = 0
    while pos < len(text):
        start = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        coef = int(text[start:pos]) if pos > start else 1
        for name, i in names:
            if text.startswith(name, pos):
                out[i] += coef
                pos += len(name)
                break
        else:
            raise UsageError(f"cannot read a color at {text[pos:]!r} (colors: {', '.join(L.colors)})")
        if pos < len(text):
            if text[pos] != "+":
                raise UsageError(f"expected '+' in {text!r}")
            pos += 1
            if pos == len(text):
                raise UsageError(f"trailing '+' in {text!r}")
    return tuple(out)


def divisor_str(v, L) -> str:
    parts = [(f"{c}" if c != 1 else "") + L.colors[i] for i, c in enumerate(v) if c]
    return "+".join(parts) or "0"


def sigma_str(g, L) -> str:
    parts = [(f"{c}" if c != 1 else "") + L.spherical_roots[i] for i, c in enumerate(g) if c]
    return "+".join(parts) or "0"


def _split_args(text: str, count: int) -> list[str]:
    parts = text.split(",")
    if len(parts) != count:
        raise UsageError(f"expected {count} comma-separated divisors, got {text!r}")
    return parts


# ---------------------------------------------------------------------------
# reports


class Report:
    def __init__(self, verb: str, columns: list[str], meta: dict | None = None):
        self.verb = verb
        self.columns = columns
        self.meta = dict(meta or {})
        self.rows: list[dict] = []
        self.exit = EXIT_OK

    def add(self, **row) -> None:
        self.rows.append(row)

    def to_json(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "verb": self.verb, "meta": self.meta,
                "columns": self.columns, "rows": self.rows, "exit": self.exit}


def _cell(x) -> str:
    if isinstance(x, str):
        return x
    return json.dumps(x, sort_keys=True, separators=(",", ":"))


def render(report: Report, fmt: str) -> str:
    data = report.to_json()
    if fmt == "json":
        return json.dumps(data, sort_keys=True, indent=2)
    head = [("schema_version", SCHEMA_VERSION), ("verb", report.verb)]
    head += sorted(report.meta.items()) + [("exit", report.exit)]
    if fmt == "tsv":
        lines = [f"# {k}\t{_cell(v)}" for k, v in head]
        lines.append("\t".join(report.columns))
        lines += ["\t".join(_cell(r.get(c)) for c in report.columns) for r in report.rows]
        return "\n".join(lines)
    lines = [f"{k}: {_cell(v)}" for k, v in head]
    if report.rows:
        cells = [[_cell(r.get(c)) for c in report.columns] for r in report.rows]
        widths = [max(len(c), *(len(row[i]) for row in cells))
                  for i, c in enumerate(report.columns)]
        lines.append("  ".join(c.ljust(w) for c, w in zip(report.columns, widths)).rstrip())
        lines += ["  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# verbs


def _lattice(args):
    if not args.lattice:
        raise UsageError("--lattice is required")
    return catalog(args.lattice)


def cmd_catalog(args, cfg) -> Report:
    if not args.lattice:
        rep = Report("catalog", ["selector"])
        for s in SELECTORS:
            rep.add(selector=s)
        return rep
    L = _lattice(args)
    rep = Report("catalog", ["color", "weight", "pairing"],
                 {"lattice": L.name, "group": L.datum.label, "strict": L.strict,
                  "spherical_roots": list(L.spherical_roots),
                  "expansions": [list(e) for e in L.expansions]})
    for d in range(L.m):
        rep.add(color=L.colors[d], weight=list(L.weight_map[d]), pairing=list(L.pairing[d]))
    return rep


def cmd_covers(args, cfg) -> Report:
    L = _lattice(args)
    covers = covering_differences(L, support_filter=args.full_support, ht_bound=cfg["ht_bound"])
    rep = Report("covers", ["gamma", "delta", "positive_height"],
                 {"lattice": L.name, "full_support": args.full_support,
                  "ht_bound": cfg["ht_bound"], "count": len(covers)})
    for g in sorted(covers, key=lambda g: (height(g), g)):
        v = L.embed(g)
        rep.add(gamma=sigma_str(g, L), delta=list(v), positive_height=height(positive_part(v)))
    return rep


def cmd_check_2ht(args, cfg) -> Report:
    L = _lattice(args)
    res = check_2ht(L, cfg["ht_bound"])
    rep = Report("check-2ht", ["violation", "delta"],
                 {"lattice": L.name, "holds": res["holds"], "ht_bound": cfg["ht_bound"],
                  "covering_differences": res["covering_differences"],
                  "max_positive_height": res["max_positive_height"]})
    for g in sorted(res["violations"]):
        rep.add(violation=sigma_str(g, L), delta=list(L.embed(g)))
    rep.exit = EXIT_OK if res["holds"] else EXIT_REFUTED
    return rep


def cmd_low_triples(args, cfg) -> Report:
    L = _lattice(args)
    triples = low_fundamental_triples(L, support_filter=args.full_support,
                                      include_trivial=args.include_trivial)
    rep = Report("low-triples", ["D", "E", "F", "gamma"],
                 {"lattice": L.name, "full_support": args.full_support, "count": len(triples)})
    for D, E, F in triples:
        rep.add(D=divisor_str(D, L), E=divisor_str(E, L), F=divisor_str(F, L),
                gamma=sigma_str(sigma_leq(F, add(D, E), L), L))
    return rep


def cmd_verify_triple(args, cfg) -> Report:
    L = _lattice(args)
    if not args.triple:
        raise UsageError("--triple D,E,F is required")
    D, E, F = (parse_divisor(x, L) for x in _split_args(args.triple, 3))
    if sigma_leq(F, add(D, E), L) is None:
        raise UsageError("F is not below D + E")
    v = LeafOracle(cfg["dim_cap"])(D, E, F, L)
    rep = Report("verify-triple", ["key", "value"],
                 {"lattice": L.name, "triple": [divisor_str(x, L) for x in (D, E, F)],
                  "low": is_low_triple(D, E, F, L), "status": v.status})
    rep.add(key="witness", value=v.witness)
    for k, val in sorted(v.detail.items()):
        rep.add(key=k, value=val)
    rep.exit = (EXIT_OK if v.status in POSITIVE else
                EXIT_REFUTED if v.status in NEGATIVE else EXIT_OPEN)
    return rep


def cmd_surjectivity(args, cfg) -> Report:
    L = _lattice(args)
    if args.pair:
        pairs = [tuple(parse_divisor(x, L) for x in _split_args(args.pair, 2))]
    else:
        pairs = list(fundamental_pairs(L))
    oracle = LeafOracle(cfg["dim_cap"])
    cols = ["D", "E", "verdict", "shortcut", "failing", "open"]
    if args.certificates:
        cols.append("certificate")
    rep = Report("surjectivity", cols, {"lattice": L.name, "pairs": len(pairs)})
    verdicts = set()
    for D, E in pairs:
        cert = verify_multiplication(D, E, L, oracle, threads=cfg["threads"],
                                     ht_bound=cfg["ht_bound"])
        verdicts.add(cert.verdict)
        row = dict(D=divisor_str(D, L), E=divisor_str(E, L), verdict=cert.verdict,
                   shortcut=cert.shortcut or "",
                   failing=sorted(",".join(divisor_str(x, L) for x in v.triple)
                                  for v in cert.failing),
                   open=sorted(",".join(divisor_str(x, L) for x in v.triple)
                               for v in cert.open_leaves))
        if args.certificates:
            row["certificate"] = cert.to_json(L)
        rep.add(**row)
    rep.exit = (EXIT_REFUTED if "not-surjective" in verdicts else
                EXIT_OPEN if "inconclusive" in verdicts else EXIT_OK)
    return rep


def cmd_minuscule(args, cfg) -> Report:
    if args.against_list:
        fam, rank = args.against_list[0].upper(), int(args.against_list[1:])
        res = orbits.minuscule_catalog_check(fam, rank, args.param_bound, args.max_height)
        rep = Report("minuscule", ["kind", "divisor"],
                     {k: res[k] for k in ("lattice", "param_bound", "height_cap", "scanned",
                                          "agrees")})
        for v in res["listed_not_minuscule"]:
            rep.add(kind="listed-not-minuscule", divisor=v)
        for v in res["disagreements"]:
            rep.add(kind="disagreement", divisor=v)
        rep.exit = EXIT_OK if res["agrees"] else EXIT_REFUTED
        return rep
    L = _lattice(args)
    if args.divisor:
        D = parse_divisor(args.divisor, L)
        ok = is_minuscule(D, L)
        rep = Report("minuscule", ["divisor", "minuscule"], {"lattice": L.name})
        rep.add(divisor=divisor_str(D, L), minuscule=ok)
        return rep
    top = args.max_height or 4
    rep = Report("minuscule", ["divisor", "vector"], {"lattice": L.name, "max_height": top})
    for h in range(1, top + 1):
        for v in _compositions(h, L.m):
            if is_minuscule(v, L):
                rep.add(divisor=divisor_str(v, L), vector=list(v))
    return rep


def cmd_distinguished(args, cfg) -> Report:
    L = _lattice(args)
    rep = Report("distinguished", ["subset"], {"lattice": L.name})
    if args.subset:
        subset = [L.colors.index(c) if c in L.colors else None for c in args.subset.split(",")]
        if None in subset:
            raise UsageError(f"unknown color in {args.subset!r}")
        rep.meta["subset"] = args.subset
        rep.meta["distinguished"] = is_distinguished(subset, L)
    if args.faithful:
        D = parse_divisor(args.faithful, L)
        rep.meta["divisor"] = divisor_str(D, L)
        rep.meta["faithful"] = (is_faithful(D, L) if L.strict
                                else orbits.faithful_by_subsets(D, L))
    for s in sorted(distinguished_subsets(L), key=lambda s: (len(s), sorted(s))):
        rep.add(subset=",".join(L.colors[d] for d in sorted(s)))
    return rep


def cmd_orbit_verdict(args, cfg) -> Report:
    basis = None if args.surjectivity == "none" else args.surjectivity
    if args.case:
        cases = [orbits.orbit_case(args.case, args.n, args.m)]
    else:
        cases = acc.orbit_instances()
    cols = ["case", "group", "diagram", "lattice", "theta", "minuscule", "faithful",
            "surjectivity", "verdict"]
    rep = Report("orbit-verdict", cols, {"cases": len(cases)})
    for c in cases:
        rep.add(**orbits.normality_verdict(c, basis))
    if any(r["verdict"] == "inconclusive" for r in rep.rows):
        rep.exit = EXIT_OPEN
    return rep


def cmd_coord_ring(args, cfg) -> Report:
    L = _lattice(args)
    if not args.divisor:
        raise UsageError("--divisor is required")
    E = parse_divisor(args.divisor, L)
    shift = parse_divisor(args.shift, L) if args.shift else None
    dec = orbits.coordinate_ring_degrees(L, E, shift, args.n_max)
    rep = Report("coord-ring", ["n", "weight", "F", "gamma"],
                 {"lattice": L.name, "E": divisor_str(E, L),
                  "shift": divisor_str(dec.shift, L), "n_max": args.n_max,
                  "lemma_a_checked": dec.lemma_a_checked,
                  "semigroup_gaps": len(orbits.semigroup_gaps(dec))})
    for n in sorted(dec.degrees):
        for w, F, g in dec.degrees[n]:
            rep.add(n=n, weight=list(w), F=divisor_str(F, L), gamma=sigma_str(g, L))
    return rep


def cmd_identities(args, cfg) -> Report:
    fams = [args.family] if args.family else list(iv.FAMILIES)
    for f in fams:
        if f not in iv.FAMILIES:
            raise UsageError(f"unknown family {f!r}; choose from {', '.join(iv.FAMILIES)}")
    rep = Report("identities", ["id", "triple", "statement", "passed", "scalar",
                                "expected_scalar"], {"families": fams})
    for f in fams:
        for res in iv.verify_identities(f):
            j = res.to_json()
            rep.add(**{k: j[k] for k in rep.columns})
    rep.meta["passed"] = sum(r["passed"] for r in rep.rows)
    rep.meta["total"] = len(rep.rows)
    rep.exit = EXIT_OK if rep.meta["passed"] == rep.meta["total"] else EXIT_REFUTED
    return rep


def cmd_acceptance(args, cfg) -> Report:
    ids = None
    if args.criteria:
        ids = [int(x) for x in args.criteria.split(",")]
        if any(i not in acc.CRITERIA for i in ids):
            raise UsageError(f"criteria are numbered {min(acc.CRITERIA)}..{max(acc.CRITERIA)}")
    cols = ["id", "title", "status"] + ([] if args.no_timing else ["runtime_s"])
    if args.details:
        cols.append("detail")
    rep = Report("acceptance", cols, {"dim_cap": cfg["dim_cap"]})
    for res in acc.run_all(ids, cfg["dim_cap"]):
        j = res.to_json(timing=not args.no_timing)
        rep.add(**{k: j[k] for k in cols})
    statuses = {r["status"] for r in rep.rows}
    rep.exit = (EXIT_REFUTED if "fail" in statuses else
                EXIT_OPEN if "inconclusive" in statuses else EXIT_OK)
    return rep


VERBS = {
    "catalog": cmd_catalog, "covers": cmd_covers, "check-2ht": cmd_check_2ht,
    "low-triples": cmd_low_triples, "verify-triple": cmd_verify_triple,
    "surjectivity": cmd_surjectivity, "minuscule": cmd_minuscule,
    "distinguished": cmd_distinguished, "orbit-verdict": cmd_orbit_verdict,
    "coord-ring": cmd_coord_ring, "identities": cmd_identities, "acceptance": cmd_acceptance,
}


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv", "text"), default="text")
    common.add_argument("--dim-cap", type=int, help="weight-space cap; 0 disables it")
    common.add_argument("--ht-bound", type=int, help="height bound for covering searches")
    common.add_argument("--threads", type=int, help="worker threads for leaf checks")
    common.add_argument("--lattice", help="selector, e.g. model:E8 or bd:11,4")

    p = _Parser(prog="wonderlat", description="Wonderful-variety lattice computations.")
    p.add_argument("--version", action="version", version=f"wonderlat {__version__}")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    sub.add_parser("catalog", parents=[common])
    for verb in ("covers", "low-triples"):
        sp = sub.add_parser(verb, parents=[common])
        sp.add_argument("--full-support", action="store_true")
        if verb == "low-triples":
            sp.add_argument("--include-trivial", action="store_true")
    sub.add_parser("check-2ht", parents=[common])
    sp = sub.add_parser("verify-triple", parents=[common])
    sp.add_argument("--triple", help="D,E,F such as D5,D8,D2+D7")
    sp = sub.add_parser("surjectivity", parents=[common])
    sp.add_argument("--pair", help="D,E; all fundamental pairs when omitted")
    sp.add_argument("--certificates", action="store_true", help="include derivation trees")
    sp = sub.add_parser("minuscule", parents=[common])
    sp.add_argument("--divisor")
    sp.add_argument("--max-height", type=int)
    sp.add_argument("--against-list", metavar="TYPE", help="compare with the parametric list, e.g. C4")
    sp.add_argument("--param-bound", type=int, default=orbits.DEFAULT_PARAM_BOUND)
    sp = sub.add_parser("distinguished", parents=[common])
    sp.add_argument("--subset", help="comma-separated colors")
    sp.add_argument("--faithful", metavar="DIVISOR")
    sp = sub.add_parser("orbit-verdict", parents=[common])
    sp.add_argument("--case", choices=orbits.CASE_IDS)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--surjectivity", choices=orbits.SURJECTIVITY_BASES + ("none",),
                    default="assumed")
    sp = sub.add_parser("coord-ring", parents=[common])
    sp.add_argument("--divisor")
    sp.add_argument("--shift")
    sp.add_argument("--n-max", type=int, default=4)
    sp = sub.add_parser("identities", parents=[common])
    sp.add_argument("--family")
    sp = sub.add_parser("acceptance", parents=[common])
    sp.add_argument("--criteria", help="comma-separated ids; all when omitted")
    sp.add_argument("--no-timing", action="store_true", help="omit runtimes for byte-stable output")
    sp.add_argument("--details", action="store_true")
    return p


def _config(args) -> dict:
    cap = settings.dim_cap() if args.dim_cap is None else (args.dim_cap if args.dim_cap > 0 else None)
    ht = settings.ht_bound() if args.ht_bound is None else args.ht_bound
    threads = settings.threads() if args.threads is None else max(1, args.threads)
    if ht < 1:
        raise UsageError("--ht-bound must be positive")
    return {"dim_cap": cap, "ht_bound": ht, "threads": threads}


def _fail(kind: str, msg: str, code: int) -> int:
    one_line = " ".join(str(msg).split())
    print(f"error\t{kind}\t{one_line}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = _config(args)
        report = VERBS[args.verb](args, cfg)
    except UsageError as exc:
        return _fail("usage", exc, EXIT_USAGE)
    except CapExceeded as exc:
        return _fail("cap", exc, EXIT_OPEN)
    except EngineError as exc:
        return _fail("engine", exc, EXIT_OPEN)
    except orbits.OrbitError as exc:
        return _fail("orbit", exc, EXIT_USAGE)
    except LatticeError as exc:
        return _fail("lattice", exc, EXIT_USAGE)
    except iv.TensorError as exc:
        return _fail("tensor", exc, EXIT_USAGE)
    except ValueError as exc:
        return _fail("value", exc, EXIT_USAGE)
    print(render(report, args.format))
    return report.exit


if __name__ == "__main__":
    sys.exit(main())
