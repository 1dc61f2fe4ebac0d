import json
import re

import pytest

from wonderlat.cli import main, parse_divisor
from wonderlat.catalog import catalog


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, (json.loads(out) if out else None), err


def test_covers_f4_full_support(capsys):
    code, rep, _ = run_json(capsys, "covers", "--lattice", "model:F4", "--full-support")
    assert code == 0
    assert rep["meta"]["count"] == 2
    assert {r["gamma"] for r in rep["rows"]} == {"s1+s3", "s1+s2+2s3"}


def test_identities_comodel_e8(capsys):
    code, rep, _ = run_json(capsys, "identities", "--family", "comodel-E8")
    assert rep["meta"]["total"] == 8
    assert rep["meta"]["passed"] == 8
    assert code == 0


def test_surjectivity_model_b4_pair(capsys):
    code, rep, _ = run_json(capsys, "surjectivity", "--lattice", "model:B4", "--pair", "D2,D2")
    assert code == 1
    assert rep["rows"][0]["failing"] == ["D2,D2,D1"]


def test_surjectivity_so_odd_pair(capsys):
    code, rep, _ = run_json(capsys, "surjectivity", "--lattice", "so_odd:4", "--pair", "D2,D2")
    assert code == 1
    assert rep["rows"][0]["failing"] == ["D2,D2,D1"]


VERB_SAMPLES = [
    ("catalog", "--lattice", "caseV"),
    ("covers", "--lattice", "model:E6", "--full-support"),
    ("check-2ht", "--lattice", "bd:13,5"),
    ("low-triples", "--lattice", "model:E8", "--full-support"),
    ("verify-triple", "--lattice", "model:D5", "--triple", "D1,D3,D2"),
    ("surjectivity", "--lattice", "model:A4"),
    ("minuscule", "--lattice", "model:G2", "--max-height", "3"),
    ("distinguished", "--lattice", "model:E6", "--subset", "D2,D3,D4,D5"),
    ("orbit-verdict",),
    ("coord-ring", "--lattice", "model:E8", "--divisor", "D8", "--n-max", "3"),
    ("identities", "--family", "orbit-BD"),
]


@pytest.mark.parametrize("argv", VERB_SAMPLES, ids=[a[0] for a in VERB_SAMPLES])
def test_formats_carry_the_same_data(capsys, argv):
    code_j, out_j, _ = run(capsys, *argv, "--format", "json")
    code_t, out_t, _ = run(capsys, *argv, "--format", "tsv")
    code_x, out_x, _ = run(capsys, *argv, "--format", "text")
    assert code_j == code_t == code_x
    rep = json.loads(out_j)
    lines = out_t.splitlines()
    meta = dict(line[2:].split("\t", 1) for line in lines if line.startswith("# "))
    body = [line.split("\t") for line in lines if not line.startswith("# ")]
    assert body[0] == rep["columns"]

    def cell(x):
        return x if isinstance(x, str) else json.dumps(x, sort_keys=True, separators=(",", ":"))

    assert body[1:] == [[cell(r.get(c)) for c in rep["columns"]] for r in rep["rows"]]
    assert meta["exit"] == str(rep["exit"]) == str(code_j)
    for k, v in rep["meta"].items():
        assert meta[k] == cell(v)
        assert f"{k}: {cell(v)}" in out_x
    for r in rep["rows"]:
        assert all(cell(r.get(c)) in out_x for c in rep["columns"])


@pytest.mark.parametrize("argv", VERB_SAMPLES[:6], ids=[a[0] for a in VERB_SAMPLES[:6]])
def test_output_is_byte_stable(capsys, argv):
    _, first, _ = run(capsys, *argv, "--format", "json")
    _, second, _ = run(capsys, *argv, "--format", "json")
    assert first == second


def test_schema_version_present(capsys):
    _, rep, _ = run_json(capsys, "catalog")
    assert rep["schema_version"] == 1


ERROR_LINE = re.compile(r"^error\t[a-z]+\t[^\t\n]+\n$")


@pytest.mark.parametrize("argv,code", [
    (("covers",), 2),
    (("nonsense",), 2),
    (("covers", "--lattice", "model:Q4"), 2),
    (("verify-triple", "--lattice", "model:A3", "--triple", "D1,D9,0"), 2),
    (("orbit-verdict", "--case", "II", "--n", "0"), 2),
    (("covers", "--lattice", "model:A3", "--ht-bound", "0"), 2),
])
def test_errors_are_one_line(capsys, argv, code):
    got, out, err = run(capsys, *argv)
    assert got == code
    assert out == ""
    assert ERROR_LINE.match(err), err


def test_refutation_exit_code(capsys):
    code, rep, _ = run_json(capsys, "minuscule", "--against-list", "G2")
    assert code == 1 and rep["meta"]["agrees"] is False


def test_inconclusive_exit_code(capsys):
    code, rep, _ = run_json(capsys, "verify-triple", "--lattice", "model:E8",
                            "--triple", "D5,D8,D2+D7")
    assert code == 3
    assert rep["meta"]["status"] == "multiplicity-necessary-pass"


def test_cap_lowered_reports_inconclusive(capsys):
    code, rep, _ = run_json(capsys, "acceptance", "--criteria", "7", "--dim-cap", "1000",
                            "--no-timing")
    assert code == 3
    assert rep["rows"][0]["status"] == "inconclusive"


def test_flags_override_environment(capsys, monkeypatch):
    monkeypatch.setenv("WONDERLAT_HT_BOUND", "3")
    _, rep, _ = run_json(capsys, "covers", "--lattice", "model:A3")
    assert rep["meta"]["ht_bound"] == 3
    _, rep, _ = run_json(capsys, "covers", "--lattice", "model:A3", "--ht-bound", "5")
    assert rep["meta"]["ht_bound"] == 5


def test_bad_environment_value(capsys, monkeypatch):
    monkeypatch.setenv("WONDERLAT_THREADS", "many")
    code, _, err = run(capsys, "surjectivity", "--lattice", "model:A3", "--pair", "D1,D1")
    assert code == 2 and err.startswith("error\tvalue\t")


def test_acceptance_verb_without_timing_is_stable(capsys):
    _, first, _ = run(capsys, "acceptance", "--criteria", "3,8", "--no-timing", "--format", "json")
    _, second, _ = run(capsys, "acceptance", "--criteria", "3,8", "--no-timing", "--format", "json")
    assert first == second
    assert [r["status"] for r in json.loads(first)["rows"]] == ["pass", "pass"]


def test_divisor_parser_handles_sign_names():
    L = catalog("sl2_torus")
    assert parse_divisor("D++D-", L) == (1, 1)
    assert parse_divisor("2D-", L) == (0, 2)
    assert parse_divisor("0", L) == (0, 0)
    E = catalog("model:E8")
    assert parse_divisor("D2+D7", E) == (0, 1, 0, 0, 0, 0, 1, 0)
