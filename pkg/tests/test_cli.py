import io
import json
import re
import subprocess
import sys

import pytest

import grasspair.verify as V
from grasspair.cli import graph_from_json, main
from grasspair.grassmann import Ambient
from grasspair.pairs import Relation, build_graph, enumerate_pairs


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


SPACE = ["--n", "2", "--k", "1", "--q", "2"]


def test_stats_reports_sizes():
    code, text = run("stats", "--n", "3", "--k", "1", "--q", "2")
    assert code == 0
    assert "|G_1| = 7" in text and "|G_2| = 7" in text and "|G| = 28" in text
    assert "adj: edges = 84" in text and "maximal cliques = 14" in text


def test_dot_export():
    code, text = run("graph", *SPACE, "--relation", "close", "--format", "dot")
    assert code == 0
    assert text.startswith("graph G {")
    assert len(re.findall(r'^\s+\d+ \[label="\(\d+,\d+\)"\];$', text, re.M)) == 6
    assert len(re.findall(r"^\s+\d+ -- \d+;$", text, re.M)) == 6


def test_csv_export_ascending_within_line():
    code, text = run("graph", "--n", "3", "--k", "1", "--q", "2", "--relation", "adj", "--format", "csv")
    lines = text.strip().splitlines()
    assert code == 0 and len(lines) == 84
    pairs = [tuple(map(int, ln.split(","))) for ln in lines]
    assert all(a < b for a, b in pairs) and pairs == sorted(pairs)


@pytest.mark.parametrize("relation", ["adj", "close"])
def test_json_round_trip(relation):
    code, text = run("graph", "--n", "4", "--k", "2", "--q", "2", "--relation", relation, "--format", "json")
    data = json.loads(text)
    g = graph_from_json(data)
    ref = build_graph(enumerate_pairs(Ambient(4, 2, 2)), Relation(relation))
    assert g.edges == ref.edges
    assert [(v["s"], v["u"]) for v in data["vertices"]] == [(p.s.id, p.u.id) for p in ref.space]


@pytest.mark.parametrize(
    "argv",
    [
        ["graph", *SPACE, "--relation", "adj", "--format", "dot"],
        ["enum-grassmannian", "--n", "3", "--k", "1", "--q", "4", "--format", "json"],
        ["catalog", *SPACE],
        ["verify", "full-product", *SPACE, "--json"],
    ],
)
def test_outputs_are_deterministic(argv):
    first = run(*argv)[1]
    second = run(*argv)[1]
    if argv[0] == "verify":
        first, second = (re.sub(r'"ms": [\d.]+', "", x) for x in (first, second))
    assert first == second


def test_enum_grassmannian_lists_canonical_bases():
    code, text = run("enum-grassmannian", "--n", "3", "--k", "1", "--q", "2", "--i", "2")
    rows = text.strip().splitlines()
    assert rows[0] == "id,basis" and len(rows) == 8
    assert rows[1].split(",")[0] == "0"


def test_enum_pairs():
    code, text = run("enum-pairs", *SPACE, "--kind", "full")
    assert code == 0 and len(text.strip().splitlines()) == 1 + 9


def test_catalog_json_keyed_by_point_ids():
    code, text = run("catalog", *SPACE)
    data = json.loads(text)
    assert data["size"] == 12 == len(data["maps"])
    assert all(sorted(m["perm"]) == list(range(6)) for m in data["maps"])
    code, text = run("catalog", *SPACE, "--kind", "full", "--count-only")
    assert text.strip() == "72"


def test_verify_all_exit_zero():
    code, text = run("verify", "all", *SPACE)
    assert code == 0
    assert re.search(r"^SKIPPED\s+involutions .*characteristic 2", text, re.M)
    assert "FAIL" not in text


def test_verify_json_single_and_all():
    code, text = run("verify", "theorem3", *SPACE, "--json")
    data = json.loads(text)
    assert code == 0 and data["check"] == "theorem3" and set(data) >= {"check", "params", "status", "checked", "witnesses", "ms"}
    code, text = run("verify", "all", *SPACE, "--json")
    assert [r["check"] for r in json.loads(text)] == V.ALL_ORDER


def test_verify_fail_exits_one(monkeypatch):
    monkeypatch.setattr(V, "adjacent", lambda a, b: False)
    code, text = run("verify", "theorem3", *SPACE)
    assert code == 1 and "FAIL" in text and "witness" in text


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["stats", "--n", "3", "--k", "1", "--q", "6"],
        ["stats", "--n", "3", "--k", "3", "--q", "2"],
        ["verify", "lemma5", "--n", "3", "--k", "1", "--q", "2"],
        ["graph", *SPACE, "--relation", "far"],
        ["stats", "--n", "2", "--k", "1", "--q", "4", "--poly", "1,0,1"],
        ["catalog", "--n", "3", "--k", "1", "--q", "4", "--ceiling", "10"],
    ],
)
def test_invalid_parameters_exit_two(argv, capsys):
    code, _ = run(*argv)
    assert code == 2
    err = capsys.readouterr().err.strip().splitlines()
    assert err and "error" in err[-1]


def test_poly_flag_selects_field():
    code, text = run("enum-grassmannian", "--n", "2", "--k", "1", "--q", "9", "--poly", "2,2,1")
    assert code == 0 and len(text.strip().splitlines()) == 11


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "grasspair", "stats", "--n", "2", "--k", "1", "--q", "3"], capture_output=True, text=True
    )
    assert res.returncode == 0 and "|G| = 12" in res.stdout
