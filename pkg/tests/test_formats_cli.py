import io
import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ojoin.cli import EXIT_BUDGET, EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, AnalysisReport, run
from ojoin.formats import (
    ParseError,
    export_game,
    export_join,
    load_json,
    parse_game,
    parse_join,
    parse_leaf_sets,
    parse_poset,
)
from ojoin.games import EMPTY, GameStore
from ojoin.generate import random_game, random_join
from ojoin.grundy import grundy_number

N_SHAPE = {"elements": ["1", "2", "3", "4"], "relations": [["1", "2"], ["3", "2"], ["3", "4"]]}
N_GAME = {"shape": N_SHAPE, "components": {e: {"heap": 1} for e in "1234"}}


def cli(args, doc):
    text = doc if isinstance(doc, str) else json.dumps(doc)
    out, err = io.StringIO(), io.StringIO()
    code = run(args, stdin=io.StringIO(text), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def cli_json(args, doc):
    code, out, err = cli(args + ["--json"], doc)
    assert code == EXIT_OK, err
    return json.loads(out)


# formats


def test_parse_game_forms(store):
    assert parse_game({"heap": 3}, store) == store.nim_heap(3)
    g = parse_game({"sum": [{"heap": 3}, {"heap": 5}]}, store)
    assert g == store.dsum(store.nim_heap(3), store.nim_heap(5))
    doc = {"defs": {"a": {"heap": 1}, "b": {"sum": ["a", "a"]}, "c": {"ordinal": ["b", "a"]}}, "root": "c"}
    h1 = store.nim_heap(1)
    assert parse_game(doc, store) == store.osum(store.dsum(h1, h1), h1)
    assert parse_game({"options": []}, store) == EMPTY
    assert parse_game({"options": [{"heap": 0}, {"heap": 2}]}, store) == store.intern([EMPTY, store.nim_heap(2)])


@pytest.mark.parametrize(
    "doc, path",
    [
        ({"heap": -1}, "$.heap"),
        ({"heap": True}, "$.heap"),
        ({"pile": 1}, "$"),
        ({"heap": 1, "sum": []}, "$"),
        ({"sum": [{"heap": 1}, 7]}, "$.sum[1]"),
        ({"ordinal": [{"heap": 1}]}, "$.ordinal"),
        ({"defs": {"a": {"heap": 1}}, "root": "b"}, "root"),
        ({"defs": {"a": {"sum": [{"heap": "x"}]}}, "root": "a"}, "defs.a.sum[0].heap"),
    ],
)
def test_parse_game_errors_carry_a_path(store, doc, path):
    with pytest.raises(ParseError) as err:
        parse_game(doc, store)
    assert err.value.path == path


def test_cyclic_definitions_are_rejected(store):
    doc = {"defs": {"a": {"options": ["b"]}, "b": {"sum": ["a"]}}, "root": "a"}
    with pytest.raises(ParseError, match="cyclic game definition a -> b -> a"):
        parse_game(doc, store)
    with pytest.raises(ParseError, match="cyclic"):
        parse_game({"defs": {"a": {"options": ["a"]}}, "root": "a"}, store)


def test_load_json_reports_position():
    with pytest.raises(ParseError, match=r"line 2, column \d+"):
        load_json('{"heap":\n ]')


def test_parse_poset_and_join(store):
    n = parse_poset(N_SHAPE)
    assert sorted(n.relations()) == [("1", "2"), ("3", "2"), ("3", "4")]
    with pytest.raises(ParseError, match="cycle"):
        parse_poset({"elements": ["a", "b"], "relations": [["a", "b"], ["b", "a"]]})
    with pytest.raises(ParseError) as err:
        parse_poset({"elements": ["a"], "relations": [["a"]]})
    assert err.value.path == "$.relations[0]"
    p = parse_join({"shape": N_SHAPE, "components": {"1": {"heap": 2}}}, store)
    assert p.components == (store.nim_heap(2), EMPTY, EMPTY, EMPTY)
    with pytest.raises(ParseError) as err:
        parse_join({"shape": N_SHAPE, "components": {"9": {"heap": 2}}}, store)
    assert err.value.path == "components.9"
    shape, sets = parse_leaf_sets({"shape": N_SHAPE, "leaf_sets": {"1": [0, 1]}})
    assert list(sets["1"]) == [0, 1]
    with pytest.raises(ParseError) as err:
        parse_leaf_sets({"shape": N_SHAPE, "leaf_sets": {"1": [0, -1]}})
    assert err.value.path == "leaf_sets.1[1]"


@given(st.integers(0, 10_000))
def test_export_round_trip(seed):
    rng = random.Random(seed)
    a = GameStore()
    g = random_game(a, rng, 10)
    b = GameStore()
    g2 = parse_game(json.loads(json.dumps(export_game(a, g))), b)
    assert b.size(g2) == a.size(g) and grundy_number(b, g2) == grundy_number(a, g)
    p = random_join(a, rng, max_shape=4, max_positions=5)
    q = parse_join(json.loads(json.dumps(export_join(p))), b)
    assert q.shape == p.shape
    assert [b.size(x) for x in q.components] == [a.size(x) for x in p.components]


# CLI


def test_cli_examples():
    assert cli_json(["outcome"], N_GAME)["result"]["outcome"] == "P"
    assert cli_json(["grundy"], {"sum": [{"heap": 3}, {"heap": 5}]})["result"]["grundy"] == 6
    rep = cli_json(["involutions"], N_SHAPE)
    assert rep["result"]["count"] == 3
    assert sorted(i["cycles"] for i in rep["result"]["involutions"]) == ["(1 3)", "(1 3)(2 4)", "id"]
    assert cli_json(["grundy-set"], {"heap": 3})["result"]["grundy_set"] == [0, 1, 2]
    assert cli_json(["grundy-k", "--k", "2"], {"heap": 2})["result"]["grundy_k"] == [[], [0]]
    ev = cli_json(["evaluate"], {"shape": N_SHAPE, "leaf_sets": {e: [0] for e in "1234"}})
    assert ev["result"]["grundy"] == 0 and ev["stats"]["indecomposable_nodes"] == 1
    dec = cli_json(["decompose"], N_SHAPE)
    assert dec["result"]["tree"]["kind"] == "indecomposable"
    assert dec["result"]["series_parallel"] is False


def test_cli_reduce_certifies_n():
    rep = cli_json(["reduce"], N_GAME)["result"]
    assert rep["outcome"] == "P" and rep["remaining"] == []
    assert rep["certificates"][-1] == {"step": "symmetry", "sigma": "(1 3)(2 4)", "removed": ["1", "2", "3", "4"]}
    rep = cli_json(["reduce", "--sigma", "1:3,2:4"], N_GAME)["result"]
    assert rep["outcome"] == "P" and rep["certificates"][0]["sigma"] == "(1 3)(2 4)"


def test_cli_bench_and_distinguish():
    rep = cli_json(["bench"], {"shape": N_SHAPE, "leaf_sets": {e: [0, 2] for e in "1234"}})
    assert rep["result"]["agree"] is True
    wide = {"shape": {"elements": [str(i) for i in range(12)], "relations": []},
            "components": {str(i): {"heap": 1} for i in range(12)}}
    rep = cli_json(["bench", "--budget", "50"], wide)
    assert rep["result"]["naive_status"] == "budget_exceeded"
    assert rep["result"]["decomposition_grundy_set"] == [1]
    doc = {"left": {"heap": 0}, "right": {"sum": [{"heap": 1}, {"heap": 1}]}}
    rep = cli_json(["distinguish"], doc)["result"]
    w = rep["witness"]
    assert w is not None and w["left_outcome"] != w["right_outcome"]
    doc = {"left": {"heap": 1}, "right": {"options": [{"heap": 0}]}}
    assert cli_json(["distinguish"], doc)["result"]["witness"] is None


def test_cli_exit_codes(tmp_path):
    assert cli(["grundy"], "{nope")[0] == EXIT_PARSE
    assert cli(["grundy"], {"pile": 3})[0] == EXIT_PARSE
    assert cli(["frobnicate"], {})[0] == EXIT_PARSE
    assert cli(["grundy", str(tmp_path / "missing.json")], "")[0] == EXIT_PARSE
    code, _, err = cli(["reduce", "--sigma", "2:4"], N_GAME)
    assert code == EXIT_PRECONDITION and "weakly order-preserving" in err
    assert cli(["grundy-k", "--k", "5"], {"heap": 1})[0] == EXIT_PRECONDITION
    assert cli(["involutions", "--limit", "3"], N_SHAPE)[0] == EXIT_PRECONDITION
    big = {"shape": {"elements": [str(i) for i in range(12)], "relations": []},
           "components": {str(i): {"heap": 1} for i in range(12)}}
    assert cli(["grundy-k", "--budget", "50"], big)[0] == EXIT_BUDGET
    path = tmp_path / "n.json"
    path.write_text(json.dumps(N_GAME))
    assert cli(["outcome", str(path)], "")[0] == EXIT_OK


@pytest.mark.parametrize(
    "args, doc",
    [
        (["grundy"], {"sum": [{"heap": 3}, {"heap": 5}]}),
        (["outcome"], N_GAME),
        (["involutions"], N_SHAPE),
        (["decompose"], N_SHAPE),
        (["reduce"], N_GAME),
        (["evaluate"], N_GAME),
    ],
)
def test_text_and_json_carry_the_same_payload(args, doc):
    code, text, _ = cli(args, doc)
    assert code == EXIT_OK
    rep = cli_json(args, doc)
    again = AnalysisReport.from_json(json.dumps(rep))
    assert json.loads(again.to_json()) == rep
    assert again.to_text().splitlines()[:2] == text.splitlines()[:2]
    for key, value in rep["result"].items():
        if key == "tree_text":
            assert "tree (text):" in text
            for line in value.splitlines():
                assert "  " + line in text
        else:
            shown = json.dumps(value, sort_keys=True) if isinstance(value, (dict, list)) else str(value)
            assert f"{key}: {shown}" in text
    for key in rep["stats"]:
        if key != "seconds":
            assert f"stats.{key}: " in text
