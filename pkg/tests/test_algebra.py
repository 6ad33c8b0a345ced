import json

import pytest
from hypothesis import given, settings, strategies as st

from hedgeprop import App, Var, algebra_from_dict, enumerate_ground_space, evaluate, load_algebra
from hedgeprop.algebra import is_constant_term, is_injective_term, load_pairing
from hedgeprop.errors import EmptySpace, OutOfUniverse, ParseError, PartialTable, RankMismatch, UnboundVariable, UnknownBuiltin
from hedgeprop.terms import size

from conftest import src, table_data, tgt
import oracle


def succ_model(top):
    return oracle.nat_model({"S": (1, lambda a: a + 1), "0": (0, lambda: 0)}, top)


def plus_model(top):
    return oracle.nat_model({"+": (2, lambda a, b: a + b), "1": (0, lambda: 1)}, top)


def test_evaluate_examples(nm):
    N, M, lp = nm
    assert evaluate(src(lp, "S(S(0))"), N) == 2
    assert evaluate(tgt(lp, "+(1,+(1,1))"), M) == 3
    assert evaluate(Var("z", 1), N, {Var("z", 1): 7}) == 7
    with pytest.raises(UnboundVariable):
        evaluate(Var("z", 1), N)


def test_out_of_universe():
    N = load_algebra(json.dumps({
        "name": "N", "universe": {"kind": "nat", "max": 1},
        "operations": [
            {"symbol": "S", "rank": 1, "interpretation": {"kind": "builtin", "name": "succ"}},
            {"symbol": "0", "rank": 0, "interpretation": {"kind": "builtin", "name": "const", "value": 0}},
        ],
    }))
    with pytest.raises(OutOfUniverse):
        evaluate(App("S", [App("S", [App("0")])]), N)
    assert enumerate_ground_space(N, 5).keys() == [0, 1]


def test_ground_space_examples(nm):
    N, M, _ = nm
    gs = enumerate_ground_space(N, 3)
    assert gs.keys() == [0, 1, 2]
    assert [gs.representative(k).text for k in gs.keys()] == ["0", "S(0)", "S(S(0))"]
    gm = enumerate_ground_space(M, 2)
    assert {k: gm.representative(k).text for k in gm.keys()} == {1: "1", 2: "+(1,1)"}
    assert enumerate_ground_space(M, 3).keys() == [1, 2, 3, 4]


def test_constants_only_space():
    alg = algebra_from_dict({
        "name": "K", "universe": {"kind": "finite", "elements": ["a", "b"]},
        "operations": [
            {"symbol": "a", "rank": 0, "interpretation": {"kind": "table", "rows": [["a"]]}},
            {"symbol": "b", "rank": 0, "interpretation": {"kind": "table", "rows": [["b"]]}},
        ],
    })
    gs = enumerate_ground_space(alg, 1)
    assert gs.labels() == ["a", "b"]
    assert [t.text for t in gs.classes[0]] == ["a"]


def test_no_constants_is_an_empty_space():
    alg = algebra_from_dict({
        "name": "F", "universe": {"kind": "finite", "elements": ["a"]},
        "operations": [{"symbol": "f", "rank": 1, "interpretation": {"kind": "table", "rows": [["a", "a"]]}}],
    })
    with pytest.raises(EmptySpace):
        enumerate_ground_space(alg, 2)


@pytest.mark.parametrize("depth", [1, 2, 3, 4])
def test_ground_space_matches_recursive_counter(nm, depth):
    N, M, _ = nm
    for alg, model in ((N, succ_model(64)), (M, plus_model(64))):
        gs = enumerate_ground_space(alg, depth)
        expected = {t.text for t in oracle.ground_terms(model, depth) if model.value(t) is not None}
        assert {t.text for t in gs.terms} == expected
        for code in gs.keys():
            rep = gs.representative(code)
            assert all(size(rep) <= size(t) for t in gs.classes[code])
            assert all(alg.eval_code(t) == code for t in gs.classes[code])
        assert {k: gs.representative(k).text for k in gs.keys()} == {
            k: t.text for k, t in oracle.classes(model, depth).items()
        }


def test_injective_and_constant_terms(nm):
    N, _, _ = nm
    small = N.with_nat_max(31)
    t = App("S", [Var("z", 1)])
    assert is_injective_term(t, small) and not is_constant_term(t, small)
    assert is_constant_term(App("0"), N)
    proj = algebra_from_dict({"name": "P", "universe": {"kind": "finite", "elements": ["a", "b"]}, "operations": [
        {"symbol": "f", "rank": 2, "interpretation": {"kind": "builtin", "name": "proj", "value": 1}},
        {"symbol": "c", "rank": 0, "interpretation": {"kind": "table", "rows": [["a"]]}},
    ]})
    assert not is_injective_term(App("f", [Var("z", 1), Var("z", 2)]), proj)


def test_builtin_times():
    alg = algebra_from_dict({
        "name": "T", "universe": {"kind": "nat", "max": 20},
        "operations": [
            {"symbol": "*", "rank": 2, "interpretation": {"kind": "builtin", "name": "times"}},
            {"symbol": "2", "rank": 0, "interpretation": {"kind": "builtin", "name": "const", "value": 2}},
        ],
    })
    assert evaluate(App("*", [App("2"), App("*", [App("2"), App("2")])]), alg) == 8


def _op(sym, rank, interp):
    return {"symbol": sym, "rank": rank, "interpretation": interp}


@pytest.mark.parametrize(
    "ops, universe, exc",
    [
        ([_op("f", 2, {"kind": "table", "rows": [["a", "a", "a"]]})], {"kind": "finite", "elements": ["a", "b"]}, PartialTable),
        ([_op("f", 2, {"kind": "builtin", "name": "succ"})], {"kind": "nat", "max": 3}, RankMismatch),
        ([_op("f", 1, {"kind": "builtin", "name": "pred"})], {"kind": "nat", "max": 3}, UnknownBuiltin),
        ([_op("f", 1, {"kind": "builtin", "name": "succ"})], {"kind": "finite", "elements": ["a"]}, UnknownBuiltin),
        ([_op("f", 1, {"kind": "table", "rows": [["a"]]})], {"kind": "finite", "elements": ["a"]}, RankMismatch),
        ([_op("f", 1, {"kind": "magic"})], {"kind": "finite", "elements": ["a"]}, ParseError),
    ],
)
def test_load_errors(ops, universe, exc):
    with pytest.raises(exc):
        load_algebra(json.dumps({"name": "X", "universe": universe, "operations": ops}))


def test_malformed_json():
    with pytest.raises(ParseError):
        load_algebra("{not json")
    with pytest.raises(ParseError):
        load_algebra(json.dumps({"universe": {"kind": "nat"}, "operations": []}))


def test_nat_max_override(nm):
    N, _, _ = nm
    from conftest import fixture_text
    small = load_algebra(fixture_text("N.alg"), nat_max=5)
    assert len(small.universe) == 6 and len(N.universe) == 65


def test_pairing_names_must_match(nm):
    N, M, _ = nm
    with pytest.raises(ParseError):
        load_pairing(json.dumps({"source": "M", "target": "N", "pairs": []}), N, M)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 16))
def test_table_evaluation_matches_oracle(seed):
    import random
    rng = random.Random(seed)
    data = table_data("R", ["p", "q", "r"], [("f", 2), ("g", 1), ("c", 0)], rng)
    alg = algebra_from_dict(data)
    model = oracle.table_model(data)
    for t in oracle.ground_terms(model, 3):
        assert evaluate(t, alg) == model.value(t)
