import pytest
from hypothesis import given, strategies as st

from hedgeprop import (
    LAMBDA,
    App,
    Justification,
    Side,
    Substitution,
    Var,
    apply_substitution,
    build_language_pair,
    canonicalize,
    parse_hedge,
    parse_justification,
    parse_term,
    show,
)
from hedgeprop.errors import (
    ArityMismatch,
    DuplicatePairing,
    InvalidJustification,
    InvalidSubstitution,
    LambdaAtRoot,
    ParseError,
    SizeMismatch,
    UnboundVariable,
    UnknownSymbol,
)
from hedgeprop.terms import rename, variables, vars_of

z1, z2, Z1, Z2, x1 = Var("z", 1), Var("z", 2), Var("Z", 1), Var("Z", 2), Var("x", 1)


@pytest.fixture
def lp():
    return build_language_pair([("S", 1), ("0", 0)], [("+", 2), ("1", 0)], [("S", "+"), ("0", "1")])


def test_merged_ranks_take_the_maximum(lp):
    assert [(m.name, m.rank) for m in lp.merged] == [("h", 2), ("_", 0)]
    assert lp.linked_constant_indices() == (1,)


def test_equal_ranks_keep_the_rank():
    lp = build_language_pair([("f", 1)], [("g", 1)], [("f", "g")])
    assert lp.merged[0].rank == 1


def test_identical_languages_keep_their_names():
    decls = [("f", 1), ("c", 0)]
    lp = build_language_pair(decls, decls, [("f", "f"), ("c", "c")])
    assert [m.name for m in lp.merged] == ["f", "c"]
    assert lp.is_unilingual()


def test_language_pair_errors():
    with pytest.raises(SizeMismatch):
        build_language_pair([("S", 1), ("0", 0)], [("+", 2)], [("S", "+")])
    with pytest.raises(UnknownSymbol):
        build_language_pair([("S", 1)], [("+", 2)], [("S", "-")])
    with pytest.raises(DuplicatePairing):
        build_language_pair([("S", 1), ("0", 0)], [("+", 2), ("1", 0)], [("S", "+"), ("S", "1")])


def test_explicit_merged_names():
    lp = build_language_pair([("S", 1), ("0", 0)], [("+", 2), ("1", 0)], [("S", "+", "op"), ("0", "1", "k")])
    assert [m.name for m in lp.merged] == ["op", "k"]


def test_swapped_reverses_sides(lp):
    back = lp.swapped()
    assert back.source == lp.target and back.target == lp.source and back.merged == lp.merged


def test_parse_and_print_round_trip(lp):
    for text in ["S(0)", "S(S(0))"]:
        assert show(parse_term(text, lp, Side.SOURCE)) == text
    for text in ["+(1,1)", "+(+(1,1),1)"]:
        assert show(parse_term(text, lp, Side.TARGET)) == text
    assert show(parse_hedge("h( z1 , Z1 )", lp)) == "h(z1,Z1)"


@pytest.mark.parametrize(
    "text, side, exc",
    [
        ("S(", Side.SOURCE, ParseError),
        ("S(0,0)", Side.SOURCE, ArityMismatch),
        ("+(1)", Side.TARGET, ArityMismatch),
        ("T(0)", Side.SOURCE, UnknownSymbol),
        ("S(z1)", Side.SOURCE, ParseError),
        ("S(0) 0", Side.SOURCE, ParseError),
        ("_lambda_", Side.SOURCE, ParseError),
    ],
)
def test_parse_errors(lp, text, side, exc):
    with pytest.raises(exc):
        parse_term(text, lp, side)


def test_hedges_are_abstract(lp):
    with pytest.raises(InvalidJustification):
        parse_hedge("h(_,z1)", lp)


def test_vars_of():
    assert vars_of(App("h", [z1, Z1])) == (frozenset(), {z1}, {Z1})
    assert vars_of(x1) == ({x1}, frozenset(), frozenset())
    assert vars_of(App("h", [App("h", [z1, Z1]), Z1])) == (frozenset(), {z1}, {Z1})


def _sigma(side, **b):
    names = {"z1": z1, "Z1": Z1, "x1": x1, "z2": z2}
    return Substitution.of(side, {names[k]: v for k, v in b.items()})


def test_lambda_deletes_argument_positions(lp):
    zero, one = App("0"), App("1")
    s = parse_hedge("h(z1,Z1)", lp)
    t = parse_hedge("h(h(z1,Z1),Z1)", lp)
    sn = _sigma(Side.SOURCE, z1=zero, Z1=LAMBDA)
    sm = _sigma(Side.TARGET, z1=one, Z1=one)
    assert show(apply_substitution(s, sn, lp)) == "S(0)"
    assert show(apply_substitution(t, sn, lp)) == "S(S(0))"
    assert show(apply_substitution(s, sm, lp)) == "+(1,1)"
    assert show(apply_substitution(t, sm, lp)) == "+(+(1,1),1)"


def test_apply_substitution_errors(lp):
    s = parse_hedge("h(z1,Z1)", lp)
    with pytest.raises(ArityMismatch):
        apply_substitution(s, _sigma(Side.SOURCE, z1=App("0"), Z1=App("0")), lp)
    with pytest.raises(LambdaAtRoot):
        apply_substitution(Z1, _sigma(Side.SOURCE, Z1=LAMBDA), lp)
    with pytest.raises(UnboundVariable):
        apply_substitution(s, _sigma(Side.SOURCE, z1=App("0")), lp)


def test_x_variables_bind_constant_indices(lp):
    sigma = _sigma(Side.TARGET, x1=1, z1=App("1"))
    assert show(apply_substitution(App("h", [x1, z1]), sigma, lp)) == "+(1,1)"
    with pytest.raises(InvalidSubstitution):
        apply_substitution(x1, _sigma(Side.TARGET, x1=0), lp)
    with pytest.raises(InvalidSubstitution):
        _sigma(Side.TARGET, z1=LAMBDA)


def test_substitution_display(lp):
    sigma = _sigma(Side.SOURCE, z1=App("0"), Z1=LAMBDA)
    assert sigma.display(lp) == "{h/S, z1/0, Z1/_lambda_}"


def test_justification_scoping(lp):
    with pytest.raises(InvalidJustification):
        Justification(z1, z2)
    with pytest.raises(InvalidJustification):
        Justification(z1, App("h", [z1, Z1]))
    j = Justification(z1, App("h", [z1, Z1]), free_hedge_vars=True)
    assert not j.is_scoped()
    assert Justification(z1, x1).text == "z1 -> x1"


def test_canonicalize_examples(lp):
    j = parse_justification("z5 -> h(z5,Z9)", lp, free_hedge_vars=True)
    assert canonicalize(j).text == "z1 -> h(z1,Z1)"
    assert canonicalize(parse_justification("z1 -> z1", lp)).text == "z1 -> z1"
    a = canonicalize(parse_justification("h(z2,Z1) -> h(h(z2,Z1),Z1)", lp))
    b = canonicalize(parse_justification("h(z7,Z3) -> h(h(z7,Z3),Z3)", lp))
    assert a == b and a.text == "h(z1,Z1) -> h(h(z1,Z1),Z1)"


# ---------------------------------------------------------------------------
# properties

KINDS = ["x", "z", "Z"]
leaf = st.builds(Var, st.sampled_from(KINDS), st.integers(1, 4))
hedges = st.recursive(leaf, lambda kids: st.builds(lambda a, b: App("h", [a, b]), kids, kids), max_leaves=6)


def _scoped(lhs, rhs):
    lv = set(variables(lhs))
    mapping = {v: v for v in variables(rhs) if v.kind == "x" or v in lv}
    pool = [v for v in variables(lhs) if v.kind != "x"]
    for v in variables(rhs):
        if v not in mapping:
            same = [u for u in pool if u.kind == v.kind]
            mapping[v] = same[0] if same else Var("x", 9)
    return Justification(lhs, rename(rhs, mapping))


justifications = st.builds(_scoped, hedges, hedges)


@given(justifications)
def test_canonicalize_is_idempotent(j):
    c = canonicalize(j)
    assert canonicalize(c) == c


@given(justifications, st.permutations(range(1, 10)))
def test_canonicalize_ignores_renaming(j, perm):
    mapping = {v: Var(v.kind, perm[v.index - 1] if v.index <= 9 else v.index) for v in j.variables()}
    renamed = Justification(rename(j.lhs, mapping), rename(j.rhs, mapping), free_hedge_vars=not j.is_scoped())
    assert canonicalize(renamed) == canonicalize(j)


def _arity_ok(t, ranks):
    return len(t.args) == ranks[t.symbol] and all(_arity_ok(a, ranks) for a in t.args)


ground_or_lambda = st.sampled_from([LAMBDA, App("0"), App("S", [App("0")])])


@given(hedges, st.data())
def test_lambda_deletion_yields_well_ranked_terms(h, data):
    lp = build_language_pair([("S", 1), ("0", 0)], [("+", 2), ("1", 0)], [("S", "+"), ("0", "1")])
    binds = {}
    for v in variables(h):
        if v.kind == "x":
            binds[v] = 1
        elif v.kind == "z":
            binds[v] = data.draw(st.sampled_from([App("0"), App("S", [App("0")])]))
        else:
            binds[v] = data.draw(ground_or_lambda)
    try:
        out = apply_substitution(h, Substitution.of(Side.SOURCE, binds), lp)
    except (ArityMismatch, LambdaAtRoot):
        return
    assert _arity_ok(out, {"S": 1, "0": 0})


@given(hedges)
def test_equal_ranks_never_accept_lambda(h):
    lp = build_language_pair([("f", 2), ("c", 0)], [("g", 2), ("e", 0)], [("f", "g", "h"), ("c", "e")])
    hv = [v for v in variables(h) if v.kind == "Z"]
    if not hv:
        return
    binds = {v: (1 if v.kind == "x" else App("e")) for v in variables(h)}
    binds[hv[0]] = LAMBDA
    with pytest.raises((ArityMismatch, LambdaAtRoot)):
        apply_substitution(h, Substitution.of(Side.TARGET, binds), lp)
