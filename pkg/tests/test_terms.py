import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dmm.terms import (LAW_LIBRARY, Arrow, Const, Equation, Fusion,
                       Inequation, Join, Meet, Neg, ParseError, QuasiEquation,
                       TooManyVariables, UnboundVariable, Var, evaluate,
                       law_statements, parse, parse_statement, satisfies,
                       satisfies_all, statements_from_text, to_text, variables)

x, y, z = Var("x"), Var("y"), Var("z")


def test_parse_inequation_square_increasing():
    assert parse("x <= x * x") == Inequation(x, Fusion(x, x))


def test_parse_semilinearity_axiom():
    s = parse("e <= (x -> y) \\/ (y -> x)")
    assert s == Inequation(Const("e"), Join(Arrow(x, y), Arrow(y, x)))


def test_parse_quasi_equation():
    s = parse("x = y & y = z => x = z")
    assert isinstance(s, QuasiEquation)
    assert len(s.premises) == 2
    assert s.conclusion == Equation(x, z)


def test_parse_unicode_aliases():
    assert parse("¬x ∧ y ≤ x ∨ y") == parse("~x /\\ y <= x \\/ y")
    assert parse("x · y → z = e") == parse("x * y -> z = e")


def test_precedence_neg_fusion_meet_join_arrow():
    s = parse("~x * y /\\ z \\/ e -> f = f")
    lhs = s.lhs
    assert isinstance(lhs, Arrow)
    assert lhs == Arrow(Join(Meet(Fusion(Neg(x), y), z), Const("e")),
                        Const("f"))


def test_arrow_right_associative():
    assert parse("x -> y -> z = e").lhs == Arrow(x, Arrow(y, z))
    assert to_text(Arrow(x, Arrow(y, z))) == "x -> y -> z"
    assert to_text(Arrow(Arrow(x, y), z)) == "(x -> y) -> z"


def test_print_examples():
    e = Const("e")
    assert to_text(Fusion(Neg(e), Neg(e))) == "~e * ~e"
    assert to_text(Meet(Join(x, y), z)) == "(x \\/ y) /\\ z"


def test_parse_error_has_position_and_expectations():
    with pytest.raises(ParseError) as ei:
        parse("x <= ")
    assert "position 5" in str(ei.value) and "expected" in str(ei.value)
    with pytest.raises(ParseError) as ei:
        parse("x ? y")
    assert "position 2" in str(ei.value)
    with pytest.raises(ParseError):
        parse_statement("x * y")  # bare term, not a statement


def test_premises_need_conclusion():
    with pytest.raises(ParseError):
        parse("x = y & y = z")


def test_evaluate_examples(named):
    C4, S5 = named["C4"], named["S5"]
    assert evaluate(parse("f * f"), C4, {}) == 3
    # |x| := x -> x maps -2 to 2 in the five-element chain
    assert evaluate(parse("x -> x"), S5, {"x": 0}) == 4
    assert evaluate(parse("e"), S5, {}) == S5.e


def test_evaluate_unbound_variable(named):
    with pytest.raises(UnboundVariable):
        evaluate(x, named["2"], {})


def test_variables_sorted():
    assert variables(parse("z /\\ x <= y")) == ["x", "y", "z"]


def test_satisfies_examples(named):
    assert satisfies(named["2"], parse("x <= e")).holds
    assert satisfies(named["C4"], parse("e <= f")).holds
    r = satisfies(named["D4"], parse("e <= (x -> y) \\/ (y -> x)"))
    assert not r.holds
    # first counterexample in lexicographic order: x = e, y = f
    assert r.counterexample == {"x": named["D4"].e, "y": named["D4"].f}


def test_satisfies_quasi_equation_counts_conclusions(named):
    A = named["S4"]
    r = satisfies(A, parse("x \\/ y = y \\/ x"))
    assert r.holds
    assert r.conclusion_evaluations == A.size ** 2
    q = satisfies(A, parse("x <= e => x * x <= e"))
    assert q.holds
    assert q.conclusion_evaluations == sum(
        1 for a in A.elements if A.leq(a, A.e))


def test_variable_cap():
    s = parse("x1 /\\ x2 /\\ x3 /\\ x4 /\\ x5 <= x1")
    from dmm.constructions import make_named
    with pytest.raises(TooManyVariables):
        satisfies(make_named("2"), s)
    assert satisfies(make_named("2"), s, max_vars=5).holds


def test_statement_files():
    text = """
    # laws
    x <= x * x
    e <= x \\/ ~x  # excluded middle up to e
    """
    stmts = statements_from_text(text)
    assert len(stmts) == 2


def test_law_library_parses_and_roundtrips():
    for name in LAW_LIBRARY:
        for s in law_statements(name):
            assert parse(to_text(s)) == s


def test_general_laws_on_mv_chain():
    from dmm.algebra import FiniteIRL
    from dmm.terms import GENERAL_IRL_LAWS
    mv = FiniteIRL.from_tables(
        4, [[min(a, b) for b in range(4)] for a in range(4)],
        [[max(a, b) for b in range(4)] for a in range(4)],
        [[max(a + b - 3, 0) for b in range(4)] for a in range(4)],
        [3 - a for a in range(4)], 3)
    assert satisfies_all(mv, GENERAL_IRL_LAWS) is None


def test_square_increasing_laws_on_named(named):
    from dmm.terms import SQUARE_INCREASING_LAWS
    for nm in ("2", "S3", "C4", "D4", "S5"):
        assert satisfies_all(named[nm], SQUARE_INCREASING_LAWS) is None


# ---- random round-trip ------------------------------------------------------

terms = st.recursive(
    st.sampled_from([x, y, z, Const("e"), Const("f")]),
    lambda sub: st.one_of(
        sub.map(Neg),
        st.tuples(sub, sub).map(lambda p: Fusion(*p)),
        st.tuples(sub, sub).map(lambda p: Meet(*p)),
        st.tuples(sub, sub).map(lambda p: Join(*p)),
        st.tuples(sub, sub).map(lambda p: Arrow(*p))),
    max_leaves=25)


@settings(max_examples=300, deadline=None)
@given(terms)
def test_random_term_roundtrip(t):
    assert parse(to_text(t)) == t


@settings(max_examples=100, deadline=None)
@given(st.tuples(terms, terms))
def test_random_statement_roundtrip(pair):
    s, t = pair
    for stmt in (Equation(s, t), Inequation(s, t),
                 QuasiEquation((Equation(s, s),), Equation(s, t))):
        assert parse(to_text(stmt)) == stmt
