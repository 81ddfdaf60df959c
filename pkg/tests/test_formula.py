import pytest

from stlplan.core.errors import FormulaError
from stlplan.stl import (
    Always,
    And,
    Eventually,
    Implies,
    Interval,
    Not,
    Or,
    Predicate,
    TrueF,
    Until,
    parse_formula,
)

X = Predicate(0, 1.0, ">=", name="x")
Y = Predicate(1, 2.0, "<=", name="y")


def test_derived_operators_expand_to_core_nodes():
    iv = Interval(0, 5)
    assert Eventually(X, iv) == Until(iv, TrueF(), X)
    assert Always(X, iv) == Not(Until(iv, TrueF(), Not(X)))
    assert Or(X, Y) == Not(And(Not(X), Not(Y)))
    assert Implies(X, Y) == Or(Not(X), Y)


def test_python_operators():
    assert (~X) == Not(X)
    assert (X & Y) == And(X, Y)
    assert (X | Y) == Or(X, Y)
    assert (X >> Y) == Implies(X, Y)


def test_max_channel_and_depth():
    f = And(X, Eventually(Y))
    assert f.max_channel() == 1
    assert TrueF().max_channel() == -1
    assert f.depth() == 3


def test_predicate_validation():
    with pytest.raises(FormulaError):
        Predicate(-1, 0.0)
    with pytest.raises(FormulaError):
        Predicate(0, 0.0, ">")


def test_parse_mission_style_formula():
    f = parse_formula("F (r <= 0.1) & ((r >= 2) U G (v <= 0.1))", ["r", "v"])
    expected = And(
        Eventually(Predicate(0, 0.1, "<=")),
        Until(Interval(), Predicate(0, 2.0, ">="), Always(Predicate(1, 0.1, "<="))),
    )
    assert f == expected


def test_parse_intervals_precedence_and_flipped_predicates():
    f = parse_formula("G[0,10] (2 <= r & r <= 3) -> !F[1,inf] true | v >= 1e-1", ["r", "v"])
    left = Always(And(Predicate(0, 2.0, ">="), Predicate(0, 3.0, "<=")), Interval(0, 10))
    right = Or(Not(Eventually(TrueF(), Interval(1, float("inf")))), Predicate(1, 0.1, ">="))
    assert f == Implies(left, right)


@pytest.mark.parametrize(
    "text",
    [
        "F (r <= 0.1) & ((r >= 2) U G (v <= 0.1))",
        "G[0,10] ((r >= 2) & (r <= 3))",
        "!(r >= 1) | (v <= 2)",
        "true",
    ],
)
def test_rendering_parses_back_to_the_same_formula(text):
    f = parse_formula(text, ["r", "v"])
    assert parse_formula(str(f), ["r", "v"]) == f


@pytest.mark.parametrize("text", ["", "r >=", "q >= 1", "F[0,] (r >= 1)", "(r >= 1", "r >= 1 )", "r >= 1 $"])
def test_parse_errors(text):
    with pytest.raises(FormulaError):
        parse_formula(text, ["r", "v"])
