import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hhverify import (
    DomainError,
    ExprSyntaxError,
    FamilyError,
    FamilySpec,
    PositivityError,
    UnknownIdentifierError,
    family_instantiate,
    parse,
    registered_families,
    unparse,
)
from hhverify.funcspec import Binary, Const, FunctionExpr, Unary, Var


@pytest.mark.parametrize(
    "text,x,expected",
    [
        ("exp(2*x)", 0.5, math.e),
        ("x^2+1", 2.0, 5.0),
        ("2^x^2", 2.0, 16.0),  # right-associative power
        ("10-x^2", 3.0, 1.0),
        ("x/2/2", 8.0, 2.0),  # left-associative division
        ("1e-3+x", 0.0, 1e-3),
        ("2^-1", 1.0, 0.5),
        ("sqrt(x)*pi", 4.0, 2.0 * math.pi),
        ("e", 0.3, math.e),
    ],
)
def test_evaluate(text, x, expected):
    assert parse(text).evaluate(x) == pytest.approx(expected, rel=1e-15)


def test_unclosed_call_reports_offset():
    with pytest.raises(ExprSyntaxError) as info:
        parse("exp(")
    assert info.value.offset == 4
    assert "offset 4" in str(info.value)


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifierError) as info:
        parse("foo(x)")
    assert info.value.name == "foo"
    assert info.value.offset == 0


@pytest.mark.parametrize("text", ["", "1+", "(x", "x 2", "x..2", "1e999"])
def test_malformed_inputs_rejected(text):
    with pytest.raises(ExprSyntaxError):
        parse(text)


def test_log_of_negative_is_domain_error():
    with pytest.raises(DomainError) as info:
        parse("ln(x-2)").evaluate(1.0)
    assert info.value.x == 1.0


def test_division_by_zero_is_domain_error():
    with pytest.raises(DomainError):
        parse("1/x").evaluate(0.0)


def test_fractional_power_of_negative_is_domain_error():
    # math.pow rejects this instead of drifting into complex arithmetic
    with pytest.raises(DomainError):
        parse("(0-2)^0.5").evaluate(1.0)


def test_nonpositive_value_is_positivity_error():
    with pytest.raises(PositivityError):
        parse("x-5").evaluate(1.0)


def test_overflow_is_positivity_error():
    with pytest.raises(PositivityError):
        parse("exp(1000*x)").evaluate(1.0)


def test_function_expr_is_immutable():
    f = parse("x+1")
    with pytest.raises(dataclasses.FrozenInstanceError):
        f.root = Var()


def test_structural_equality():
    assert parse("x + 1") == parse("x+1")
    assert parse("x+1") != parse("1+x")


# round-tripping ------------------------------------------------------------

ROUND_TRIP_CORPUS = [
    "x",
    "2.5",
    "x^2+1",
    "2^x^2",
    "(x+1)*(x+2)",
    "x-(1-x)",
    "x/2/2",
    "exp(2*x)",
    "-x+3",
    "sqrt(x^3)",
    "ln(x+1)/ln(2)",
    "2^(x*3)",
    "(2^x)^3",
    "x*(2+x)^2",
]


@pytest.mark.parametrize("text", ROUND_TRIP_CORPUS)
def test_round_trip_corpus(text):
    f = parse(text)
    assert parse(unparse(f)) == f


_leaf = st.one_of(
    st.floats(min_value=1e-3, max_value=1e3, allow_nan=False, allow_infinity=False).map(Const),
    st.just(Var()),
)
_tree = st.recursive(
    _leaf,
    lambda sub: st.one_of(
        st.builds(Unary, st.sampled_from(["neg", "exp", "ln", "sqrt"]), sub),
        st.builds(Binary, st.sampled_from(["+", "-", "*", "/", "^"]), sub, sub),
    ),
    max_leaves=12,
)


@given(_tree)
def test_round_trip_random_trees(root):
    f = FunctionExpr(root)
    assert parse(unparse(f)).root == root


# vectorized evaluation ------------------------------------------------------


def test_evaluate_array_matches_scalar():
    f = parse("0.5*exp(1.3*x)+x^2")
    xs = np.linspace(0.0, 3.0, 101)
    vec = f.evaluate_array(xs)
    scal = np.array([f.evaluate(float(x)) for x in xs])
    assert np.allclose(vec, scal, rtol=1e-15, atol=0.0)


def test_evaluate_array_passes_nan_through():
    ys = parse("ln(x-2)").evaluate_array(np.array([1.0, 3.0]))
    assert math.isnan(ys[0])
    assert ys[1] == pytest.approx(0.0, abs=1e-15)


def test_evaluate_array_broadcasts_constants():
    ys = parse("5").evaluate_array(np.array([1.0, 2.0, 3.0]))
    assert ys.shape == (3,)
    assert np.all(ys == 5.0)


# families --------------------------------------------------------------------


def test_registered_families_names_and_params():
    fams = registered_families()
    assert fams["const"] == ("c",)
    assert fams["exp_linear"] == ("k",)
    assert fams["exp_affine"] == ("c", "k")
    assert fams["poly_shift"] == ("p", "q")


def test_exp_linear_matches_math_exp_bitwise():
    import random

    rng = random.Random(42)
    for _ in range(1000):
        k = rng.uniform(-3.0, 3.0)
        x = rng.uniform(0.0, 5.0)
        f = family_instantiate(FamilySpec("exp_linear", {"k": k}))
        assert f.evaluate(x) == math.exp(k * x)


def test_poly_shift_example():
    f = family_instantiate(FamilySpec("poly_shift", {"p": 2.0, "q": 1.0}))
    assert f == parse("x^2+1")


@pytest.mark.parametrize(
    "spec",
    [
        FamilySpec("nope", {}),
        FamilySpec("exp_affine", {"c": 1.0}),  # missing k
        FamilySpec("exp_linear", {"k": 1.0, "z": 2.0}),  # unexpected
        FamilySpec("const", {"c": math.inf}),
        FamilySpec("const", {"c": 0.0}),  # must be positive
        FamilySpec("poly_shift", {"p": 2.0, "q": 0.0}),
    ],
)
def test_family_errors(spec):
    with pytest.raises(FamilyError):
        family_instantiate(spec)
