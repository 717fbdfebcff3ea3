import random

import pytest
from hypothesis import given, settings, strategies as st

from teamlogic.checks import gen_full
from teamlogic.formula import (And, BoolOr, Const, Dep, Eq, Exists, Exists1,
                               FOAtom, Implies, Inc, Ind, SeqEq, SplitOr, Var,
                               WNeg)
from teamlogic.parser import ParseError, parse_formula, print_formula

x, y, z = Var("x"), Var("y"), Var("z")


def test_atoms():
    assert parse_formula("=(x ; y)") == Dep((x,), (y,))
    assert parse_formula("=(x,y ; z)") == Dep((x, y), (z,))
    assert parse_formula("=(; y)") == Dep((), (y,))
    assert parse_formula("inc(x ; y)") == Inc((x,), (y,))
    assert parse_formula("ind(x ; z ; y)") == Ind((x,), (z,), (y,))
    assert parse_formula("ind(x ;; y)") == Ind((x,), (), (y,))


def test_equality_and_sequences():
    assert parse_formula("x = y") == Eq(x, y)
    assert parse_formula("x y = y z", expand=False) == SeqEq((x, y), (y, z))
    # expansion turns a sequence equality into a conjunction
    assert parse_formula("x y = y z") == And(Eq(x, y), Eq(y, z))


def test_constants_need_declaring():
    assert parse_formula("x = c", constants=("c",)) == Eq(x, Const("c"))
    assert parse_formula("x = c") == Eq(x, Var("c"))


def test_connective_precedence():
    phi = parse_formula("x = y /\\ y = z \\/ P(x)")
    assert isinstance(phi, SplitOr)
    assert isinstance(phi.l, And)


def test_boolean_or_binds_loosest_of_the_lattice():
    phi = parse_formula("x = y \\/ y = z || P(x)")
    assert isinstance(phi, BoolOr)


def test_implies_requires_fo_antecedent():
    phi = parse_formula("x = y -> P(x)", expand=False)
    assert isinstance(phi, Implies)
    with pytest.raises(ParseError):
        parse_formula("=(x ; y) -> P(x)", expand=False)


def test_quantifiers():
    phi = parse_formula("E x. A1 y. inc(x ; y)")
    assert isinstance(phi, Exists)
    phi = parse_formula("E1 x. P(x)")
    assert isinstance(phi, Exists1)


def test_wneg_keyword():
    assert parse_formula("wneg x = y") == WNeg(Eq(x, y))


def test_fo_bang_is_eliminated():
    phi = parse_formula("! (x = y /\\ P(x))")
    assert isinstance(phi, SplitOr)  # negation normal form, no WNeg node


def test_bang_rejected_outside_fo():
    with pytest.raises(ParseError):
        parse_formula("! =(x ; y)")


def test_reserved_dollar_names():
    with pytest.raises(ParseError):
        parse_formula("w$1$1$1 = x")
    assert parse_formula("w$1$1$1 = x", allow_reserved=True) == Eq(Var("w$1$1$1"), x)


def test_registered_atom_application():
    from teamlogic.genatom import register_builtin_atoms
    atoms = register_builtin_atoms()
    phi = parse_formula("dep1(x,y)", atoms=atoms)
    from teamlogic.formula import Gen
    assert phi == Gen("dep1", (x, y))
    with pytest.raises(ParseError):
        parse_formula("dep1(x)", atoms=atoms)  # arity mismatch


def test_parse_error_positions():
    with pytest.raises(ParseError):
        parse_formula("x = ")
    with pytest.raises(ParseError):
        parse_formula("(x = y")
    with pytest.raises(ParseError):
        parse_formula("")


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 9))
def test_print_parse_round_trip(seed):
    rng = random.Random(seed)
    phi = gen_full(rng, depth=3)
    text = print_formula(phi)
    assert parse_formula(text, expand=False) == phi


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 9))
def test_round_trip_survives_reprinting(seed):
    rng = random.Random(seed)
    phi = gen_full(rng, depth=2)
    once = print_formula(phi)
    twice = print_formula(parse_formula(once, expand=False))
    assert once == twice
