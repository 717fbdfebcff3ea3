import pytest

from teamlogic.formula import (And, Bot, Const, Dep, Eq, Exists, FOAtom, Forall,
                               Implies, Inc, Ind, NegEq, NegFOAtom, SeqEq,
                               SeqNeq, SplitOr, SubstitutionError, Top, Var,
                               WNeg, alpha_equal, expand_sugar, fo_negate,
                               free_vars, fresh_var, is_first_order,
                               is_quantifier_free_fo, sorted_free_vars,
                               substitute)

x, y, z = Var("x"), Var("y"), Var("z")


def test_free_vars_atom():
    phi = Ind((x,), (z,), (y,))
    assert free_vars(phi) == {x, y, z}


def test_free_vars_quantifier():
    phi = Exists(x, And(Eq(x, y), FOAtom("P", (x,))))
    assert free_vars(phi) == {y}
    assert sorted_free_vars(phi) == (y,)


def test_substitute_simple():
    phi = Eq(x, y)
    assert substitute(phi, {x: z}) == Eq(z, y)


def test_substitute_shadowed():
    phi = Exists(x, Eq(x, y))
    assert substitute(phi, {x: z}) == phi


def test_substitute_capture_avoiding():
    phi = Exists(y, Eq(x, y))
    out = substitute(phi, {x: y})
    # the bound y must have been renamed away from the substituted value
    assert isinstance(out, Exists)
    assert out.v != y
    assert out.body == Eq(y, out.v)


def test_substitute_const_into_atom_rejected():
    phi = Dep((x,), (y,))
    with pytest.raises(SubstitutionError):
        substitute(phi, {x: Const("c")})


def test_fresh_var_is_new_each_time():
    a, b = fresh_var("q"), fresh_var("q")
    assert a != b


def test_is_first_order():
    assert is_first_order(Forall(x, SplitOr(Eq(x, y), NegFOAtom("P", (x,)))))
    assert not is_first_order(Dep((x,), (y,)))
    assert not is_first_order(And(Eq(x, y), Inc((x,), (y,))))


def test_is_quantifier_free_fo():
    assert is_quantifier_free_fo(And(Eq(x, y), Top()))
    assert not is_quantifier_free_fo(Exists(x, Eq(x, y)))


def test_fo_negate_literals():
    assert fo_negate(Eq(x, y)) == NegEq(x, y)
    assert fo_negate(NegEq(x, y)) == Eq(x, y)
    assert fo_negate(FOAtom("P", (x,))) == NegFOAtom("P", (x,))
    assert fo_negate(Bot()) == Top()


def test_fo_negate_swaps_connectives_and_quantifiers():
    phi = Exists(x, And(Eq(x, y), FOAtom("P", (x,))))
    neg = fo_negate(phi)
    assert neg == Forall(x, SplitOr(NegEq(x, y), NegFOAtom("P", (x,))))


def test_expand_sugar_implies():
    phi = Implies(Eq(x, y), FOAtom("P", (x,)))
    assert expand_sugar(phi) == SplitOr(NegEq(x, y), FOAtom("P", (x,)))


def test_expand_sugar_sequences():
    assert expand_sugar(SeqEq((x, y), (y, z))) == And(Eq(x, y), Eq(y, z))
    got = expand_sugar(SeqNeq((x, y), (y, z)))
    assert got == SplitOr(NegEq(x, y), NegEq(y, z))


def test_expand_sugar_empty_sequences():
    assert expand_sugar(SeqEq((), ())) == Top()
    assert expand_sugar(SeqNeq((), ())) == Bot()


def test_sequence_length_mismatch_rejected():
    with pytest.raises(ValueError):
        Inc((x,), (y, z))
    with pytest.raises(ValueError):
        SeqEq((x,), (y, z))


def test_alpha_equal_bound_renaming():
    assert alpha_equal(Exists(x, Eq(x, y)), Exists(z, Eq(z, y)))
    assert not alpha_equal(Exists(x, Eq(x, y)), Exists(z, Eq(z, z)))


def test_alpha_equal_free_vars_matter():
    assert not alpha_equal(Eq(x, y), Eq(x, z))


def test_alpha_equal_nested():
    a = Exists(x, Forall(y, And(Eq(x, y), Inc((x,), (y,)))))
    b = Exists(y, Forall(x, And(Eq(y, x), Inc((y,), (x,)))))
    assert alpha_equal(a, b)


def test_wneg_node_is_not_first_order():
    assert not is_first_order(WNeg(Eq(x, y)))
