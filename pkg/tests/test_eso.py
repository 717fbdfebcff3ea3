import random

import pytest
from hypothesis import given, settings, strategies as st

from teamlogic.checks import default_model, gen_so_friendly
from teamlogic.eso import (ESOFormula, EsoCapExceeded, EsoError, ESOFormula,
                           check_correspondence, eval_eso, print_eso, tau)
from teamlogic.formula import (And, Dep, Eq, Exists, FOAtom, Forall, Inc, Ind,
                               SplitOr, Var, WNeg, free_vars)
from teamlogic.model import expand_with_relation
from teamlogic.team import Team, all_teams, rel, sample_small_teams

x, y = Var("x"), Var("y")
M = default_model()


def test_eso_formula_requires_fo_matrix():
    with pytest.raises(EsoError):
        ESOFormula((), Dep((x,), (y,)))


def test_tau_of_fo_guards_by_membership():
    psi = tau(Eq(x, y), sym="R")
    assert psi.so_vars == ()
    assert isinstance(psi.matrix, Forall)


def test_tau_of_split_introduces_two_relations():
    psi = tau(SplitOr(Dep((x,), (y,)), Eq(x, y)), sym="R")
    assert len(psi.so_vars) == 2
    assert all(ar == 2 for _, ar in psi.so_vars) or {ar for _, ar in psi.so_vars} == {2}


def test_tau_rejects_wneg():
    with pytest.raises(EsoError):
        tau(WNeg(Eq(x, y)))


def test_tau_rejects_unregistered_atom():
    from teamlogic.formula import Gen
    with pytest.raises(EsoError):
        tau(Gen("mystery", (x,)))


def test_print_eso_prefix():
    psi = ESOFormula((("S", 2),), FOAtom("S", (x, y)))
    assert print_eso(psi).startswith("E2 S/2. ")


def test_eval_eso_cap():
    psi = ESOFormula((("S", 6),), Forall(x, Eq(x, x)))
    with pytest.raises(EsoCapExceeded):
        eval_eso(M, psi, max_combos=1 << 10)


def test_eval_eso_simple_sentences():
    # some unary S containing exactly the P-elements
    matrix = Forall(x, SplitOr(And(FOAtom("S", (x,)), FOAtom("P", (x,))),
                               And(FOAtom("co", (x,)), FOAtom("S", (x,)))))
    psi = ESOFormula((("S", 1),),
                     Forall(x, SplitOr(FOAtom("S", (x,)), FOAtom("P", (x,)))))
    assert eval_eso(M, psi)


def test_correspondence_on_concrete_cases():
    for phi, vs in [(Dep((x,), (y,)), ("x", "y")),
                    (Inc((x,), (y,)), ("x", "y")),
                    (Ind((x,), (), (y,)), ("x", "y")),
                    (Exists(y, And(Eq(x, y), Dep((), (y,)))), ("x",)),
                    (SplitOr(FOAtom("P", (x,)), Dep((), (x,))), ("x",))]:
        for X in all_teams(M, vs):
            assert check_correspondence(M, X, phi), (phi, X)


def test_correspondence_sentence_uses_nullary_relation():
    phi = Exists(x, FOAtom("P", (x,)))
    psi = tau(phi, sym="R")
    # nonempty team: R holds the empty tuple
    expanded = expand_with_relation(M, "R", [()])
    assert eval_eso(expanded, psi)
    for X in all_teams(M, ("y",)):
        assert check_correspondence(M, X, phi)


def test_single_value_universal_parametrizes_inner_relations():
    """The split relations inside a single-value universal must be allowed
    to vary with the quantified value (regression: they were hoisted above
    the first-order quantifier unchanged)."""
    from teamlogic.formula import Forall1, NegEq
    phi = Forall1(x, SplitOr(Dep((x,), (y,)), NegEq(x, x)))
    psi = tau(phi, sym="R")
    assert all(ar >= 1 for _, ar in psi.so_vars)
    X = Team(("x", "y"), [("0", "0"), ("1", "0")])
    assert check_correspondence(M, X, phi)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 9))
def test_correspondence_on_random_formulas(seed):
    rng = random.Random(seed)
    phi = gen_so_friendly(rng)
    vs = tuple(sorted({v.name for v in free_vars(phi)} | {"x"}))
    for X in sample_small_teams(M, vs, 2, max_rows=3, seed=seed):
        assert check_correspondence(M, X, phi), (phi, X)
