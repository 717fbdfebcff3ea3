import glob
import os

import pytest

from teamlogic.entailment import entails_bounded
from teamlogic.formula import (Const, Eq, FOAtom, Inc, NegEq, NegFOAtom,
                               SeqNeq, Var)
from teamlogic.parser import parse_formula
from teamlogic.proofkernel import (ProofError, bounded_fo_step, check_proof,
                                   close_formula, parse_proof,
                                   wneg_elim_target)

PROOF_DIR = os.path.join(os.path.dirname(__file__), "..", "proofs")

x, y = Var("x"), Var("y")


def check_text(text, **kw):
    return check_proof(parse_proof(text), **kw)


def test_corpus_is_accepted():
    paths = sorted(glob.glob(os.path.join(PROOF_DIR, "*.prf")))
    assert len(paths) == 7
    for p in paths:
        with open(p) as fh:
            v = check_proof(parse_proof(fh.read()))
        assert v, "%s: %r" % (os.path.basename(p), v)


def test_parse_enforces_sequential_numbering():
    with pytest.raises(ProofError):
        parse_proof("1. x = x ; EqRefl\n3. x = x ; EqRefl\n")


def test_parse_requires_justification():
    with pytest.raises(ProofError):
        parse_proof("1. x = x\n")


def test_unknown_rule_rejected():
    v = check_text("1. x = x ; Frobnicate\n")
    assert not v and v.step == 1


def test_citation_must_be_earlier_and_in_scope():
    v = check_text("1. inc(x ; y) ; IncTrs 2 3\n"
                   "2. inc(y ; x) ; premise\n"
                   "3. inc(x ; y) ; premise\n")
    assert not v and v.step == 1
    # a closed block's inner lines are not citable from outside
    v = check_text("1. inc(x ; y) ; premise\n"
                   "assume x = y\n"
                   "3. inc(x ; y) /\\ (x = y) ; AndI 1 2\n"
                   "qed 2\n"
                   "4. x = y ; AndE 3\n")
    assert not v and v.step == 4


def test_premises_only_at_top_level():
    v = check_text("assume x = y\n"
                   "2. y = x ; premise\n"
                   "qed 1\n"
                   "3. x = x ; EqRefl\n")
    assert not v and v.step == 2


def test_exi_and_exe_round_trip():
    v = check_text("1. inc(x ; y) ; premise\n"
                   "2. E z. inc(z ; y) ; ExI 1\n"
                   "assume inc(w ; y)\n"
                   "4. E z. inc(z ; y) ; ExI 3\n"
                   "qed 3\n"
                   "5. E z. inc(z ; y) ; ExE 2 3\n")
    assert v


def test_exe_eigenvariable_must_be_fresh():
    # eigenvariable w occurs free in an accessible earlier line
    v = check_text("1. E z. inc(z ; y) ; premise\n"
                   "2. inc(w ; y) ; premise\n"
                   "assume inc(w ; y)\n"
                   "4. E z. inc(z ; y) ; ExI 3\n"
                   "qed 3\n"
                   "5. E z. inc(z ; y) ; ExE 1 3\n")
    assert not v and v.step == 5


def test_exe_conclusion_must_not_mention_eigenvariable():
    v = check_text("1. E z. inc(z ; y) ; premise\n"
                   "assume inc(w ; y)\n"
                   "3. inc(w ; y) /\\ inc(w ; y) ; AndI 2 2\n"
                   "qed 2\n"
                   "4. inc(w ; y) /\\ inc(w ; y) ; ExE 1 2\n")
    assert not v and v.step == 4


def test_wnege_requires_the_exact_synthesized_assumption():
    goal = parse_formula("=(x ; y)")
    assert wneg_elim_target(goal) is not None
    # a subproof from some other assumption to bot does not discharge
    v = check_text("assume x != x\n"
                   "2. bot ; FO 1\n"
                   "qed 1\n"
                   "3. =(x ; y) ; WNegE 1\n")
    assert not v and v.step == 3


def test_inccmp_requires_every_pattern_occurrence_replaced():
    ok = check_text("1. inc(a ; x) ; premise\n"
                    "2. x = y ; premise\n"
                    "3. a = y ; IncCmp 1 2\n")
    assert ok
    bad = check_text("1. inc(a ; x) ; premise\n"
                     "2. x = y ; premise\n"
                     "3. x = y ; IncCmp 1 2\n")
    assert not bad and bad.step == 3


def test_inccmp_side_variable_instances_are_locally_unsound():
    """The compression rule permits conclusion variables that do not come
    from the cited pattern; such instances are not semantically valid on
    their own (they are only used under the specific inclusion premises the
    calculus derives).  Record the gap explicitly."""
    hyp1 = parse_formula("inc(a ; x)")
    hyp2 = parse_formula("x = y")
    concl = parse_formula("a = y")
    step = check_text("1. inc(a ; x) ; premise\n"
                      "2. x = y ; premise\n"
                      "3. a = y ; IncCmp 1 2\n")
    assert step
    assert not entails_bounded([hyp1, hyp2], concl)


def test_incpro_and_inctrs():
    v = check_text("1. inc(a,b ; x,y) ; premise\n"
                   "2. inc(b,a ; y,x) ; IncPro 1\n"
                   "3. inc(x ; y) ; premise\n"
                   "4. inc(a ; x) ; IncPro 1\n"
                   "5. inc(a ; y) ; IncTrs 4 3\n")
    assert v
    bad = check_text("1. inc(a,b ; x,y) ; premise\n"
                     "2. inc(a,b ; y,x) ; IncPro 1\n")
    assert not bad


def test_inde_shape_is_checked():
    v = check_text("1. ind(x ;; y) ; premise\n"
                   "2. inc(w1,u1 ; x,y) ; premise\n"
                   "3. inc(w2,u2 ; x,y) ; premise\n"
                   "4. E p. E q. (inc(p,q ; x,y) /\\ (p q = w1 u2)) ; IndE 1 2 3\n")
    assert v
    wrong = check_text("1. ind(x ;; y) ; premise\n"
                       "2. inc(w1,u1 ; x,y) ; premise\n"
                       "3. inc(w2,u2 ; x,y) ; premise\n"
                       "4. E p. E q. (inc(p,q ; x,y) /\\ (p q = w2 u1)) ; IndE 1 2 3\n")
    assert not wrong and wrong.step == 4


def test_eqrefl():
    assert check_text("1. x = x ; EqRefl\n")
    assert check_text("1. x y = x y ; EqRefl\n")
    assert not check_text("1. x = y ; EqRefl\n")


def test_bounded_fo_step_basics():
    assert bounded_fo_step([Eq(x, y)], Eq(y, x))
    assert bounded_fo_step([Eq(x, y), NegEq(x, y)], parse_formula("bot"))
    assert not bounded_fo_step([Eq(x, y)], NegEq(x, y))
    # congruence through relations
    assert bounded_fo_step([Eq(x, y), FOAtom("P", (x,)), NegFOAtom("P", (y,))],
                           parse_formula("bot"))


def test_bounded_fo_step_distinct_constants_may_be_equal():
    a, b = Const("a"), Const("b")
    assert not bounded_fo_step([], NegEq(a, b))


def test_bounded_fo_step_rejects_quantifiers_and_large_inputs():
    with pytest.raises(ProofError):
        bounded_fo_step([], parse_formula("E x. x = x"))
    many = [Eq(Var("v%d" % i), Var("v%d" % (i + 1))) for i in range(20)]
    with pytest.raises(ProofError):
        bounded_fo_step(many, parse_formula("bot"), atom_cap=4)


def test_close_formula_scripts_are_accepted():
    delta = [parse_formula("=(x ; y)")]
    chi = parse_formula("inc(a ; b)")
    closed, intro, elim = close_formula(delta, chi)
    assert check_text(intro)
    assert check_text(elim)


def test_close_formula_rejects_shared_free_variables():
    with pytest.raises(ProofError):
        close_formula([parse_formula("=(x ; y)")], parse_formula("inc(x ; b)"))
