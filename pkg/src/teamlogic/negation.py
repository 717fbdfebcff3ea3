"""Synthesis of the weak classical negation inside the base language.

Weak negation is expressible only for the negatable fragment: first-order
formulas, the dependence / independence / inclusion atoms, generalized atoms
with a first-order defining formula, closed under conjunction, Boolean
disjunction, the single-value quantifiers, and weak negation itself.
is_negatable_fragment recognizes that fragment syntactically; wneg carries
out the synthesis.
"""

from .formula import (And, BoolOr, Dep, Exists1, Forall1, Gen, Inc, Ind, Var,
                      WNeg, exists_block, fo_negate, free_vars,
                      is_first_order, sorted_free_vars, substitute)
from .genatom import (complement, make_inc, make_ind, sigma_pi_translate)


class NotNegatableError(ValueError):
    def __init__(self, report):
        super().__init__("formula outside the negatable fragment: %s" % report.reason)
        self.report = report


class NegatableReport:
    def __init__(self, in_fragment, reason):
        self.in_fragment = in_fragment
        self.reason = reason

    def __bool__(self):
        return self.in_fragment


def is_negatable_fragment(phi, registry=None):
    if is_first_order(phi):
        return NegatableReport(True, "first-order")
    if isinstance(phi, (Dep, Ind, Inc)):
        return NegatableReport(True, "dependency atom")
    if isinstance(phi, Gen):
        if registry is not None and phi.atom_name not in registry:
            return NegatableReport(False, "unregistered atom %s" % phi.atom_name)
        return NegatableReport(True, "generalized atom")
    if isinstance(phi, (And, BoolOr)):
        for side in (phi.l, phi.r):
            rep = is_negatable_fragment(side, registry)
            if not rep:
                return rep
        return NegatableReport(True, "closure under the binary connective")
    if isinstance(phi, (Exists1, Forall1, WNeg)):
        body = phi.body
        rep = is_negatable_fragment(body, registry)
        if not rep:
            return rep
        return NegatableReport(True, "closure under the unary connective")
    return NegatableReport(False, "offending subformula %r" % (phi,))


def wneg(phi, registry=None):
    """A formula of the base language equivalent to the weak classical
    negation of phi (true on the empty team, elsewhere the complement)."""
    rep = is_negatable_fragment(phi, registry)
    if not rep:
        raise NotNegatableError(rep)
    return _wneg(phi, registry)


def _wneg(phi, registry):
    if is_first_order(phi):
        return _wneg_fo(phi)
    if isinstance(phi, Dep):
        # =(z1..zn ; y1..yk)  ==  y1..yk _|_{z1..zn} y1..yk
        d = make_ind(len(phi.dependent), len(phi.dependent), len(phi.determiners))
        args = phi.dependent + phi.dependent + phi.determiners
        return sigma_pi_translate(complement(d), list(args))
    if isinstance(phi, Ind):
        d = make_ind(len(phi.xs), len(phi.ys), len(phi.zs))
        return sigma_pi_translate(complement(d), list(phi.xs + phi.ys + phi.zs))
    if isinstance(phi, Inc):
        d = make_inc(len(phi.xs))
        return sigma_pi_translate(complement(d), list(phi.xs + phi.ys))
    if isinstance(phi, Gen):
        return sigma_pi_translate(complement(registry[phi.atom_name]),
                                  list(phi.args))
    if isinstance(phi, And):
        return BoolOr(_wneg(phi.l, registry), _wneg(phi.r, registry))
    if isinstance(phi, BoolOr):
        return And(_wneg(phi.l, registry), _wneg(phi.r, registry))
    if isinstance(phi, Exists1):
        return Forall1(phi.v, _wneg(phi.body, registry))
    if isinstance(phi, Forall1):
        return Exists1(phi.v, _wneg(phi.body, registry))
    if isinstance(phi, WNeg):
        # double weak negation collapses: both sides are true on the empty
        # team, and on nonempty teams the two complements cancel
        return phi.body
    raise AssertionError("unreachable: %r" % (phi,))


def _wneg_fo(phi):
    """A nonempty team fails a first-order formula iff some row does, i.e.
    iff some value combination of the team refutes it: quantify a fresh copy
    of the free variables, included in the originals, satisfying the
    negation."""
    xs = sorted_free_vars(phi)
    if not xs:
        return fo_negate(phi)
    used = {v.name for v in free_vars(phi)}
    ws = []
    i = 1
    while len(ws) < len(xs):
        name = "w$0$%d" % i
        if name not in used:
            ws.append(Var(name))
        i += 1
    renamed = substitute(phi, {x: w for x, w in zip(xs, ws)})
    return exists_block(ws, And(Inc(tuple(ws), tuple(xs)), fo_negate(renamed)))
