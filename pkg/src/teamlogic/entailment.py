"""Bounded semantic entailment: exhaust finite models and teams looking for
a counterexample.  A positive answer is only ever "valid up to the bound";
a counterexample is conclusive and is reported with its witness.
"""

import itertools

from .formula import Const, FOAtom, NegFOAtom, free_vars
from .model import Signature, enumerate_models
from .semantics import EvalBudget, Evaluator
from .team import TeamCapExceeded, all_teams, sample_small_teams, sample_teams

VALID_UP_TO_BOUND = "ValidUpToBound"
COUNTEREXAMPLE = "Counterexample"


class EntailmentVerdict:
    def __init__(self, status, witness, searched):
        self.status = status
        self.witness = witness  # (model, team) for a counterexample
        self.searched = searched  # dict with model/team counts and notes

    def __bool__(self):
        return self.status == VALID_UP_TO_BOUND

    def __repr__(self):
        return "EntailmentVerdict(%s, searched=%r)" % (self.status, self.searched)


def mentioned_signature(formulas, registry=None):
    """Relations and constants occurring in the formulas.  Generalized atoms
    contribute the relations of their defining formulas."""
    from .formula import Gen, Var
    rels = {}
    consts = set()

    def walk(phi):
        if isinstance(phi, (FOAtom, NegFOAtom)):
            rels[phi.rel] = len(phi.args)
        if isinstance(phi, Gen) and registry and phi.atom_name in registry:
            walk(registry[phi.atom_name].phiR)
        for f in phi.__dataclass_fields__:
            v = getattr(phi, f)
            items = v if isinstance(v, tuple) else (v,)
            for item in items:
                if isinstance(item, Const):
                    consts.add(item.name)
                elif isinstance(item, Var):
                    pass
                elif hasattr(item, "__dataclass_fields__"):
                    walk(item)

    for phi in formulas:
        walk(phi)
    return Signature(rels, consts)


def entails_bounded(hypotheses, conclusion, max_domain=2, team_cap=16,
                    samples=0, seed=0, max_rows=None, registry=None,
                    budget=None):
    """Search all models up to max_domain over the mentioned signature and,
    per model, all teams over the union of free variables (or `samples`
    random teams when the exhaustive space exceeds team_cap assignments, or
    always when samples > 0 and the space is large)."""
    formulas = list(hypotheses) + [conclusion]
    sig = mentioned_signature(formulas, registry)
    variables = sorted({v.name for phi in formulas for v in free_vars(phi)})
    budget = budget or EvalBudget()
    n_models = n_teams = 0
    notes = []
    for model in enumerate_models(sig, max_domain):
        n_models += 1
        ev = Evaluator(model, registry, budget)
        try:
            teams = list(all_teams(model, variables, cap=team_cap))
        except TeamCapExceeded:
            count = samples or 1000
            if max_rows is not None:
                teams = sample_small_teams(model, variables, count, max_rows, seed)
            else:
                teams = sample_teams(model, variables, count, seed)
            if "sampled teams" not in notes:
                notes.append("sampled teams")
        for X in teams:
            n_teams += 1
            if all(ev.eval(X, h) for h in hypotheses) and not ev.eval(X, conclusion):
                return EntailmentVerdict(
                    COUNTEREXAMPLE, (model, X),
                    {"models": n_models, "teams": n_teams, "notes": notes})
    return EntailmentVerdict(
        VALID_UP_TO_BOUND, None,
        {"models": n_models, "teams": n_teams, "notes": notes})


def rule_soundness_check(premises, conclusion, max_domain=2, **kw):
    """A deduction-rule instance is sound when its premises entail its
    conclusion; hypothetical rules are checked by the caller passing the
    subproof's assumption among the premises."""
    return entails_bounded(premises, conclusion, max_domain=max_domain, **kw)
