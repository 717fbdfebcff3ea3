"""Named property suites: randomized checks of the semantic laws the
evaluator is supposed to satisfy, runnable from the command line and reused
by the test suite.

Every suite draws seeded random formulas and teams over a fixed two-element
model, evaluates both sides of the law, and reports failures as printable
strings.  A formula generator per fragment keeps each suite inside the
fragment its law actually holds for.
"""

import random

from .formula import (And, BoolOr, Dep, Eq, Exists, Exists1, FOAtom, Forall,
                      Forall1, Inc, Ind, NegEq, NegFOAtom, SplitOr, Var, WNeg,
                      fo_negate, fresh_var, sorted_free_vars)
from .genatom import (build_inc, build_pro, complement, duplicating_team,
                      eval_direct, make_dep, make_inc, make_ind,
                      sigma_pi_translate, simulating_team)
from .model import Model
from .negation import wneg
from .semantics import BudgetExceeded, eval_formula, eval_single
from .team import Team, all_teams, rel, restrict, sample_teams

VARIABLES = ("x", "y", "z")


def default_model():
    return Model(("0", "1"),
                 {"P": [("1",)], "Q": [("0", "1"), ("1", "1")]})


class SuiteResult:
    def __init__(self, name, runs, failures):
        self.name = name
        self.runs = runs
        self.failures = list(failures)

    @property
    def ok(self):
        return not self.failures

    def __bool__(self):
        return self.ok

    def summary(self):
        if self.ok:
            return "%s: PASS (%d checks)" % (self.name, self.runs)
        return "%s: FAIL (%d/%d): %s" % (self.name, len(self.failures),
                                         self.runs, self.failures[0])


# --- random generators --------------------------------------------------------


def _leaf_fo(rng, vs):
    a, b = rng.choice(vs), rng.choice(vs)
    return rng.choice([
        lambda: Eq(Var(a), Var(b)),
        lambda: NegEq(Var(a), Var(b)),
        lambda: FOAtom("P", (Var(a),)),
        lambda: NegFOAtom("P", (Var(a),)),
        lambda: FOAtom("Q", (Var(a), Var(b))),
        lambda: NegFOAtom("Q", (Var(a), Var(b))),
    ])()


def gen_fo(rng, vs=VARIABLES, depth=3):
    if depth == 0 or rng.random() < 0.3:
        return _leaf_fo(rng, vs)
    kind = rng.randrange(5)
    if kind == 0:
        return And(gen_fo(rng, vs, depth - 1), gen_fo(rng, vs, depth - 1))
    if kind == 1:
        return SplitOr(gen_fo(rng, vs, depth - 1), gen_fo(rng, vs, depth - 1))
    if kind == 2:
        return Exists(Var(rng.choice(vs)), gen_fo(rng, vs, depth - 1))
    if kind == 3:
        return Forall(Var(rng.choice(vs)), gen_fo(rng, vs, depth - 1))
    return _leaf_fo(rng, vs)


def _leaf_dep(rng, vs):
    if rng.random() < 0.4:
        det = tuple(Var(v) for v in rng.sample(vs, rng.randrange(0, 2)))
        return Dep(det, (Var(rng.choice(vs)),))
    return _leaf_fo(rng, vs)


def gen_downward(rng, vs=VARIABLES, depth=3):
    """Formulas from the downward-closed fragment (no inclusion or
    independence atoms, no Boolean disjunction)."""
    if depth == 0 or rng.random() < 0.3:
        return _leaf_dep(rng, vs)
    kind = rng.randrange(4)
    if kind == 0:
        return And(gen_downward(rng, vs, depth - 1), gen_downward(rng, vs, depth - 1))
    if kind == 1:
        return SplitOr(gen_downward(rng, vs, depth - 1), gen_downward(rng, vs, depth - 1))
    if kind == 2:
        return Exists(Var(rng.choice(vs)), gen_downward(rng, vs, depth - 1))
    return Forall(Var(rng.choice(vs)), gen_downward(rng, vs, depth - 1))


def _leaf_full(rng, vs):
    r = rng.random()
    if r < 0.2:
        det = tuple(Var(v) for v in rng.sample(vs, rng.randrange(0, 2)))
        return Dep(det, (Var(rng.choice(vs)),))
    if r < 0.4:
        return Inc((Var(rng.choice(vs)),), (Var(rng.choice(vs)),))
    if r < 0.6:
        zs = tuple(Var(v) for v in rng.sample(vs, rng.randrange(0, 2)))
        return Ind((Var(rng.choice(vs)),), zs, (Var(rng.choice(vs)),))
    return _leaf_fo(rng, vs)


def gen_full(rng, vs=VARIABLES, depth=3):
    if depth == 0 or rng.random() < 0.3:
        return _leaf_full(rng, vs)
    kind = rng.randrange(8)
    sub = lambda: gen_full(rng, vs, depth - 1)
    if kind == 0:
        return And(sub(), sub())
    if kind == 1:
        return SplitOr(sub(), sub())
    if kind == 2:
        return BoolOr(sub(), sub())
    if kind == 3:
        return Exists(Var(rng.choice(vs)), sub())
    if kind == 4:
        return Forall(Var(rng.choice(vs)), sub())
    if kind == 5:
        return Exists1(Var(rng.choice(vs)), sub())
    if kind == 6:
        return Forall1(Var(rng.choice(vs)), sub())
    return WNeg(sub())


def _random_team(rng, model, variables, max_rows=8):
    space = [tuple(row) for row in _assignments(model, variables)]
    n = rng.randrange(0, max_rows + 1)
    rows = rng.sample(space, min(n, len(space)))
    return Team(variables, rows)


def _assignments(model, variables):
    import itertools
    return itertools.product(model.domain, repeat=len(variables))


def _team_vars(phi):
    fv = {v.name for v in sorted_free_vars(phi)}
    return tuple(sorted(fv | {"x"}))


# --- the suites ---------------------------------------------------------------


def suite_flatness(seed=0, runs=100, model=None):
    model = model or default_model()
    rng = random.Random(seed)
    failures = []
    for i in range(runs):
        phi = gen_fo(rng)
        X = _random_team(rng, model, _team_vars(phi))
        lhs = eval_formula(model, X, phi, literal=True)
        rhs = all(eval_single(model, s, phi) for s in X.assignments())
        if lhs != rhs:
            failures.append("run %d: team %r formula %r" % (i, X, phi))
    return SuiteResult("flatness", runs, failures)


def suite_union(seed=0, runs=100, model=None):
    model = model or default_model()
    rng = random.Random(seed)
    failures = []
    for i in range(runs):
        phi = gen_fo(rng)
        vs = _team_vars(phi)
        X, Y = _random_team(rng, model, vs), _random_team(rng, model, vs)
        if (eval_formula(model, X, phi, literal=True)
                and eval_formula(model, Y, phi, literal=True)):
            union = Team(vs, list(X.rows) + list(Y.rows))
            if not eval_formula(model, union, phi, literal=True):
                failures.append("run %d: union of %r and %r on %r" % (i, X, Y, phi))
    return SuiteResult("union", runs, failures)


def suite_lem(seed=0, runs=100, model=None):
    """Every team satisfies the split disjunction of a first-order formula
    with its negation."""
    model = model or default_model()
    rng = random.Random(seed)
    failures = []
    for i in range(runs):
        phi = gen_fo(rng)
        X = _random_team(rng, model, _team_vars(phi))
        if not eval_formula(model, X, SplitOr(phi, fo_negate(phi)), literal=True):
            failures.append("run %d: team %r formula %r" % (i, X, phi))
    return SuiteResult("lem", runs, failures)


def suite_downward(seed=0, runs=100, model=None):
    model = model or default_model()
    rng = random.Random(seed)
    failures = []
    for i in range(runs):
        phi = gen_downward(rng)
        vs = _team_vars(phi)
        X = _random_team(rng, model, vs)
        if not eval_formula(model, X, phi):
            continue
        rows = sorted(X.rows)
        for _ in range(8):
            sub = Team(vs, [r for r in rows if rng.random() < 0.5])
            if not eval_formula(model, sub, phi):
                failures.append("run %d: subteam %r of %r on %r" % (i, sub, X, phi))
                break
    return SuiteResult("downward", runs, failures)


def suite_locality(seed=0, runs=100, model=None):
    model = model or default_model()
    rng = random.Random(seed)
    failures = []
    for i in range(runs):
        phi = gen_full(rng, depth=2)
        fv = tuple(sorted({v.name for v in sorted_free_vars(phi)}))
        wide = tuple(sorted(set(fv) | {"x", "pad"}))
        X = _random_team(rng, model, wide, max_rows=4)
        try:
            lhs = eval_formula(model, X, phi)
            rhs = eval_formula(model, restrict(X, fv or ("x",)), phi)
        except BudgetExceeded:
            # a pathological nesting of quantifiers; no verdict either way
            continue
        if lhs != rhs:
            failures.append("run %d: team %r formula %r" % (i, X, phi))
    return SuiteResult("locality", runs, failures)


def suite_empty_team(seed=0, runs=100, model=None):
    model = model or default_model()
    rng = random.Random(seed)
    failures = []
    for i in range(runs):
        phi = gen_full(rng, depth=2)
        X = Team(_team_vars(phi), [])
        if not eval_formula(model, X, phi):
            failures.append("run %d: formula %r" % (i, phi))
    return SuiteResult("empty-team", runs, failures)


def suite_fo_negation(seed=0, runs=50, model=None):
    """The synthesized weak negation of a first-order formula agrees with the
    semantic weak-negation clause."""
    model = model or default_model()
    rng = random.Random(seed)
    failures = []
    for i in range(runs):
        phi = gen_fo(rng, depth=2)
        X = _random_team(rng, model, _team_vars(phi), max_rows=4)
        lhs = eval_formula(model, X, wneg(phi))
        rhs = eval_formula(model, X, WNeg(phi))
        if lhs != rhs:
            failures.append("run %d: team %r formula %r" % (i, X, phi))
    return SuiteResult("fo-negation", runs, failures)


_ATOM_CASES = [
    (make_dep(1), ("x", "y")),
    (make_inc(1), ("x", "y")),
    (make_ind(1, 1, 0), ("x", "y")),
    (make_ind(1, 1, 1), ("x", "y", "z")),
]


def _native_atom(d, vs):
    ts = tuple(Var(v) for v in vs)
    if d.name.startswith("dep"):
        return Dep(ts[:-1], ts[-1:])
    if d.name.startswith("inc"):
        k = len(ts) // 2
        return Inc(ts[:k], ts[k:])
    # ind atom argument order is x-part, y-part, z-part
    kx, ky, _ = map(int, d.name[len("ind"):].split("_"))
    return Ind(ts[:kx], ts[kx + ky:], ts[kx:kx + ky])


def suite_atom_translation(seed=0, runs=30, model=None):
    """Native atom evaluation, the direct alternation clause, and the
    translated defining formula agree."""
    model = model or default_model()
    rng = random.Random(seed)
    failures = []
    total = 0
    for d, vs in _ATOM_CASES:
        native = _native_atom(d, vs)
        translated = sigma_pi_translate(d, [Var(v) for v in vs])
        if len(vs) <= 2:
            teams = list(all_teams(model, vs))
        else:
            teams = [_random_team(rng, model, vs, max_rows=4) for _ in range(runs)]
        for X in teams:
            total += 1
            a = eval_formula(model, X, native)
            b = eval_direct(model, X, d, [Var(v) for v in vs])
            c = eval_formula(model, X, translated)
            if not (a == b == c):
                failures.append("%s on %r: native=%s direct=%s translated=%s"
                                % (d.name, X, a, b, c))
    return SuiteResult("atom-translation", total, failures)


def suite_atom_complement(seed=0, runs=30, model=None):
    """Weak negation of an atom is the complemented atom over the same grid."""
    model = model or default_model()
    rng = random.Random(seed)
    failures = []
    total = 0
    for d, vs in _ATOM_CASES:
        native = _native_atom(d, vs)
        co = complement(d)
        if len(vs) <= 2:
            teams = list(all_teams(model, vs))
        else:
            teams = [_random_team(rng, model, vs, max_rows=4) for _ in range(runs)]
        for X in teams:
            total += 1
            lhs = eval_formula(model, X, WNeg(native))
            rhs = X.is_empty() or eval_direct(model, X, co, [Var(v) for v in vs])
            if lhs != rhs:
                failures.append("%s on %r: wneg=%s complement=%s"
                                % (d.name, X, lhs, rhs))
    return SuiteResult("atom-complement", total, failures)


def gen_so_friendly(rng, vs=("x", "y"), depth=2):
    """Random formulas kept small enough for brute-force second-order
    checking: few free variables and at most modest relation arities."""
    if depth == 0 or rng.random() < 0.4:
        return _leaf_full(rng, vs)
    kind = rng.randrange(6)
    sub = lambda: gen_so_friendly(rng, vs, depth - 1)
    if kind == 0:
        return And(sub(), sub())
    if kind == 1:
        return SplitOr(sub(), sub())
    if kind == 2:
        return Exists(Var(rng.choice(vs)), sub())
    if kind == 3:
        return Forall(Var(rng.choice(vs)), sub())
    if kind == 4:
        return Exists1(Var(rng.choice(vs)), sub())
    return Forall1(Var(rng.choice(vs)), sub())


def suite_so_correspondence(seed=0, runs=40, model=None):
    """Team satisfaction agrees with truth of the second-order translation
    over the team relation."""
    from .eso import check_correspondence
    model = model or default_model()
    rng = random.Random(seed)
    failures = []
    total = 0
    for d, vs in _ATOM_CASES[:3]:
        native = _native_atom(d, vs)
        for X in all_teams(model, vs):
            total += 1
            if not check_correspondence(model, X, native):
                failures.append("atom %s on %r" % (d.name, X))
    for i in range(runs):
        phi = gen_so_friendly(rng)
        X = _random_team(rng, model, _team_vars(phi), max_rows=4)
        total += 1
        if not check_correspondence(model, X, phi):
            failures.append("run %d: team %r formula %r" % (i, X, phi))
    return SuiteResult("so-correspondence", total, failures)


def suite_definability(seed=0, runs=50, model=None):
    """The single-value quantifier and the Boolean disjunction are definable:
    E1 x phi == E x (=(x) /\\ phi), and phi || psi via two constancy flags."""
    model = model or default_model()
    rng = random.Random(seed)
    failures = []
    for i in range(runs):
        phi = gen_downward(rng, depth=2)
        psi = gen_downward(rng, depth=2)
        x = Var(rng.choice(VARIABLES))
        X = _random_team(rng, model, _team_vars(And(phi, psi)), max_rows=4)
        lhs = eval_formula(model, X, Exists1(x, phi))
        rhs = eval_formula(model, X, Exists(x, And(Dep((), (x,)), phi)))
        if lhs != rhs:
            failures.append("run %d (single-value): team %r formula %r" % (i, X, phi))
            continue
        w, u = fresh_var("w"), fresh_var("u")
        defined = Exists(w, Exists(u, And(
            And(Dep((), (w,)), Dep((), (u,))),
            And(SplitOr(Eq(w, u), phi), SplitOr(NegEq(w, u), psi)))))
        lhs = eval_formula(model, X, BoolOr(phi, psi))
        rhs = eval_formula(model, X, defined)
        if lhs != rhs:
            failures.append("run %d (boolean-or): team %r formulas %r, %r"
                            % (i, X, phi, psi))
    return SuiteResult("definability", runs, failures)


def suite_team_constructions(seed=0, runs=50, model=None):
    """simulating_team satisfies the inclusion guard of its rounds;
    duplicating_team satisfies the duplication guard."""
    model = model or default_model()
    rng = random.Random(seed)
    failures = []
    xs = [Var("x"), Var("y")]
    d_sim = make_ind(1, 1, 0)  # round 1: two team-drawn rows
    d_dup = make_dep(1)        # round 1: two independent covering rows
    for i in range(runs):
        X = _random_team(rng, model, ("x", "y"), max_rows=4)
        if X.is_empty():
            continue
        rows = sorted(X.rows)
        groups = [d_sim.row_vars(1, 1), d_sim.row_vars(1, 2)]
        choices = [{r: rng.choice(rows) for r in rows} for _ in groups]
        Y = simulating_team(model, X, choices, xs, groups)
        if not eval_formula(model, Y, build_inc(d_sim, 1, xs)):
            failures.append("run %d: simulating team %r misses its guard" % (i, Y))
            continue
        groups = [d_dup.row_vars(1, 1), d_dup.row_vars(1, 2)]
        Z = duplicating_team(model, X, xs, groups)
        if not eval_formula(model, Z, build_pro(d_dup, 1, xs)):
            failures.append("run %d: duplicating team %r misses its guard" % (i, Z))
    return SuiteResult("team-constructions", runs, failures)


SUITES = {
    "flatness": suite_flatness,
    "union": suite_union,
    "lem": suite_lem,
    "downward": suite_downward,
    "locality": suite_locality,
    "empty-team": suite_empty_team,
    "fo-negation": suite_fo_negation,
    "atom-translation": suite_atom_translation,
    "atom-complement": suite_atom_complement,
    "so-correspondence": suite_so_correspondence,
    "definability": suite_definability,
    "team-constructions": suite_team_constructions,
}


def run_suite(name, seed=0, runs=None, model=None):
    if name not in SUITES:
        raise KeyError("unknown suite %r (have: %s)" % (name, ", ".join(sorted(SUITES))))
    fn = SUITES[name]
    if runs is None:
        return fn(seed=seed, model=model)
    return fn(seed=seed, runs=runs, model=model)


def run_all(seed=0, runs=None, model=None):
    return [run_suite(name, seed=seed, runs=runs, model=model)
            for name in SUITES]
