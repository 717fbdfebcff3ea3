"""Teams and the team algebra: duplication, supplementation, relation
extraction, restriction, exhaustive and random team generators.

A team is an ordered tuple of variable names plus a frozenset of value rows
(tuples aligned with the variable order).  Teams are canonical: equal teams
compare equal structurally.

Team file format: "vars x y z" then one "row a a b" line per assignment.
"""

import itertools
import random


class TeamError(ValueError):
    pass


class TeamCapExceeded(TeamError):
    """Raised when an exhaustive enumeration would exceed the configured cap;
    callers should fall back to sample_teams."""


class Team:
    def __init__(self, variables, rows):
        self.vars = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise TeamError("duplicate variable in team domain")
        rows = frozenset(tuple(r) for r in rows)
        for r in rows:
            if len(r) != len(self.vars):
                raise TeamError("row length %d does not match %d variables"
                                % (len(r), len(self.vars)))
        self.rows = rows
        self._index = {v: i for i, v in enumerate(self.vars)}

    def __len__(self):
        return len(self.rows)

    def __eq__(self, other):
        return (isinstance(other, Team) and self.vars == other.vars
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.vars, self.rows))

    def __repr__(self):
        return "Team(%r, %r)" % (self.vars, sorted(self.rows))

    def is_empty(self):
        return not self.rows

    def column(self, var):
        if var not in self._index:
            raise TeamError("unknown variable %s" % var)
        return self._index[var]

    def assignments(self):
        """Rows as dicts variable -> value."""
        for r in sorted(self.rows):
            yield dict(zip(self.vars, r))


def team_of_assignments(dicts, variables=None):
    dicts = list(dicts)
    if variables is None:
        if not dicts:
            raise TeamError("cannot infer variables of an empty team")
        variables = tuple(sorted(dicts[0]))
    rows = []
    for s in dicts:
        if set(s) != set(variables):
            raise TeamError("assignment domain mismatch")
        rows.append(tuple(s[v] for v in variables))
    return Team(variables, rows)


def duplicate(X, model, x):
    """X(M/x): every row extended (or overwritten) with every domain value."""
    if x in X.vars:
        i = X.column(x)
        rows = [r[:i] + (a,) + r[i + 1:] for r in X.rows for a in model.domain]
        return Team(X.vars, rows)
    rows = [r + (a,) for r in X.rows for a in model.domain]
    return Team(X.vars + (x,), rows)


def supplement(X, F, x):
    """X[F/x] for a supplement function F: row-tuple -> nonempty value set."""
    for r in X.rows:
        if r not in F:
            raise TeamError("supplement function undefined on a row")
        if not F[r]:
            raise TeamError("supplement function has an empty value set")
    if x in X.vars:
        i = X.column(x)
        rows = [r[:i] + (a,) + r[i + 1:] for r in X.rows for a in F[r]]
        return Team(X.vars, rows)
    rows = [r + (a,) for r in X.rows for a in F[r]]
    return Team(X.vars + (x,), rows)


def rel(X, variables):
    """rel(X, xs): the set of value tuples of xs across the team.  With an
    empty variable list this is {()} iff the team is nonempty."""
    idx = [X.column(v) for v in variables]
    return {tuple(r[i] for i in idx) for r in X.rows}


def team_of_relation(R, variables):
    """X_R: one row per tuple."""
    variables = tuple(variables)
    for t in R:
        if len(t) != len(variables):
            raise TeamError("tuple length does not match variable list")
    return Team(variables, [tuple(t) for t in R])


def restrict(X, variables):
    """X restricted to a sub-domain, duplicates collapsed."""
    variables = tuple(variables)
    idx = [X.column(v) for v in variables]
    return Team(variables, [tuple(r[i] for i in idx) for r in X.rows])


def all_teams(model, variables, cap=16):
    """Every team of M over the given variables, deterministically ordered.
    Refuses (TeamCapExceeded) when there are more than `cap` assignments."""
    variables = tuple(variables)
    n_assign = len(model.domain) ** len(variables)
    if n_assign > cap:
        raise TeamCapExceeded(
            "%d assignments exceed the cap of %d; use sample_teams" % (n_assign, cap))
    space = sorted(itertools.product(model.domain, repeat=len(variables)))
    for mask in range(1 << n_assign):
        yield Team(variables, [space[i] for i in range(n_assign) if mask >> i & 1])


def sample_teams(model, variables, count, seed):
    """Pseudo-random teams: each assignment is included independently with
    probability 1/2.  Reproducible from the seed."""
    variables = tuple(variables)
    rng = random.Random(seed)
    space = sorted(itertools.product(model.domain, repeat=len(variables)))
    for _ in range(count):
        yield Team(variables, [row for row in space if rng.random() < 0.5])


def sample_small_teams(model, variables, count, max_rows, seed):
    """Random teams with at most max_rows rows; keeps property suites over
    many variables affordable."""
    variables = tuple(variables)
    rng = random.Random(seed)
    domain = model.domain
    for _ in range(count):
        k = rng.randint(0, max_rows)
        rows = {tuple(rng.choice(domain) for _ in variables) for _ in range(k)}
        yield Team(variables, rows)


def parse_team(text):
    variables = None
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vars":
            if variables is not None:
                raise TeamError("duplicate vars line")
            variables = tuple(parts[1:])
        elif parts[0] == "row":
            if variables is None:
                raise TeamError("row line before vars line")
            if len(parts) - 1 != len(variables):
                raise TeamError("row length mismatch: %r" % raw)
            rows.append(tuple(parts[1:]))
        else:
            raise TeamError("unrecognized line: %r" % raw)
    if variables is None:
        raise TeamError("missing vars line")
    return Team(variables, rows)


def print_team(X):
    lines = ["vars %s" % " ".join(X.vars)]
    for r in sorted(X.rows):
        lines.append("row %s" % " ".join(r))
    return "\n".join(lines) + "\n"
