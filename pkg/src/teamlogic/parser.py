"""Concrete ASCII syntax for formulas, with a round-tripping printer.

Grammar (loosest to tightest):

    formula := bor ("->" formula)?          implication, right-assoc, FO antecedent
    bor     := or  ("||" or)*               boolean disjunction
    or      := and ("\\/" and)*             splitting disjunction
    and     := pre ("/\\" pre)*
    pre     := ("E"|"A"|"E1"|"A1") var "." pre | "wneg" pre | "!" pre | prim
    prim    := "bot" | "top"
             | "=(" varlist (";" varlist)? ")"
             | "inc(" varlist ";" varlist ")"
             | "ind(" varlist ";" varlist ";" varlist ")"
             | ident "(" termlist ")"
             | "(" formula ")"
             | termseq ("="|"!=") termseq

"!" is only permitted on first-order subformulas and is eliminated by
fo_negate.  "=(x,y,z)" without a ";" reads all-but-last-determine-last.
Identifiers listed in `constants` parse as constants, everything else as a
variable.  Variables containing "$" are reserved for generated formulas and
rejected unless allow_reserved is set.
"""

import re

from .formula import (And, Bot, BoolOr, Const, Dep, Eq, Exists, Exists1,
                      FOAtom, Forall, Forall1, Gen, Implies, Inc, Ind, NegEq,
                      NegFOAtom, SeqEq, SeqNeq, SplitOr, Top, Var, WNeg,
                      expand_sugar, fo_negate, is_first_order)


class SourceSpan:
    def __init__(self, start, end):
        assert start <= end
        self.start = start
        self.end = end

    def __repr__(self):
        return "SourceSpan(%d, %d)" % (self.start, self.end)


class ParseError(ValueError):
    def __init__(self, message, span):
        super().__init__("%s (at %d..%d)" % (message, span.start, span.end))
        self.span = span


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<op>->|!=|\|\||/\\|\\/|[().,;=!])|(?P<ident>[A-Za-z_][A-Za-z0-9_$]*))")

KEYWORDS = {"E", "A", "E1", "A1", "wneg", "bot", "top", "inc", "ind"}


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == m.start():
            rest = text[pos:].lstrip()
            if not rest:
                break
            at = len(text) - len(rest)
            raise ParseError("unexpected character %r" % rest[0], SourceSpan(at, at + 1))
        if m.group("op"):
            toks.append((m.group("op"), SourceSpan(m.start(1), m.end(1))))
        else:
            toks.append((m.group("ident"), SourceSpan(m.start(2), m.end(2))))
        pos = m.end()
    toks.append((None, SourceSpan(len(text), len(text))))
    return toks


class _Parser:
    def __init__(self, text, constants, atoms, allow_reserved):
        self.toks = _tokenize(text)
        self.i = 0
        self.constants = set(constants)
        self.atoms = atoms or {}
        self.allow_reserved = allow_reserved

    def peek(self):
        return self.toks[self.i][0]

    def span(self):
        return self.toks[self.i][1]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, tok):
        got, span = self.next()
        if got != tok:
            raise ParseError("expected %r, got %r" % (tok, got), span)

    def fail(self, msg):
        raise ParseError(msg, self.span())

    # -- terms ---------------------------------------------------------------

    def is_ident(self, t):
        return t is not None and re.fullmatch(r"[A-Za-z_][A-Za-z0-9_$]*", t) is not None

    def term(self):
        t, span = self.next()
        if not self.is_ident(t) or t in KEYWORDS:
            raise ParseError("expected a term, got %r" % t, span)
        if "$" in t and not self.allow_reserved:
            raise ParseError("variable %r uses the reserved '$' prefix" % t, span)
        if t in self.constants:
            return Const(t)
        return Var(t)

    def variable(self):
        t = self.term()
        if not isinstance(t, Var):
            self.fail("expected a variable, not the constant %r" % t.name)
        return t

    def varlist(self):
        """Comma-separated (possibly empty) list of variables."""
        out = []
        while self.is_ident(self.peek()) and self.peek() not in KEYWORDS:
            out.append(self.variable())
            if self.peek() == ",":
                self.next()
            else:
                break
        return tuple(out)

    def termlist(self):
        out = [self.term()]
        while self.peek() == ",":
            self.next()
            out.append(self.term())
        return tuple(out)

    # -- formulas ------------------------------------------------------------

    def formula(self):
        lhs = self.bor()
        if self.peek() == "->":
            span = self.span()
            self.next()
            rhs = self.formula()
            if not is_first_order(lhs):
                raise ParseError("implication antecedent must be first-order", span)
            return Implies(lhs, rhs)
        return lhs

    def bor(self):
        out = self.orr()
        while self.peek() == "||":
            self.next()
            out = BoolOr(out, self.orr())
        return out

    def orr(self):
        out = self.andd()
        while self.peek() == "\\/":
            self.next()
            out = SplitOr(out, self.andd())
        return out

    def andd(self):
        out = self.pre()
        while self.peek() == "/\\":
            self.next()
            out = And(out, self.pre())
        return out

    def pre(self):
        t = self.peek()
        if t in ("E", "A", "E1", "A1"):
            self.next()
            v = self.variable()
            self.expect(".")
            body = self.pre()
            cls = {"E": Exists, "A": Forall, "E1": Exists1, "A1": Forall1}[t]
            return cls(v, body)
        if t == "wneg":
            self.next()
            return WNeg(self.pre())
        if t == "!":
            span = self.span()
            self.next()
            body = self.pre()
            if not is_first_order(body):
                raise ParseError("'!' applies to first-order subformulas only", span)
            return fo_negate(expand_sugar(body))
        return self.prim()

    def prim(self):
        t = self.peek()
        if t == "bot":
            self.next()
            return Bot()
        if t == "top":
            self.next()
            return Top()
        if t == "(":
            self.next()
            out = self.formula()
            self.expect(")")
            return out
        if t == "=":
            # dependence atom "=( ... )"
            self.next()
            self.expect("(")
            first = self.varlist()
            if self.peek() == ";":
                self.next()
                dep = self.varlist()
                dets = first
            else:
                if len(first) < 2:
                    self.fail("dependence atom shorthand needs at least two variables")
                dets, dep = first[:-1], first[-1:]
            self.expect(")")
            if not dep:
                self.fail("dependence atom needs a dependent part")
            return Dep(dets, dep)
        if t == "inc":
            self.next()
            self.expect("(")
            xs = self.varlist()
            self.expect(";")
            ys = self.varlist()
            self.expect(")")
            if len(xs) != len(ys) or not xs:
                self.fail("inclusion atom sides must be nonempty and of equal length")
            return Inc(xs, ys)
        if t == "ind":
            self.next()
            self.expect("(")
            xs = self.varlist()
            self.expect(";")
            zs = self.varlist()
            self.expect(";")
            ys = self.varlist()
            self.expect(")")
            if not xs or not ys:
                self.fail("independence atom needs nonempty outer parts")
            return Ind(xs, zs, ys)
        if self.is_ident(t) and t not in KEYWORDS:
            # relation/atom application, or a term (in)equality
            save = self.i
            name_span = self.span()
            name = self.next()[0]
            if self.peek() == "(" and name not in self.constants:
                self.next()
                args = self.termlist()
                self.expect(")")
                if name in self.atoms:
                    d = self.atoms[name]
                    if len(args) != d.m:
                        raise ParseError(
                            "atom %s expects %d arguments, got %d" % (name, d.m, len(args)),
                            name_span)
                    for a in args:
                        if not isinstance(a, Var):
                            raise ParseError("generalized atoms take variables only", name_span)
                    return Gen(name, args)
                return FOAtom(name, args)
            self.i = save
            return self.eq_or_seq()
        self.fail("expected a formula, got %r" % t)

    def eq_or_seq(self):
        xs = [self.term()]
        while self.is_ident(self.peek()) and self.peek() not in KEYWORDS:
            xs.append(self.term())
        op, span = self.next()
        if op not in ("=", "!="):
            raise ParseError("expected '=' or '!=' after term sequence", span)
        ys = [self.term()]
        while self.is_ident(self.peek()) and self.peek() not in KEYWORDS:
            ys.append(self.term())
        if len(xs) != len(ys):
            raise ParseError("sequence comparison sides must have equal length", span)
        if len(xs) == 1:
            return Eq(xs[0], ys[0]) if op == "=" else NegEq(xs[0], ys[0])
        if op == "=":
            return SeqEq(tuple(xs), tuple(ys))
        return SeqNeq(tuple(xs), tuple(ys))


def parse_formula(text, constants=(), atoms=None, expand=True, allow_reserved=False):
    p = _Parser(text, constants, atoms, allow_reserved)
    out = p.formula()
    if p.peek() is not None:
        p.fail("trailing input")
    if expand:
        out = expand_sugar(out)
    return out


# --- printer ----------------------------------------------------------------


def _pterm(t):
    return t.name


def _pseq(ts):
    return ",".join(_pterm(t) for t in ts)


def print_formula(phi):
    """Fully parenthesized canonical form; parse_formula round-trips it
    (pass the same constants/atoms, and allow_reserved for generated names)."""
    if isinstance(phi, FOAtom):
        return "%s(%s)" % (phi.rel, _pseq(phi.args))
    if isinstance(phi, NegFOAtom):
        return "!%s(%s)" % (phi.rel, _pseq(phi.args))
    if isinstance(phi, Eq):
        return "(%s = %s)" % (_pterm(phi.lhs), _pterm(phi.rhs))
    if isinstance(phi, NegEq):
        return "(%s != %s)" % (_pterm(phi.lhs), _pterm(phi.rhs))
    if isinstance(phi, Bot):
        return "bot"
    if isinstance(phi, Top):
        return "top"
    if isinstance(phi, Dep):
        return "=(%s ; %s)" % (_pseq(phi.determiners), _pseq(phi.dependent))
    if isinstance(phi, Ind):
        return "ind(%s ; %s ; %s)" % (_pseq(phi.xs), _pseq(phi.zs), _pseq(phi.ys))
    if isinstance(phi, Inc):
        return "inc(%s ; %s)" % (_pseq(phi.xs), _pseq(phi.ys))
    if isinstance(phi, Gen):
        return "%s(%s)" % (phi.atom_name, _pseq(phi.args))
    if isinstance(phi, And):
        return "(%s /\\ %s)" % (print_formula(phi.l), print_formula(phi.r))
    if isinstance(phi, SplitOr):
        return "(%s \\/ %s)" % (print_formula(phi.l), print_formula(phi.r))
    if isinstance(phi, BoolOr):
        return "(%s || %s)" % (print_formula(phi.l), print_formula(phi.r))
    if isinstance(phi, Exists):
        return "(E %s. %s)" % (phi.v.name, print_formula(phi.body))
    if isinstance(phi, Forall):
        return "(A %s. %s)" % (phi.v.name, print_formula(phi.body))
    if isinstance(phi, Exists1):
        return "(E1 %s. %s)" % (phi.v.name, print_formula(phi.body))
    if isinstance(phi, Forall1):
        return "(A1 %s. %s)" % (phi.v.name, print_formula(phi.body))
    if isinstance(phi, WNeg):
        return "(wneg %s)" % print_formula(phi.body)
    if isinstance(phi, Implies):
        return "(%s -> %s)" % (print_formula(phi.ante), print_formula(phi.cons))
    if isinstance(phi, SeqEq):
        return "(%s = %s)" % (" ".join(map(_pterm, phi.xs)), " ".join(map(_pterm, phi.ys)))
    if isinstance(phi, SeqNeq):
        return "(%s != %s)" % (" ".join(map(_pterm, phi.xs)), " ".join(map(_pterm, phi.ys)))
    raise TypeError("not a formula: %r" % (phi,))
