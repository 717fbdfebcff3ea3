"""Command-line front end.

Subcommands:
    check      evaluate a formula on a model and team
    entail     bounded entailment search over small models and teams
    negate     synthesize the weak negation of a formula
    translate  second-order translation (and, for atoms, the in-language one)
    prove      check a proof script
    props      run the named property suites

Exit codes: 0 satisfied/valid/accepted, 1 refuted/rejected, 2 usage or
parse errors.
"""

import argparse
import sys

from .checks import SUITES, run_all, run_suite
from .entailment import entails_bounded
from .eso import print_eso, tau
from .formula import Dep, Gen, Inc, Ind, Var
from .genatom import register_builtin_atoms, sigma_pi_translate, make_dep, make_inc, make_ind
from .model import parse_model, print_model
from .negation import NotNegatableError, wneg
from .parser import ParseError, parse_formula, print_formula
from .proofkernel import ProofError, check_proof, parse_proof
from .semantics import EvalBudget, eval_formula
from .team import parse_team, print_team


class CliError(Exception):
    pass


def _emit(machine, human, records):
    if machine:
        for k, v in records:
            print("%s=%s" % (k, v))
    else:
        print(human)


def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise CliError(str(e))


def cmd_check(args):
    model = parse_model(_read(args.model))
    X = parse_team(_read(args.team))
    phi = parse_formula(args.formula, constants=tuple(model.consts))
    value = eval_formula(model, X, phi, registry=register_builtin_atoms())
    _emit(args.machine, "satisfied" if value else "not satisfied",
          [("result", "sat" if value else "unsat")])
    return 0 if value else 1


def cmd_entail(args):
    hyps = [parse_formula(h) for h in args.hyp]
    concl = parse_formula(args.concl)
    verdict = entails_bounded(hyps, concl, max_domain=args.max_domain,
                              team_cap=args.team_cap, samples=args.samples,
                              seed=args.seed, registry=register_builtin_atoms())
    if verdict:
        _emit(args.machine,
              "valid up to domain size %d (%d models, %d teams searched)"
              % (args.max_domain, verdict.searched["models"],
                 verdict.searched["teams"]),
              [("result", "valid-up-to-bound"),
               ("max_domain", args.max_domain),
               ("models", verdict.searched["models"]),
               ("teams", verdict.searched["teams"])])
        return 0
    model, X = verdict.witness
    if args.machine:
        _emit(True, "", [("result", "counterexample")])
    else:
        print("counterexample:")
    sys.stdout.write(print_model(model))
    sys.stdout.write(print_team(X))
    return 1


def cmd_negate(args):
    phi = parse_formula(args.formula, expand=False)
    try:
        neg = wneg(phi, register_builtin_atoms())
    except NotNegatableError as e:
        raise CliError(str(e))
    _emit(args.machine, print_formula(neg), [("negation", print_formula(neg))])
    return 0


def _atom_def_for(phi):
    if isinstance(phi, Dep):
        return (make_ind(len(phi.dependent), len(phi.dependent),
                         len(phi.determiners)),
                list(phi.dependent + phi.dependent + phi.determiners))
    if isinstance(phi, Ind):
        return (make_ind(len(phi.xs), len(phi.ys), len(phi.zs)),
                list(phi.xs + phi.ys + phi.zs))
    if isinstance(phi, Inc):
        return make_inc(len(phi.xs)), list(phi.xs + phi.ys)
    return None


def cmd_translate(args):
    phi = parse_formula(args.formula, expand=False)
    records = []
    lines = []
    psi = tau(phi, registry=register_builtin_atoms())
    lines.append(print_eso(psi))
    records.append(("second_order", print_eso(psi)))
    pair = _atom_def_for(phi)
    if pair is not None:
        d, xs = pair
        defined = sigma_pi_translate(d, xs)
        lines.append(print_formula(defined))
        records.append(("in_language", print_formula(defined)))
    _emit(args.machine, "\n".join(lines), records)
    return 0


def cmd_prove(args):
    script = parse_proof(_read(args.script))
    verdict = check_proof(script, registry=register_builtin_atoms())
    if verdict:
        _emit(args.machine, "ACCEPTED", [("result", "accepted")])
        return 0
    _emit(args.machine, "REJECTED at step %s: %s" % (verdict.step, verdict.reason),
          [("result", "rejected"), ("step", verdict.step),
           ("reason", verdict.reason)])
    return 1


def cmd_props(args):
    if args.suite:
        results = [run_suite(args.suite, seed=args.seed,
                             runs=args.samples or None)]
    else:
        results = run_all(seed=args.seed, runs=args.samples or None)
    ok = True
    for r in results:
        ok = ok and r.ok
        if args.machine:
            print("suite=%s status=%s checks=%d failures=%d"
                  % (r.name, "pass" if r.ok else "fail", r.runs, len(r.failures)))
        else:
            print(r.summary())
    return 0 if ok else 1


def build_parser():
    p = argparse.ArgumentParser(
        prog="teamlogic",
        description="workbench for dependence and independence logic "
                    "under team semantics")
    p.add_argument("--machine", action="store_true",
                   help="emit key=value records instead of prose")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="evaluate a formula on a model and team")
    c.add_argument("--model", required=True)
    c.add_argument("--team", required=True)
    c.add_argument("--formula", required=True)
    c.set_defaults(fn=cmd_check)

    c = sub.add_parser("entail", help="bounded entailment search")
    c.add_argument("--hyp", action="append", default=[])
    c.add_argument("--concl", required=True)
    c.add_argument("--max-domain", type=int, default=2)
    c.add_argument("--team-cap", type=int, default=16)
    c.add_argument("--samples", type=int, default=0)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(fn=cmd_entail)

    c = sub.add_parser("negate", help="synthesize the weak negation")
    c.add_argument("--formula", required=True)
    c.set_defaults(fn=cmd_negate)

    c = sub.add_parser("translate", help="second-order translation")
    c.add_argument("--formula", required=True)
    c.set_defaults(fn=cmd_translate)

    c = sub.add_parser("prove", help="check a proof script")
    c.add_argument("--script", required=True)
    c.set_defaults(fn=cmd_prove)

    c = sub.add_parser("props", help="run property suites")
    c.add_argument("--suite", choices=sorted(SUITES))
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--samples", type=int, default=0,
                   help="override the per-suite number of random checks")
    c.set_defaults(fn=cmd_props)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (CliError, ParseError, ProofError, ValueError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
