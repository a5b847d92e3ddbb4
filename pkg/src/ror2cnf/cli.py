"""Command-line front end.

Exit codes: ``sat`` 10 (SAT) / 20 (UNSAT); ``refute`` 0 (proof), 1
(NOT-IN-CLASS), 3 (INCONCLUSIVE); ``check`` 0 (VALID) / 1 (INVALID); other
subcommands 0; usage and parse errors 2.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import analysis, decision, reductions
from .core import Formula, clause_str
from .errors import NoSplit, PreconditionViolated, RorError
from .igraph import decide_sat
from .io import parse_dimacs, parse_proof, write_dimacs, write_proof
from .resolution import CheckMode, check


class UsageError(Exception):
    pass


def _read(path: str) -> bytes:
    try:
        if path == "-":
            return sys.stdin.buffer.read()
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _formula(path: str) -> Formula:
    return parse_dimacs(_read(path))


def _emit(args, text: str, data: dict):
    if args.format == "structured":
        print(json.dumps(data, sort_keys=True))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_sat(args) -> int:
    f = _formula(args.file)
    if f.has_empty_clause():
        _emit(args, "UNSAT", {"status": "UNSAT"})
        return 20
    res = decide_sat(f)
    if not res.sat:
        _emit(args, "UNSAT", {"status": "UNSAT", "witness": res.witness})
        return 20
    lits = [v if res.model.get(v, False) else -v for v in range(1, f.max_var + 1)]
    line = "v " + " ".join(map(str, lits + [0]))
    _emit(args, f"SAT\n{line}", {"status": "SAT", "model": lits})
    return 10


def cmd_refute(args) -> int:
    f = _formula(args.file)
    budget = decision.SearchBudget(max_states=args.budget)
    if args.mode == "copy2":
        try:
            d = decision.copy2_refutation(f)
        except PreconditionViolated:
            _emit(args, "NOT-IN-CLASS", {"status": "NOT-IN-CLASS"})
            return 1
        verdict = decision.Verdict(decision.YES, d)
    elif args.mode == "ror":
        verdict = decision.decide_ror(f, budget)
    else:
        verdict = decision.decide_var_ror(f, budget)
    if verdict.status == decision.NO:
        _emit(args, "NOT-IN-CLASS", {"status": "NOT-IN-CLASS", "states": verdict.states})
        return 1
    if verdict.status == decision.INCONCLUSIVE:
        _emit(args, "INCONCLUSIVE", {"status": "INCONCLUSIVE", "states": verdict.states})
        return 3
    proof = write_proof(verdict.certificate, f).decode("ascii")
    _emit(args, proof, {"status": "REFUTED", "proof": proof, "steps": len(verdict.certificate)})
    return 0


def cmd_check(args) -> int:
    f = _formula(args.file)
    try:
        mode = CheckMode.parse(args.mode)
    except ValueError as e:
        raise UsageError(str(e)) from None
    d = parse_proof(_read(args.proof), f)
    report = check(f, d, mode)
    if report.valid:
        _emit(args, "VALID", {"status": "VALID", "copies": {str(k): v for k, v in report.copies.items()}})
        return 0
    step, reason = report.violations[0]
    _emit(
        args,
        f"INVALID {step} {reason}",
        {"status": "INVALID", "violations": [[s, r] for s, r in report.violations]},
    )
    return 1


def _ids(f: Formula) -> str:
    return " ".join(map(str, f.ids))


def _tree_lines(node: analysis.SplitTree, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if node.is_leaf:
        return [f"{pad}leaf {' '.join(clause_str(c) for c in node.formula.clauses)}"]
    out = [f"{pad}split {node.var}"]
    return out + _tree_lines(node.pos, indent + 1) + _tree_lines(node.neg, indent + 1)


def _tree_data(node: analysis.SplitTree) -> dict:
    if node.is_leaf:
        return {"leaf": [list(c) for c in node.formula.clauses]}
    return {"var": node.var, "pos": _tree_data(node.pos), "neg": _tree_data(node.neg)}


def cmd_analyze(args) -> int:
    f = _formula(args.file)
    what = args.what
    if what == "deficiency":
        k = f.deficiency()
        _emit(args, str(k), {"deficiency": k})
    elif what == "mu":
        mu = analysis.is_minimal_unsat(f)
        _emit(args, "MU" if mu else "NOT-MU", {"mu": mu})
    elif what == "mu-k":
        k = analysis.mu_class(f)
        _emit(args, f"MU({k})" if k is not None else "NOT-MU", {"mu_k": k})
    elif what.startswith("split:"):
        try:
            x = int(what[6:])
        except ValueError:
            raise UsageError(f"bad variable in {what!r}") from None
        try:
            pair = analysis.split_over(f, x)
        except NoSplit:
            _emit(args, "NO-SPLIT", {"split": None})
            return 0
        text = "\n".join(
            [
                f"var {pair.var}",
                f"pos {_ids(pair.f_x)}",
                f"neg {_ids(pair.f_negx)}",
                f"shared {' '.join(map(str, sorted(pair.shared)))}".rstrip(),
                f"disjunctive {'yes' if pair.disjunctive else 'no'}",
            ]
        )
        data = {
            "var": pair.var,
            "pos": list(pair.f_x.ids),
            "neg": list(pair.f_negx.ids),
            "shared": sorted(pair.shared),
            "disjunctive": pair.disjunctive,
        }
        _emit(args, text, data)
    elif what == "tree":
        tree = analysis.split_tree(f)
        if tree is None:
            _emit(args, "NO-DISJUNCTIVE-TREE", {"tree": None})
        else:
            _emit(args, "\n".join(_tree_lines(tree)), {"tree": _tree_data(tree)})
    elif what == "unit-shape":
        shape = analysis.unit_shape(f)
        parts = {k: list(getattr(shape, k)) for k in ("chain", "stem", "branch1", "branch2") if getattr(shape, k)}
        text = "\n".join([shape.kind] + [f"{k} {' '.join(map(str, v))}" for k, v in parts.items()])
        _emit(args, text, {"kind": shape.kind, **parts})
    else:
        raise UsageError(f"unknown analysis {what!r}")
    return 0


def cmd_reduce(args) -> int:
    g = reductions.parse_digraph(_read(args.graph))
    if args.kind == "dpp":
        if len(g.sources) != 2 or len(g.targets) != 2:
            raise UsageError("a two-pair instance needs two 's' and two 't' lines")
        (s1, s2), (t1, t2) = g.sources, g.targets
        h, s, t = reductions.dpp_to_cdpp(g, s1, t1, s2, t2)
        h = reductions.Digraph(h.n, h.edges, (s,), (t,))
        text = reductions.write_digraph(h).decode("ascii")
        _emit(args, text, {"n": h.n, "edges": [list(e) for e in h.edges], "s": s, "t": t})
        return 0
    if len(g.sources) != 1 or len(g.targets) != 1:
        raise UsageError("a cycle instance needs one 's' and one 't' line")
    f, prov = reductions.cycle_to_2cnf(g, g.s, g.t)
    comments = [f"c edge {u} {v} clause {i}" for (u, v), i in prov.occ_of.items()]
    text = "\n".join(comments) + ("\n" if comments else "") + write_dimacs(f).decode("ascii")
    data = {
        "dimacs": write_dimacs(f).decode("ascii"),
        "provenance": [[u, v, i] for (u, v), i in prov.occ_of.items()],
    }
    _emit(args, text, data)
    return 0


def cmd_gen(args) -> int:
    if args.seed is None:
        raise UsageError("gen requires --seed")
    p = args.params
    try:
        if args.kind == "digraph":
            if len(p) != 2:
                raise UsageError("gen digraph N P")
            g = reductions.gen_random_digraph(int(p[0]), float(p[1]), args.seed)
            text = reductions.write_digraph(g).decode("ascii")
            _emit(args, text, {"digraph": text})
            return 0
        if args.kind == "2cnf":
            if len(p) != 2:
                raise UsageError("gen 2cnf N M")
            f = reductions.gen_random_2cnf(int(p[0]), int(p[1]), args.seed)
        else:
            if len(p) != 1:
                raise UsageError("gen mu1 N")
            f = analysis.gen_mu1(int(p[0]), args.seed)
    except ValueError as e:
        raise UsageError(str(e)) from None
    text = write_dimacs(f).decode("ascii")
    _emit(args, text, {"dimacs": text})
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("text", "structured"), default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="ror2cnf", description="Read-once resolution toolkit for 2CNF.")
    parser.add_argument("--seed", type=int, default=None, help="seed for randomized subcommands")
    parser.add_argument("--format", choices=("text", "structured"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sat", parents=[common], help="decide satisfiability")
    p.add_argument("file")
    p.set_defaults(func=cmd_sat)

    p = sub.add_parser("refute", parents=[common], help="search for a restricted refutation")
    p.add_argument("file")
    p.add_argument("--mode", choices=("copy2", "ror", "var-ror"), required=True)
    p.add_argument("--budget", type=int, default=10**6)
    p.set_defaults(func=cmd_refute)

    p = sub.add_parser("check", parents=[common], help="validate a proof")
    p.add_argument("file")
    p.add_argument("proof")
    p.add_argument("--mode", default="none", help="none | read-once | var-once | copy:K")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("analyze", parents=[common], help="structural properties")
    p.add_argument("file")
    p.add_argument("--what", required=True, help="mu | mu-k | deficiency | split:VAR | tree | unit-shape")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("reduce", parents=[common], help="graph problem to instance")
    p.add_argument("kind", choices=("dpp", "cycle"))
    p.add_argument("graph")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("gen", parents=[common], help="seeded random instances")
    p.add_argument("kind", choices=("digraph", "2cnf", "mu1"))
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if getattr(args, "budget", 1) < 1:
            raise UsageError("--budget must be positive")
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (RorError, ValueError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
