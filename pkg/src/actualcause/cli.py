"""Command-line front end.

Exit status: 0 success (verdicts are reported in the output, not the
status), 1 usage error, 2 invalid model, 3 search guard exceeded,
4 ``regress`` found a mismatching row.
"""

import argparse
import json
import math
import sys
from pathlib import Path

from . import corpus
from .cause import (
    DEFAULT_GUARD,
    CauseOptions,
    active_processes,
    enumerate_causes,
    is_actual_cause,
    is_cause_at_rank,
)
from .errors import (
    CausalError,
    InvalidModelError,
    ParseError,
    SearchLimitExceeded,
    SingletonViolation,
)
from .formula import parse_candidate, parse_causal_formula, parse_event_formula, satisfies, to_text
from .model import lint_model, parse_assignment, to_dot, validate_model
from .modelfile import format_model, load_model
from .ranking import format_ranking, load_ranking, parse_rank

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_GUARD, EXIT_REGRESSION = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _fmt(assignment):
    return "{" + ", ".join(f"{k}={v}" for k, v in assignment.items()) + "}"


def _conj(assignment):
    return " & ".join(f"{k}={v}" for k, v in assignment.items())


def render_verdict(verdict, fmt="text"):
    """Render a Verdict as JSON or as a clause-by-clause text report."""
    if fmt == "json":
        return json.dumps(verdict.to_dict(), indent=2)
    cand, phi = _conj(verdict.candidate), to_text(verdict.phi)
    lines = [f"query: {cand} => {phi}"]
    if verdict.rank_limit is not None:
        k = verdict.rank_limit
        lines.append(f"rank limit: {'inf' if k == math.inf else k}")
    fc = verdict.failed_clause
    if fc == "AC1":
        lines.append(f"AC1: fails — {cand} and {phi} are not both true in the actual world")
    else:
        lines.append("AC1: holds")
    if fc == "trivial":
        lines.append(f"consistency: fails — {cand} & !({phi}) is unsatisfiable (trivial cause)")
    if fc == "AC2":
        if verdict.rejected:
            wit, sub = verdict.rejected
            lines.append(
                f"AC2(a): holds with W = {{{', '.join(wit.w_set)}}}, w' = {_fmt(wit.w_prime)}, x' = {_fmt(wit.x_prime)}"
            )
            lines.append(f"AC2(b) violated with Z' = {{{', '.join(sub)}}}")
            lines.append("AC2: fails — no contingency satisfies both (a) and (b)")
        else:
            lines.append("AC2(a): fails for every contingency")
    elif verdict.witness is not None:
        wit = verdict.witness
        lines.append(
            f"AC2(a): holds with W = {{{', '.join(wit.w_set)}}}, w' = {_fmt(wit.w_prime)}, x' = {_fmt(wit.x_prime)}"
        )
        lines.append("AC2(b): holds")
    if fc == "AC3":
        lines.append(f"AC3: fails — subset {_fmt(verdict.ac3_subset)} already a cause")
    elif verdict.is_cause:
        lines.append("AC3: holds")
    if verdict.witness is not None:
        wit = verdict.witness
        iv = ", ".join(f"{k}<-{v}" for k, v in {**wit.x_prime, **wit.w_prime}.items())
        lines.append(f"witness: [{iv}] !({phi}); z* = {_fmt(wit.z_star)}")
        lines.append(f"witness class: {verdict.witness_class}")
    if verdict.is_cause:
        if verdict.contributory_only:
            lines.append("note: every witness moves W off its actual values (contributory only)")
        lines.append(f"verdict: {cand} is an actual cause of {phi}")
    else:
        lines.append(f"verdict: {cand} is not an actual cause of {phi}")
    stats = verdict.stats
    lines.append(f"search: {stats.triples_examined} triples, {stats.subsets_checked} subsets")
    return "\n".join(lines)


def _load(args, need_context=True):
    """Return (model, context, ranking) from -m/-c/--ranking."""
    if not args.model:
        raise UsageError("this command needs -m/--model")
    context = ranking = None
    if args.model.startswith("@"):
        try:
            entry = corpus.load_example(args.model[1:])
        except KeyError as e:
            raise UsageError(e.args[0]) from None
        model, context, ranking = entry.model, entry.context, entry.ranking
    else:
        try:
            model = load_model(args.model)
        except OSError as e:
            raise UsageError(f"cannot read model: {e}") from None
    if getattr(args, "context", None):
        try:
            context = parse_assignment(args.context)
        except ValueError as e:
            raise UsageError(f"--context: {e}") from None
    if need_context and context is None:
        raise UsageError("this command needs -c/--context")
    if getattr(args, "ranking", None):
        try:
            ranking = load_ranking(args.ranking)
        except OSError as e:
            raise UsageError(f"cannot read ranking: {e}") from None
    return model, context, ranking


def _options(args):
    return CauseOptions(
        forbid_trivial=args.forbid_trivial,
        witness_all=args.witness_all,
        guard=args.guard,
    )


def _require(args, *names):
    for name in names:
        if not getattr(args, name):
            flag = {"cause": "-x/--cause", "phi": "-p/--phi", "formula": "-f/--formula"}[name]
            raise UsageError(f"this command needs {flag}")


def cmd_validate(args, out):
    model, _, _ = _load(args, need_context=False)
    report = validate_model(model)
    if report.ok:
        warnings = lint_model(model)
    else:
        warnings = []
    if args.json:
        out.write(json.dumps({
            "model": model.name,
            "findings": [{"kind": f.kind, "variables": list(f.variables), "message": f.message} for f in report],
            "warnings": [{"kind": w.kind, "variables": list(w.variables), "message": w.message} for w in warnings],
        }, indent=2) + "\n")
    else:
        for f in report:
            out.write(f"error: {f}\n")
        for w in warnings:
            out.write(f"warning: {w}\n")
        if report.ok:
            out.write(f"{model.name}: ok\n")
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_eval(args, out):
    _require(args, "formula")
    model, context, _ = _load(args)
    psi = parse_causal_formula(args.formula)
    value = satisfies(model, context, psi)
    if args.json:
        out.write(json.dumps({"formula": to_text(psi), "value": value}) + "\n")
    else:
        out.write(("true" if value else "false") + "\n")
    return EXIT_OK


def cmd_cause(args, out):
    _require(args, "cause", "phi")
    model, context, ranking = _load(args)
    cand = parse_candidate(args.cause)
    phi = parse_event_formula(args.phi)
    if args.rank is not None:
        if ranking is None:
            raise UsageError("--rank needs --ranking (or a corpus model with a ranking)")
        k = parse_rank(args.rank)
        verdict = is_cause_at_rank(model, context, ranking, k, cand, phi, _options(args))
    else:
        verdict = is_actual_cause(model, context, cand, phi, _options(args))
    out.write(render_verdict(verdict, "json" if args.json else "text") + "\n")
    return EXIT_OK


def cmd_enumerate(args, out):
    _require(args, "phi")
    model, context, _ = _load(args)
    phi = parse_event_formula(args.phi)
    try:
        causes = enumerate_causes(
            model, context, phi, _options(args), max_size=args.max_size, verify_singleton=args.verify_singleton
        )
        violation = None
    except SingletonViolation as e:
        causes, violation = [], e
    if args.json:
        payload = {
            "phi": to_text(phi),
            "causes": [{"cause": c, "witness": w.to_dict()} for c, w in causes],
        }
        if args.verify_singleton:
            payload["singleton_verified"] = violation is None
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        for c, w in causes:
            out.write(f"{_conj(c)}\t{w.describe()}\n")
        if not causes and violation is None:
            out.write("no causes\n")
        if args.verify_singleton:
            out.write("singleton check: " + ("passed" if violation is None else f"FAILED ({violation})") + "\n")
    return EXIT_OK


def cmd_process(args, out):
    _require(args, "cause", "phi")
    model, context, _ = _load(args)
    zs = active_processes(model, context, parse_candidate(args.cause), parse_event_formula(args.phi), _options(args))
    if args.json:
        out.write(json.dumps({"processes": zs}) + "\n")
    else:
        for z in zs:
            out.write("{" + ", ".join(z) + "}\n")
        if not zs:
            out.write("no active causal process\n")
    return EXIT_OK


def cmd_examples(args, out):
    names = corpus.list_examples()
    if args.export:
        dest = Path(args.export)
        dest.mkdir(parents=True, exist_ok=True)
        for name in names:
            entry = corpus.load_example(name)
            (dest / f"{name}.scm").write_text(format_model(entry.model), encoding="utf-8")
            rows = [f"# context: {','.join(f'{k}={v}' for k, v in entry.context.items())}"]
            if entry.ranking is not None:
                (dest / f"{name}.ranking.tsv").write_text(format_ranking(entry.ranking), encoding="utf-8")
                rows.append(f"# ranking: {name}.ranking.tsv")
            for exp in entry.expected:
                rows.append(f"{exp.query.text}\t{'true' if exp.verdict else 'false'}\t{exp.locus}")
            (dest / f"{name}.verdicts.tsv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    if args.json:
        out.write(json.dumps(names) + "\n")
    else:
        for name in names:
            entry = corpus.load_example(name)
            out.write(f"{name}\t{len(entry.model.endogenous)} vars\t{len(entry.expected)} queries\n")
    return EXIT_OK


def cmd_regress(args, out):
    results = []
    for name in corpus.list_examples():
        entry = corpus.load_example(name)
        for exp in entry.expected:
            got = corpus.run_query(entry, exp.query).is_cause
            results.append({
                "example": name,
                "query": exp.query.text,
                "expected": exp.verdict,
                "got": got,
                "pass": got == exp.verdict,
                "locus": exp.locus,
            })
    passed = sum(r["pass"] for r in results)
    if args.json:
        out.write(json.dumps({"rows": results, "passed": passed, "total": len(results)}, indent=2) + "\n")
    else:
        for r in results:
            mark = "PASS" if r["pass"] else "FAIL"
            out.write(f"{mark}\t{r['example']}\t{r['query']}\texpected={str(r['expected']).lower()}\t{r['locus']}\n")
        out.write(f"{passed}/{len(results)} rows pass\n")
    return EXIT_OK if passed == len(results) else EXIT_REGRESSION


def cmd_export_dot(args, out):
    model, _, _ = _load(args, need_context=False)
    dot = to_dot(model)
    if args.output:
        Path(args.output).write_text(dot, encoding="utf-8")
    else:
        out.write(dot)
    return EXIT_OK


COMMANDS = {
    "validate": (cmd_validate, "check a model and report findings"),
    "eval": (cmd_eval, "evaluate a causal formula in a context"),
    "cause": (cmd_cause, "decide whether X=x is an actual cause of phi"),
    "enumerate": (cmd_enumerate, "list every actual cause of phi"),
    "process": (cmd_process, "list the active causal processes of a cause"),
    "examples": (cmd_examples, "list (or export) the built-in corpus"),
    "regress": (cmd_regress, "run the corpus verdict table"),
    "export-dot": (cmd_export_dot, "write the causal network in Graphviz DOT"),
}


def build_parser():
    parser = _Parser(prog="actualcause", description="Actual causality over structural causal models.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if name in ("examples", "regress"):
            if name == "examples":
                p.add_argument("--export", metavar="DIR", help="write model and verdict files to DIR")
            continue
        p.add_argument("-m", "--model", metavar="PATH|@name", help="model file or @corpus-entry")
        if name in ("validate", "export-dot"):
            if name == "export-dot":
                p.add_argument("-o", "--output", metavar="PATH", help="write DOT here instead of stdout")
            continue
        p.add_argument("-c", "--context", metavar="VAR=val,...")
        if name == "eval":
            p.add_argument("-f", "--formula", metavar="CAUSALFORMULA")
            continue
        p.add_argument("-p", "--phi", metavar="FORMULA")
        if name in ("cause", "process"):
            p.add_argument("-x", "--cause", metavar="VAR=val&...")
        if name == "cause":
            p.add_argument("--rank", metavar="K", help="rank limit (natural number or inf)")
            p.add_argument("--ranking", metavar="PATH", help="ranking file: 'assignment<TAB>rank' rows")
        if name == "enumerate":
            p.add_argument("--max-size", type=int, default=1, help="largest conjunction considered (default 1)")
            p.add_argument("--verify-singleton", action="store_true",
                           help="sweep every size and check that no multi-conjunct cause exists")
        p.add_argument("--forbid-trivial", action="store_true", help="reject causes with X=x & !phi inconsistent")
        p.add_argument("--witness-all", action="store_true", help="collect every witness")
        p.add_argument("--guard", type=int, default=DEFAULT_GUARD, metavar="N",
                       help="abort when the witness search space exceeds N triples")
    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        err.write(f"actualcause: error: {e}\n")
        return EXIT_USAGE
    handler = COMMANDS[args.command][0]
    try:
        return handler(args, out)
    except UsageError as e:
        err.write(f"actualcause: error: {e}\n")
        return EXIT_USAGE
    except InvalidModelError as e:
        err.write(f"actualcause: {e}\n")
        return EXIT_INVALID
    except SearchLimitExceeded as e:
        err.write(f"actualcause: {e}\n")
        return EXIT_GUARD
    except ParseError as e:
        err.write(f"actualcause: parse error: {e}\n")
        # a malformed model file is a validation failure; a malformed formula is usage
        return EXIT_INVALID if e.source else EXIT_USAGE
    except CausalError as e:
        err.write(f"actualcause: error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
