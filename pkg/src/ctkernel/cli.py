"""Command-line front end.

Subcommands::

    ctk eval  "<term>"                         evaluate to canonical form
    ctk check [--binary] "<term>" [: "<term>"] in "<type>"
    ctk enum  "<type>" --depth N               enumerate canonical witnesses
    ctk rule  "<rule>" | --file rules.txt      derivability vs admissibility
    ctk kripke model.txt --judgment "<j>" [--world w] [--check-monotone]

Exit codes: 0 success/verified, 1 parse or input error, 2 fuel
exhausted/diverged, 3 stuck, 4 refuted (or monotonicity counterexample),
5 unknown (bound exhausted / incomplete enumeration).
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import binary, evaluation, rules, unary, worlds
from .config import (
    DEFAULT_DEPTH, DEFAULT_FUEL, DEFAULT_INSTANCE_DEPTH, DEFAULT_SEARCH_DEPTH,
    RunConfig,
)
from .judgments import Status, Verdict, dump_machine, machine_doc
from .syntax import ParseError, parse, pretty
from .terms import OpenTermError, free_vars
from .worlds import ModelError

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DIVERGED = 2
EXIT_STUCK = 3
EXIT_REFUTED = 4
EXIT_UNKNOWN = 5

_STATUS_EXIT = {
    Status.VERIFIED: EXIT_OK,
    Status.REFUTED: EXIT_REFUTED,
    Status.UNKNOWN: EXIT_UNKNOWN,
    Status.DIVERGED: EXIT_DIVERGED,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
    common.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    common.add_argument("--search-depth", type=int, default=DEFAULT_SEARCH_DEPTH)
    common.add_argument("--machine", action="store_true",
                        help="emit one JSON document instead of text")

    parser = argparse.ArgumentParser(
        prog="ctk",
        description="semantic checker for a small computational type theory",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common], help="evaluate a term")
    p_eval.add_argument("term")

    p_check = sub.add_parser(
        "check", parents=[common],
        help='membership: check "M" in "A"; equality: check --binary "M" : "N" in "A"',
    )
    p_check.add_argument("--binary", action="store_true")
    p_check.add_argument("query", nargs="+")

    p_enum = sub.add_parser("enum", parents=[common], help="enumerate canonical witnesses")
    p_enum.add_argument("type")

    p_rule = sub.add_parser("rule", parents=[common],
                            help="compare derivability and admissibility")
    p_rule.add_argument("rule", nargs="?")
    p_rule.add_argument("--file", help="rule file, one rule per blank-separated block")
    p_rule.add_argument("--instance-depth", type=int, default=DEFAULT_INSTANCE_DEPTH)

    p_kripke = sub.add_parser("kripke", parents=[common], help="finite world-model forcing")
    p_kripke.add_argument("model")
    p_kripke.add_argument("--judgment", required=True)
    p_kripke.add_argument("--world")
    p_kripke.add_argument("--check-monotone", action="store_true")

    return parser


def _config(args) -> RunConfig:
    return RunConfig(
        fuel=args.fuel,
        depth=args.depth,
        search_depth=args.search_depth,
        output_mode="machine" if args.machine else "human",
    )


def _config_json(cfg: RunConfig, **extra) -> dict:
    out = {"fuel": cfg.fuel, "depth": cfg.depth, "search_depth": cfg.search_depth}
    out.update(extra)
    return out


def _parse_term(text: str, role: str):
    term = parse(text)
    fv = free_vars(term)
    if fv:
        print(
            f"warning: {role} has unbound variables: {', '.join(sorted(fv))}",
            file=sys.stderr,
        )
    return term


def _emit_verdict(out, cfg: RunConfig, command: str, verdict: Verdict, extra_cfg=None) -> int:
    if cfg.output_mode == "machine":
        doc = machine_doc(
            command, _config_json(cfg, **(extra_cfg or {})),
            verdict.status.value, verdict.trace.to_json(),
        )
        print(dump_machine(doc), file=out)
    else:
        rendered = verdict.trace.render()
        if rendered:
            print(rendered, file=out)
        if verdict.status is Status.UNKNOWN:
            print(f"verdict: unknown (bound {verdict.bound} exhausted)", file=out)
        elif verdict.status is Status.DIVERGED:
            print(f"verdict: diverged ({verdict.fuel_report})", file=out)
        else:
            print(f"verdict: {verdict.status.value}", file=out)
    return _STATUS_EXIT[verdict.status]


def _cmd_eval(args, out) -> int:
    cfg = _config(args)
    term = _parse_term(args.term, "term")
    result = evaluation.evaluate(term, cfg.fuel)
    if isinstance(result, evaluation.Canonical):
        verdict, payload = "canonical", {
            "result": pretty(result.term), "steps": result.steps,
        }
        exit_code = EXIT_OK
        human = f"{pretty(result.term)}\ncanonical ({result.steps} steps)"
    elif isinstance(result, evaluation.FuelExhausted):
        verdict, payload = "fuel-exhausted", {"remaining": result.remaining}
        exit_code = EXIT_DIVERGED
        human = f"fuel exhausted after {cfg.fuel} steps at: {result.remaining}"
    else:
        verdict, payload = "stuck", {"offending": pretty(result.offending)}
        exit_code = EXIT_STUCK
        human = f"stuck at: {pretty(result.offending)}"
    if cfg.output_mode == "machine":
        print(dump_machine(machine_doc("eval", _config_json(cfg), verdict, payload)), file=out)
    else:
        print(human, file=out)
    return exit_code


def _split_check_query(query: List[str]):
    if "in" not in query:
        raise ValueError('check expects: <term> [: <term>] in <type>')
    idx = len(query) - 1 - query[::-1].index("in")
    lhs, type_parts = query[:idx], query[idx + 1:]
    if not lhs or not type_parts:
        raise ValueError('check expects: <term> [: <term>] in <type>')
    if ":" in lhs:
        c = lhs.index(":")
        left, right = lhs[:c], lhs[c + 1:]
        if not left or not right:
            raise ValueError('check expects: <term> : <term> in <type>')
        return " ".join(left), " ".join(right), " ".join(type_parts)
    return " ".join(lhs), None, " ".join(type_parts)


def _cmd_check(args, out) -> int:
    cfg = _config(args)
    try:
        left_text, right_text, type_text = _split_check_query(args.query)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.binary != (right_text is not None):
        print(
            "error: --binary requires two terms separated by ':' (and vice versa)",
            file=sys.stderr,
        )
        return EXIT_INPUT
    left = parse(left_text)
    ty = parse(type_text)
    if right_text is not None:
        right = parse(right_text)
        verdict = binary.check_eq_member(left, right, ty, cfg.fuel, cfg.depth)
    else:
        verdict = unary.check_member(left, ty, cfg.fuel, cfg.depth)
    extra = {"binary": args.binary}
    return _emit_verdict(out, cfg, "check", verdict, extra)


def _cmd_enum(args, out) -> int:
    cfg = _config(args)
    ty = parse(args.type)
    result = unary.enumerate_canonical(ty, cfg.depth, cfg.fuel)
    if result.failure is not None:
        verdict = result.failure.status.value
        exit_code = _STATUS_EXIT[result.failure.status]
        payload = {"witnesses": [], "complete": False}
        human = f"enumeration failed: {verdict}"
    else:
        verdict = "complete" if result.complete else "incomplete"
        exit_code = EXIT_OK if result.complete else EXIT_UNKNOWN
        payload = {
            "witnesses": [pretty(w) for w in result.witnesses],
            "complete": result.complete,
        }
        human = "\n".join([pretty(w) for w in result.witnesses] + [verdict])
    if cfg.output_mode == "machine":
        print(dump_machine(machine_doc("enum", _config_json(cfg), verdict, payload)), file=out)
    else:
        print(human, file=out)
    return exit_code


def _report_json(report: rules.ReadingsReport) -> dict:
    adm = report.admissibility
    out = {
        "rule": report.rule.render(),
        "derivable": report.derivable,
        "admissible": adm.status.value,
        "flagged": report.flagged,
    }
    if isinstance(report.derivation, rules.NotDerivable):
        out["exhausted"] = report.derivation.exhausted
        out["search_depth"] = report.derivation.at_depth
    if adm.bounds:
        out["bounds"] = dict(adm.bounds)
    if adm.instantiation:
        out["instantiation"] = {k: pretty(v) for k, v in adm.instantiation.items()}
        out["premise_witnesses"] = [pretty(w) for w in adm.premise_witnesses or ()]
    return out


def _cmd_rule(args, out) -> int:
    cfg = _config(args)
    if bool(args.rule) == bool(args.file):
        print("error: provide exactly one of an inline rule or --file", file=sys.stderr)
        return EXIT_INPUT
    if args.file:
        with open(args.file, "r", encoding="utf-8") as fh:
            schemes = rules.parse_rule_file(fh.read())
        if not schemes:
            print("error: no rules found in file", file=sys.stderr)
            return EXIT_INPUT
    else:
        schemes = [rules.parse_rule(args.rule)]
    worst_exit = EXIT_OK
    reports = []
    for scheme in schemes:
        report = rules.compare_readings(
            scheme,
            search_depth=cfg.search_depth,
            instance_depth=args.instance_depth,
            witness_depth=cfg.depth,
            fuel=cfg.fuel,
        )
        reports.append(report)
        worst_exit = max(worst_exit, _STATUS_EXIT[report.admissibility.status])
    if cfg.output_mode == "machine":
        payload = [_report_json(r) for r in reports]
        verdict = reports[-1].admissibility.status.value
        doc = machine_doc(
            "rule",
            _config_json(cfg, instance_depth=args.instance_depth),
            verdict,
            payload if len(payload) > 1 else payload[0],
        )
        print(dump_machine(doc), file=out)
    else:
        print("\n\n".join(r.render() for r in reports), file=out)
    return worst_exit


def _cmd_kripke(args, out) -> int:
    cfg = _config(args)
    with open(args.model, "r", encoding="utf-8") as fh:
        model = worlds.parse_model(fh.read())
    judgment = worlds.parse_wjudgment(args.judgment)
    if args.check_monotone:
        counterexample = worlds.check_monotone(model, judgment)
        if counterexample is None:
            verdict, payload, human, exit_code = (
                "pass", {"monotone": True}, "monotone: pass", EXIT_OK,
            )
        else:
            u, v = counterexample
            verdict = "counterexample"
            payload = {"monotone": False, "at": [u, v]}
            human = f"monotone: counterexample ({u} <= {v})"
            exit_code = EXIT_REFUTED
    elif args.world is not None:
        forced = worlds.forces(model, args.world, judgment)
        verdict = "forced" if forced else "not-forced"
        payload = {"world": args.world, "forced": forced}
        human = f"{args.world}: {verdict}"
        exit_code = EXIT_OK if forced else EXIT_REFUTED
    else:
        table = {w: worlds.forces(model, w, judgment) for w in model.worlds}
        verdict = "report"
        payload = {"forces": table}
        human = "\n".join(
            f"{w}: {'forced' if ok else 'not-forced'}" for w, ok in table.items()
        )
        exit_code = EXIT_OK
    if cfg.output_mode == "machine":
        print(dump_machine(machine_doc("kripke", _config_json(cfg), verdict, payload)), file=out)
    else:
        print(human, file=out)
    return exit_code


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else 0
    try:
        cfg_probe = _config(args)  # validates the budget counts
        del cfg_probe
        match args.command:
            case "eval":
                return _cmd_eval(args, out)
            case "check":
                return _cmd_check(args, out)
            case "enum":
                return _cmd_enum(args, out)
            case "rule":
                return _cmd_rule(args, out)
            case "kripke":
                return _cmd_kripke(args, out)
    except (ParseError, OpenTermError, ModelError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
