"""Command-line interface.

Exit status: 0 success, 1 evaluation error or inapplicable rule,
2 syntax or validation error (including bad arguments), 3 golden mismatch.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .engine import EngineConfig, make_overlay, query
from .errors import DatrError, EvaluationError, TheorySyntaxError, UnknownFragment, ValidationError
from .fragments import FRAGMENTS, fragment_text, golden_text
from .golden import check_case, parse_golden
from .syntax import Theory, parse_atom_path, parse_theory
from .trees import RULES, RuleRequest, apply_lexical_rule, reconstruct_tree, render_bracketed

EXIT_OK, EXIT_EVAL, EXIT_SYNTAX, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(source: str, builtin) -> tuple[str, str]:
    """Text and display name for a built-in fragment name or a file path."""
    if source in FRAGMENTS:
        return builtin(source), f"<{source}>"
    try:
        return Path(source).read_text(encoding="utf-8"), source
    except OSError as e:
        raise UsageError(f"cannot read {source}: {e.strerror}") from None
    except UnicodeDecodeError:
        raise UsageError(f"{source} is not UTF-8 text") from None


def load_theory(source: str) -> Theory:
    text, name = _read(source, fragment_text)
    try:
        return parse_theory(text)
    except TheorySyntaxError as e:
        raise TheorySyntaxError(e.line, e.column, e.message, name) from None


def _assignment(text: str) -> tuple[tuple[str, ...], tuple[str, ...]]:
    path, sep, atom = text.rpartition("=")
    if not sep:
        raise UsageError(f"--set expects <path>=atom, got {text!r}")
    try:
        return parse_atom_path(path.strip()), (parse_atom_path(f"<{atom.strip()}>")[0],)
    except (TheorySyntaxError, IndexError):
        raise UsageError(f"--set expects <path>=atom, got {text!r}") from None


def _config(args) -> EngineConfig:
    try:
        return EngineConfig(args.max_depth)
    except ValueError as e:
        raise UsageError(str(e)) from None


def cmd_check(args, out) -> int:
    theory = load_theory(args.file)
    print(f"{len(theory)} nodes, {theory.sentence_count()} sentences", file=out)
    return EXIT_OK


def cmd_query(args, out) -> int:
    theory = load_theory(args.file)
    path = parse_atom_path(args.path)
    node = args.node
    if args.set:
        theory, node = make_overlay(theory, node, [_assignment(s) for s in args.set])
    print(" ".join(query(theory, node, path, _config(args))), file=out)
    return EXIT_OK


def cmd_tree(args, out) -> int:
    theory = load_theory(args.file)
    cfg = _config(args)
    sets = [_assignment(s) for s in args.set or ()]
    if args.rule:
        if args.alt:
            raise UsageError("--alt cannot be combined with --rule")
        tree = apply_lexical_rule(theory, args.entry, RuleRequest(args.rule, tuple(sets)), cfg)
    else:
        theory, node = make_overlay(theory, args.entry, sets) if sets else (theory, args.entry)
        prefix = ("alt", args.alt) if args.alt else ()
        tree = reconstruct_tree(theory, node, prefix, cfg)
    print(render_bracketed(tree), file=out)
    return EXIT_OK


def cmd_entries(args, out) -> int:
    theory = load_theory(args.file)
    for d in theory:
        if ("root",) in d.by_lhs:
            print(d.name, file=out)
    return EXIT_OK


def cmd_test(args, out) -> int:
    theory = load_theory(args.file)
    text, name = _read(args.golden, golden_text)
    try:
        cases = parse_golden(text)
    except TheorySyntaxError as e:
        raise TheorySyntaxError(e.line, e.column, e.message, name) from None
    cfg = _config(args)
    failed = 0
    for case in cases:
        r = check_case(theory, case, cfg)
        if r.passed:
            print(f"PASS {case.describe()}", file=out)
            continue
        failed += 1
        got = r.error if r.error else repr(r.actual)
        print(f"FAIL {case.describe()} (line {case.line}): expected {case.expected!r}, got {got}", file=out)
    print(f"{len(cases)} cases, {len(cases) - failed} passed, {failed} failed", file=out)
    return EXIT_MISMATCH if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="datrtag",
        description="Query default-inheritance lexicons and build elementary trees.",
        epilog=f"Built-in theories: {', '.join(FRAGMENTS)}.",
    )
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("file", help="theory file or built-in theory name")
        sp.set_defaults(func=func)
        return sp

    def depth(sp):
        sp.add_argument("--max-depth", type=int, default=EngineConfig().max_depth,
                        help="evaluation depth limit (default %(default)s)")

    def sets(sp):
        sp.add_argument("--set", action="append", metavar="PATH=ATOM",
                        help="overlay an assignment, e.g. '<form>=inv' (repeatable)")

    add("check", cmd_check, "parse and validate a theory")

    sp = add("query", cmd_query, "evaluate NODE:PATH")
    sp.add_argument("node")
    sp.add_argument("path", help="query path, e.g. '<parent cat>'")
    sets(sp)
    depth(sp)

    sp = add("tree", cmd_tree, "print an entry's elementary tree")
    sp.add_argument("entry")
    sets(sp)
    sp.add_argument("--alt", help="reconstruct the alternation at <alt ALT>")
    sp.add_argument("--rule", choices=RULES)
    depth(sp)

    add("entries", cmd_entries, "list nodes that define <root>")

    sp = add("test", cmd_test, "run a golden file against a theory")
    sp.add_argument("golden", help="golden file or built-in name")
    depth(sp)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except TheorySyntaxError as e:
        print(f"datrtag: syntax error: {e}", file=err)
        return EXIT_SYNTAX
    except (ValidationError, UnknownFragment, UsageError) as e:
        print(f"datrtag: error: {e}", file=err)
        return EXIT_SYNTAX
    except EvaluationError as e:
        print(f"datrtag: {type(e).__name__}: {e}", file=err)
        return EXIT_EVAL
    except DatrError as e:  # pragma: no cover - every subclass is handled above
        print(f"datrtag: {e}", file=err)
        return EXIT_EVAL


if __name__ == "__main__":
    sys.exit(main())
