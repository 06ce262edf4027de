"""Golden test files.

Line-oriented; blank lines and ``#`` comments are ignored::

    Q Give <parent left cat> => np
    T Give rule=dative => (s np! (vp v@=give np! np!))
    T Eat rule=whq set <right form>=null => (s np{form=wh}! ...)

Expected text is compared byte for byte.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .engine import EngineConfig, make_overlay, query
from .errors import DatrError, TheorySyntaxError
from .syntax import Theory, format_path, parse_atom_path
from .trees import RuleRequest, apply_lexical_rule, reconstruct_tree, render_bracketed

_Q_RE = re.compile(r"Q\s+(\S+)\s+(<[^>]*>)\s*=>\s*(.*)\Z")
_T_RE = re.compile(r"T\s+(\S+)((?:\s+(?:rule=\S+|set\s*<[^>]*>\s*=\s*\S+))*)\s*=>\s*(.*)\Z")
_T_OPT_RE = re.compile(r"rule=(\S+)|set\s*(<[^>]*>)\s*=\s*(\S+)")


@dataclass(frozen=True)
class GoldenCase:
    kind: str  # "query" or "tree"
    subject: str
    expected: str
    path: tuple[str, ...] = ()
    rule: str | None = None
    sets: tuple[tuple[tuple[str, ...], tuple[str, ...]], ...] = ()
    line: int = 0

    def describe(self) -> str:
        if self.kind == "query":
            return f"Q {self.subject} {format_path(self.path)}"
        parts = [f"T {self.subject}"]
        if self.rule:
            parts.append(f"rule={self.rule}")
        parts += [f"set {format_path(p)}={' '.join(v)}" for p, v in self.sets]
        return " ".join(parts)


def parse_golden(text: str) -> list[GoldenCase]:
    cases = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if m := _Q_RE.match(line):
            path = _path_at(m.group(2), n)
            cases.append(GoldenCase("query", m.group(1), m.group(3).strip(), path, line=n))
        elif m := _T_RE.match(line):
            rule, sets = None, []
            for r, p, v in _T_OPT_RE.findall(m.group(2)):
                if r:
                    rule = r
                else:
                    sets.append((_path_at(p, n), (v,)))
            cases.append(
                GoldenCase("tree", m.group(1), m.group(3).strip(), (), rule, tuple(sets), n)
            )
        else:
            raise TheorySyntaxError(n, 1, f"unrecognised golden line {line!r}")
        if not cases[-1].expected:
            raise TheorySyntaxError(n, 1, "empty expected value")
    return cases


def _path_at(text: str, line: int) -> tuple[str, ...]:
    try:
        return parse_atom_path(text)
    except TheorySyntaxError as e:
        raise TheorySyntaxError(line, e.column, e.message) from None


def run_case(theory: Theory, case: GoldenCase, cfg: EngineConfig | None = None) -> str:
    """Compute the actual text for ``case``. Engine errors propagate."""
    if case.kind == "query":
        return " ".join(query(theory, case.subject, case.path, cfg))
    if case.rule:
        tree = apply_lexical_rule(theory, case.subject, RuleRequest(case.rule, case.sets), cfg)
    elif case.sets:
        th, node = make_overlay(theory, case.subject, case.sets)
        tree = reconstruct_tree(th, node, (), cfg)
    else:
        tree = reconstruct_tree(theory, case.subject, (), cfg)
    return render_bracketed(tree)


@dataclass(frozen=True)
class CaseResult:
    case: GoldenCase
    actual: str | None
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and self.actual == self.case.expected


def check_case(theory: Theory, case: GoldenCase, cfg: EngineConfig | None = None) -> CaseResult:
    try:
        return CaseResult(case, run_case(theory, case, cfg))
    except DatrError as e:
        return CaseResult(case, None, f"{type(e).__name__}: {e}")
