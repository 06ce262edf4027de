"""Theory files: data model, parser and printer.

Concrete grammar::

    theory     := nodedef*
    nodedef    := NodeName ':' sentence+ '.'
    sentence   := lhsPath '==' descriptor+
    lhsPath    := '<' atom* '>'
    descriptor := atom | rhsPath | NodeName | NodeName ':' rhsPath
                | '"' rhsPath '"' | '"' NodeName '"' | '"' NodeName ':' rhsPath '"'
    rhsPath    := '<' (atom | quoted)* '>'

Whitespace is insignificant and ``%`` comments run to end of line.  Node
names start with an uppercase letter, atoms with a lowercase letter or a
digit.  A ``<...>`` that is followed by ``==`` always opens a new sentence,
which is how a descriptor sequence is told apart from the next left-hand side.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

from .errors import DuplicateNode, DuplicatePath, TheorySyntaxError

ATOM_RE = re.compile(r"[a-z0-9][A-Za-z0-9_\-]*\Z")
NODE_RE = re.compile(r"[A-Z][A-Za-z0-9_\-]*\Z")


@dataclass(frozen=True, slots=True)
class Value:
    """An atom on the right-hand side."""

    atom: str

    def __str__(self) -> str:
        return self.atom


@dataclass(frozen=True, slots=True)
class Ref:
    """Any inheritance descriptor: a node, a path, or a node plus path.

    ``node`` is None for bare paths and ``path`` is None for bare nodes.
    ``is_global`` marks the quoted forms, which are evaluated at the
    original query node rather than at the defining node.
    """

    node: str | None = None
    path: Path | None = None
    is_global: bool = False

    @property
    def kind(self) -> str:
        scope = "Global" if self.is_global else "Local"
        if self.node is None:
            return scope + "Path"
        if self.path is None:
            return scope + "Node"
        return scope + "NodePath"

    def __str__(self) -> str:
        if self.node is None:
            body = format_path(self.path)
        elif self.path is None:
            body = self.node
        else:
            body = f"{self.node}:{format_path(self.path)}"
        return f'"{body}"' if self.is_global else body


Descriptor = Union[Value, Ref]
# A path is a tuple whose items are atoms (str) or quoted Refs.
Path = tuple


@dataclass(frozen=True, slots=True)
class Sentence:
    lhs: tuple[str, ...]
    rhs: tuple[Descriptor, ...]

    def __str__(self) -> str:
        return f"{format_path(self.lhs)} == " + " ".join(map(str, self.rhs))


@dataclass(frozen=True)
class NodeDef:
    """One node definition; sentences keep source order."""

    name: str
    sentences: tuple[Sentence, ...]
    by_lhs: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        index = {}
        for s in self.sentences:
            if s.lhs in index:
                raise DuplicatePath(self.name, format_path(s.lhs))
            index[s.lhs] = s
        object.__setattr__(self, "by_lhs", index)

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self) -> Iterator[Sentence]:
        return iter(self.sentences)


@dataclass(frozen=True)
class Theory:
    """An ordered, immutable collection of node definitions."""

    definitions: tuple[NodeDef, ...] = ()
    by_name: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        index = {}
        for d in self.definitions:
            if d.name in index:
                raise DuplicateNode(d.name)
            index[d.name] = d
        object.__setattr__(self, "by_name", index)

    def __len__(self) -> int:
        return len(self.definitions)

    def __contains__(self, name: str) -> bool:
        return name in self.by_name

    def __iter__(self) -> Iterator[NodeDef]:
        return iter(self.definitions)

    @property
    def names(self) -> list[str]:
        return [d.name for d in self.definitions]

    def sentence_count(self) -> int:
        return sum(len(d) for d in self.definitions)

    def extended(self, *defs: NodeDef) -> Theory:
        return Theory(self.definitions + tuple(defs))


def get_node(theory: Theory, name: str) -> NodeDef | None:
    return theory.by_name.get(name)


def format_path(path: Iterable) -> str:
    return "<" + " ".join(str(c) for c in path) + ">"


def is_atom(text: str) -> bool:
    return bool(ATOM_RE.match(text))


def is_node_name(text: str) -> bool:
    return bool(NODE_RE.match(text))


# ---------------------------------------------------------------- lexer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>%[^\n]*)
  | (?P<eq>==)
  | (?P<punct>[<>:."])
  | (?P<node>[A-Z][A-Za-z0-9_\-]*)
  | (?P<atom>[a-z0-9][A-Za-z0-9_\-]*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # 'node', 'atom', '==', one of '<>:."', or 'eof'
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise TheorySyntaxError(
                line, pos - line_start + 1, f"unexpected character {text[pos]!r}"
            )
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "eq":
            tokens.append(Token("==", "==", line, col))
        elif kind == "punct":
            tokens.append(Token(m.group(), m.group(), line, col))
        elif kind in ("node", "atom"):
            tokens.append(Token(kind, m.group(), line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# ---------------------------------------------------------------- parser


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise TheorySyntaxError(tok.line, tok.column, f"{message}, found {found}")

    def expect(self, kind: str, what: str | None = None) -> Token:
        tok = self.tok
        if tok.kind != kind:
            self.fail(f"expected {what or repr(kind)}")
        self.i += 1
        return tok

    def theory(self) -> Theory:
        defs: list[NodeDef] = []
        seen: set[str] = set()
        while self.tok.kind != "eof":
            d = self.nodedef()
            if d.name in seen:
                raise DuplicateNode(d.name)
            seen.add(d.name)
            defs.append(d)
        return Theory(tuple(defs))

    def nodedef(self) -> NodeDef:
        name = self.expect("node", "node name").text
        self.expect(":")
        sentences = [self.sentence()]
        while self.tok.kind == "<":
            sentences.append(self.sentence())
        self.expect(".", "'.' or '<'")
        return NodeDef(name, tuple(sentences))

    def sentence(self) -> Sentence:
        self.expect("<")
        lhs = []
        while self.tok.kind == "atom":
            lhs.append(self.tok.text)
            self.i += 1
        self.expect(">", "atom or '>' in left-hand path")
        self.expect("==")
        rhs = [self.descriptor()]
        while self.starts_descriptor():
            rhs.append(self.descriptor())
        return Sentence(tuple(lhs), tuple(rhs))

    def starts_descriptor(self) -> bool:
        kind = self.tok.kind
        if kind in ("atom", "node", '"'):
            return True
        if kind != "<":
            return False
        # '<...>' followed by '==' begins the next sentence instead
        depth = 0
        j = self.i
        while j < len(self.toks):
            k = self.toks[j].kind
            if k == "<":
                depth += 1
            elif k == ">":
                depth -= 1
                if depth == 0:
                    break
            elif k in (".", "eof", "=="):
                return True  # malformed; let descriptor() report it
            j += 1
        return j + 1 >= len(self.toks) or self.toks[j + 1].kind != "=="

    def descriptor(self) -> Descriptor:
        tok = self.tok
        if tok.kind == "atom":
            self.i += 1
            return Value(tok.text)
        if tok.kind == '"':
            self.i += 1
            d = self.reference(quoted=True)
            self.expect('"', "closing '\"'")
            return d
        if tok.kind in ("node", "<"):
            return self.reference(quoted=False)
        self.fail("expected descriptor")

    def reference(self, quoted: bool) -> Ref:
        if self.tok.kind == "<":
            return Ref(None, self.rhs_path(quoted), quoted)
        name = self.expect("node", "node name or path").text
        if self.tok.kind == ":":
            self.i += 1
            if self.tok.kind != "<":
                self.fail("expected path after ':'")
            return Ref(name, self.rhs_path(quoted), quoted)
        return Ref(name, None, quoted)

    def rhs_path(self, inside_quotes: bool) -> Path:
        self.expect("<")
        comps: list = []
        while True:
            tok = self.tok
            if tok.kind == "atom":
                comps.append(tok.text)
                self.i += 1
            elif tok.kind == '"':
                if inside_quotes:
                    self.fail("nested quoted descriptor")
                self.i += 1
                comps.append(self.reference(quoted=True))
                self.expect('"', "closing '\"'")
            elif tok.kind == ">":
                self.i += 1
                return tuple(comps)
            else:
                self.fail("expected atom, quoted descriptor or '>'")


def parse_theory(text: str) -> Theory:
    """Parse theory source text.

    Raises TheorySyntaxError on malformed input and DuplicateNode or
    DuplicatePath when names or left-hand paths repeat.
    """
    return _Parser(text).theory()


def parse_path(text: str) -> Path:
    """Parse a single right-hand path such as ``<aux_cat "<form>">``."""
    p = _Parser(text)
    path = p.rhs_path(inside_quotes=False)
    p.expect("eof", "end of path")
    return path


def parse_atom_path(text: str) -> tuple[str, ...]:
    """Parse a path that may contain atoms only (a query or an lhs)."""
    p = _Parser(text)
    p.expect("<")
    atoms = []
    while p.tok.kind == "atom":
        atoms.append(p.tok.text)
        p.i += 1
    p.expect(">", "atom or '>'")
    p.expect("eof", "end of path")
    return tuple(atoms)


def render_theory(theory: Theory, indent: str = "    ") -> str:
    blocks = []
    for d in theory:
        lines = [f"{d.name}:"] + [indent + str(s) for s in d.sentences]
        blocks.append("\n".join(lines) + ".\n")
    return "\n".join(blocks)
