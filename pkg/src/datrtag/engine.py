"""Query evaluation with default inheritance.

A query names a node and an atom path.  The node's sentence with the
longest left-hand side that is a prefix of the query path wins; whatever
is left of the query path (the suffix) is appended to each descriptor on
the right-hand side, and the descriptors are evaluated in turn.

Two contexts travel with every query.  The local context is where unquoted
paths are looked up; the global context is the node originally queried,
where quoted descriptors are looked up.  Node references change the local
node only; quoted references move both.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import DepthExceeded, DuplicatePath, NoMatchingSentence, UnknownNode
from .syntax import (
    Descriptor,
    NodeDef,
    Path,
    Ref,
    Sentence,
    Theory,
    Value,
    format_path,
)

DEFAULT_MAX_DEPTH = 500


@dataclass(frozen=True)
class EngineConfig:
    max_depth: int = DEFAULT_MAX_DEPTH

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")


@dataclass(frozen=True)
class QueryContext:
    local_node: str
    local_path: tuple[str, ...]
    global_node: str
    global_path: tuple[str, ...]
    depth: int = 0

    @classmethod
    def start(cls, node: str, path: Iterable[str]) -> QueryContext:
        path = tuple(path)
        return cls(node, path, node, path)


def match_longest_prefix(
    node_def: NodeDef | Iterable[Sentence], query: tuple[str, ...]
) -> tuple[Sentence, tuple[str, ...]] | None:
    """Return the sentence whose lhs is the longest prefix of ``query``,
    with the unmatched remainder of ``query``; None if no lhs matches."""
    index = node_def.by_lhs if isinstance(node_def, NodeDef) else {
        s.lhs: s for s in node_def
    }
    query = tuple(query)
    for n in range(len(query), -1, -1):
        s = index.get(query[:n])
        if s is not None:
            return s, query[n:]
    return None


def extend_descriptor(d: Descriptor, suffix: tuple[str, ...]) -> Descriptor:
    if isinstance(d, Value):
        return d
    suffix = tuple(suffix)
    path = suffix if d.path is None else d.path + suffix
    return Ref(d.node, path, d.is_global)


class _Evaluator:
    """Evaluates queries on an explicit stack.

    Each query step is a generator that yields sub-queries as
    ``(node, path, global_node, global_path, depth)`` tuples and receives
    their atom sequences back, so Python's own stack stays shallow however
    deep the inheritance goes.
    """

    def __init__(self, theory: Theory, cfg: EngineConfig):
        self.theory = theory
        self.limit = cfg.max_depth

    def run(self, node, path, gnode, gpath, depth) -> tuple[str, ...]:
        stack = [self.step(node, path, gnode, gpath, depth)]
        value = None
        while stack:
            try:
                request = stack[-1].send(value)
            except StopIteration as done:
                stack.pop()
                value = done.value
                continue
            stack.append(self.step(*request))
            value = None
        return value

    def step(self, node, path, gnode, gpath, depth):
        # Single-descriptor right-hand sides are followed in place.
        while True:
            if depth >= self.limit:
                raise DepthExceeded(self.limit, f"{node}:{format_path(path)}")
            definition = self.theory.by_name.get(node)
            if definition is None:
                raise UnknownNode(node)
            hit = match_longest_prefix(definition, path)
            if hit is None:
                raise NoMatchingSentence(node, format_path(path))
            sentence, suffix = hit
            rhs = [extend_descriptor(d, suffix) for d in sentence.rhs]
            if len(rhs) > 1:
                out: list[str] = []
                for d in rhs:
                    out.extend((yield from self.descriptor(d, node, gnode, gpath, depth)))
                return tuple(out)
            d = rhs[0]
            if isinstance(d, Value):
                return (d.atom,)
            target = yield from self.splice(d.path, gnode, gpath, depth)
            if d.is_global:
                node = d.node if d.node is not None else gnode
                gnode, gpath = node, target
            elif d.node is not None:
                node = d.node
            path = target
            depth += 1

    def descriptor(self, d, node, gnode, gpath, depth):
        if isinstance(d, Value):
            return (d.atom,)
        target = yield from self.splice(d.path, gnode, gpath, depth)
        if d.is_global:
            where = d.node if d.node is not None else gnode
            return (yield (where, target, where, target, depth + 1))
        where = d.node if d.node is not None else node
        return (yield (where, target, gnode, gpath, depth + 1))

    def splice(self, path: Path, gnode, gpath, depth):
        """Replace each quoted component by the atoms it evaluates to at
        the global context."""
        out: list[str] = []
        for c in path:
            if isinstance(c, str):
                out.append(c)
                continue
            where = c.node if c.node is not None else gnode
            if c.path is None:
                sub = gpath
            else:
                sub = yield from self.splice(c.path, gnode, gpath, depth)
            out.extend((yield (where, sub, where, sub, depth + 1)))
        return tuple(out)


def evaluate_query(
    theory: Theory, ctx: QueryContext, cfg: EngineConfig | None = None
) -> tuple[str, ...]:
    ev = _Evaluator(theory, cfg or EngineConfig())
    return ev.run(
        ctx.local_node,
        tuple(ctx.local_path),
        ctx.global_node,
        tuple(ctx.global_path),
        ctx.depth,
    )


def query(
    theory: Theory,
    node: str,
    path: Iterable[str],
    cfg: EngineConfig | None = None,
) -> tuple[str, ...]:
    """Evaluate ``node:path`` with local and global contexts both at node."""
    return evaluate_query(theory, QueryContext.start(node, path), cfg)


def make_overlay(
    theory: Theory,
    base: str,
    assignments: Mapping | Iterable[tuple[Iterable[str], Iterable[str]]] = (),
) -> tuple[Theory, str]:
    """Extend ``theory`` with a fresh node that inherits everything from
    ``base`` except the assigned paths.

    Returns the new theory and the fresh node's name.  The input theory is
    left untouched.
    """
    if base not in theory:
        raise UnknownNode(base)
    items = assignments.items() if isinstance(assignments, Mapping) else assignments
    name, i = "OVERLAY", 0
    while name in theory:
        i += 1
        name = f"OVERLAY{i}"
    sentences = [Sentence((), (Ref(base),))]
    seen = {()}
    for path, atoms in items:
        path = tuple(path)
        if path in seen:
            raise DuplicatePath(name, format_path(path))
        seen.add(path)
        atoms = tuple(atoms)
        if not atoms:
            raise ValueError(f"empty value for {format_path(path)}")
        sentences.append(Sentence(path, tuple(Value(a) for a in atoms)))
    return theory.extended(NodeDef(name, tuple(sentences))), name
