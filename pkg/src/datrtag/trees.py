"""Elementary trees from the bottom-up encoding, and the lexical rules.

An entry describes its tree relative to its anchor leaf: ``<parent ...>``
reaches the mother, ``<left ...>`` and ``<right ...>`` the neighbouring
subtree, each described from that subtree's own distinguished leaf.  A
position exists when its ``cat`` is anything but ``undef``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Iterator

from .engine import EngineConfig, make_overlay, query
from .errors import (
    DepthExceeded,
    FeatureError,
    ReconstructionError,
    RuleNotApplicable,
    UnknownNode,
)
from .syntax import Theory, format_path

UNDEF = "undef"
DEFAULT_FORM = "active"
MAX_ADDRESS = 32

NODE_TYPES = ("normal", "anchor", "substitution", "foot")
MARKERS = {"normal": "", "anchor": "@", "substitution": "!", "foot": "*"}
RULES = ("dative", "passive", "sai", "whq")

# Activated at the top of the verbal tree once a null-form NP is found.
WHQ_SENTENCES = (
    (("parent", "parent", "parent", "cat"), ("s",)),
    (("parent", "parent", "left", "cat"), ("np",)),
    (("parent", "parent", "left", "form"), ("wh",)),
)

Address = tuple  # of "parent" / "left" / "right"


@dataclass(frozen=True)
class NodeFeatures:
    cat: str
    node_type: str | None  # None when the type query yields undef
    form: str | None = None
    root: str | None = None


@dataclass(frozen=True)
class TreeNode:
    features: NodeFeatures
    children: tuple[TreeNode, ...] = ()
    address: Address = ()

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def walk(self) -> Iterator[TreeNode]:
        yield self
        for c in self.children:
            yield from c.walk()


@dataclass(frozen=True)
class ElementaryTree:
    root: TreeNode
    entry: str
    principal_anchor: Address = ()

    def nodes(self) -> Iterator[TreeNode]:
        return self.root.walk()

    def at(self, address: Iterable[str]) -> TreeNode | None:
        address = tuple(address)
        for n in self.nodes():
            if n.address == address:
                return n
        return None

    def __str__(self) -> str:
        return render_bracketed(self)


@dataclass(frozen=True)
class RuleRequest:
    rule: str
    extra_assignments: tuple[tuple[tuple[str, ...], tuple[str, ...]], ...] = ()

    def __post_init__(self):
        if self.rule not in RULES:
            raise ValueError(f"unknown rule {self.rule!r}; expected one of {RULES}")


def _single(theory, entry, path, cfg) -> str:
    atoms = query(theory, entry, path, cfg)
    if len(atoms) != 1:
        raise FeatureError(
            f"{entry}:{format_path(path)} gave {list(atoms)}, expected one atom"
        )
    return atoms[0]


def query_node_features(
    theory: Theory,
    entry: str,
    addr: Iterable[str],
    base_prefix: Iterable[str] = (),
    cfg: EngineConfig | None = None,
) -> NodeFeatures | None:
    """Features of the tree position ``addr``; None if the position is empty."""
    at = tuple(base_prefix) + tuple(addr)
    cat = _single(theory, entry, at + ("cat",), cfg)
    if cat == UNDEF:
        return None
    node_type = _single(theory, entry, at + ("type",), cfg)
    form = _single(theory, entry, at + ("form",), cfg)
    root = None
    if node_type == "anchor":
        root = _single(theory, entry, at + ("root",), cfg)
    return NodeFeatures(
        cat=cat,
        node_type=None if node_type == UNDEF else node_type,
        form=None if form in (UNDEF, DEFAULT_FORM) else form,
        root=None if root == UNDEF else root,
    )


class _Builder:
    def __init__(self, theory, entry, base_prefix, cfg, max_address):
        self.theory = theory
        self.entry = entry
        self.base = tuple(base_prefix)
        self.cfg = cfg
        self.max_address = max_address
        self.cache: dict[Address, NodeFeatures | None] = {}

    def features(self, addr: Address) -> NodeFeatures | None:
        if len(addr) > self.max_address:
            raise DepthExceeded(self.max_address, f"tree address {format_path(addr)}")
        if addr not in self.cache:
            self.cache[addr] = query_node_features(
                self.theory, self.entry, addr, self.base, self.cfg
            )
        return self.cache[addr]

    def expand(self, addr: Address) -> tuple[TreeNode, Address]:
        """Grow the subtree whose distinguished leaf sits at ``addr`` upward
        until no parent is defined; return it with its root's address."""
        node = TreeNode(self.features(addr), (), addr)
        while True:
            up = addr + ("parent",)
            feats = self.features(up)
            if feats is None:
                return node, addr
            left = self.chain(addr, "left")
            right = self.chain(addr, "right")
            node = TreeNode(feats, tuple(reversed(left)) + (node,) + tuple(right), up)
            addr = up

    def chain(self, addr: Address, step: str) -> list[TreeNode]:
        out = []
        at = addr + (step,)
        while self.features(at) is not None:
            sub, top = self.expand(at)
            out.append(sub)
            at = top + (step,)
        return out


def _settle_types(node: TreeNode) -> TreeNode:
    """Give untyped nodes the type their position implies."""
    children = tuple(_settle_types(c) for c in node.children)
    feats = node.features
    if feats.node_type is None:
        feats = replace(feats, node_type="normal" if children else "substitution")
    return TreeNode(feats, children, node.address)


def reconstruct_tree(
    theory: Theory,
    entry: str,
    base_prefix: Iterable[str] = (),
    cfg: EngineConfig | None = None,
    max_address: int = MAX_ADDRESS,
) -> ElementaryTree:
    if entry not in theory:
        raise UnknownNode(entry)
    b = _Builder(theory, entry, base_prefix, cfg, max_address)
    if b.features(()) is None:
        raise ReconstructionError(
            f"{entry}:{format_path(tuple(base_prefix) + ('cat',))} is undef; no tree"
        )
    root, _ = b.expand(())
    return ElementaryTree(_settle_types(root), entry, ())


def _render(node: TreeNode, principal: Address) -> str:
    f = node.features
    if node.children:
        return "(" + " ".join([f.cat] + [_render(c, principal) for c in node.children]) + ")"
    text = f.cat
    # The anchor's own form is the entry's trigger setting, not a node mark.
    if f.form and node.address != principal:
        text += "{form=" + f.form + "}"
    text += MARKERS.get(f.node_type, "")
    if f.root:
        text += "=" + f.root
    return text


def render_bracketed(tree: ElementaryTree) -> str:
    """One-line bracketed form, e.g. ``(s np! (vp v@=die))``."""
    return _render(tree.root, tree.principal_anchor)


def detect_whq_trigger(tree: ElementaryTree) -> list[Address]:
    return [
        n.address
        for n in tree.nodes()
        if n.features.cat == "np" and n.features.form == "null"
    ]


def apply_lexical_rule(
    theory: Theory,
    entry: str,
    req: RuleRequest,
    cfg: EngineConfig | None = None,
) -> ElementaryTree:
    if entry not in theory:
        raise UnknownNode(entry)
    extras = [(tuple(p), tuple(v)) for p, v in req.extra_assignments]

    if req.rule == "dative":
        th, node = make_overlay(theory, entry, extras) if extras else (theory, entry)
        prefix = ("alt", "dative")
        if query(th, node, prefix + ("cat",), cfg) == (UNDEF,):
            raise RuleNotApplicable("dative", f"{entry}:<alt dative cat> is undef")
        tree = reconstruct_tree(th, node, prefix, cfg)
    elif req.rule in ("passive", "sai"):
        form = "passive" if req.rule == "passive" else "inv"
        th, node = make_overlay(theory, entry, [(("form",), (form,))] + extras)
        tree = reconstruct_tree(th, node, (), cfg)
    else:
        th, node = make_overlay(theory, entry, extras)
        plain = reconstruct_tree(th, node, (), cfg)
        if not detect_whq_trigger(plain):
            raise RuleNotApplicable("whq", f"no NP with form null in {entry}'s tree")
        th, node = make_overlay(theory, entry, extras + list(WHQ_SENTENCES))
        tree = reconstruct_tree(th, node, (), cfg)
    return replace(tree, entry=entry)
