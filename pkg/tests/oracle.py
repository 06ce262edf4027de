"""Reference evaluator and random theory generators for the test suite.

The evaluator is deliberately naive and shares no code with the engine:
it scans every sentence of a node to find the longest prefix, recurses on
every descriptor, and keeps its own depth budget.
"""

from __future__ import annotations

import random

from datrtag.syntax import NodeDef, Ref, Sentence, Theory, Value


class OracleError(Exception):
    def __init__(self, kind: str):
        super().__init__(kind)
        self.kind = kind


class Diverged(Exception):
    pass


def naive_query(theory: Theory, node: str, path, budget: int = 60):
    return _eval(theory, node, list(path), node, list(path), budget)


def _eval(theory, node, path, gnode, gpath, budget):
    if budget <= 0:
        raise Diverged()
    defs = [d for d in theory.definitions if d.name == node]
    if not defs:
        raise OracleError("UnknownNode")
    best = None
    for s in defs[0].sentences:
        lhs = list(s.lhs)
        if path[: len(lhs)] == lhs and (best is None or len(lhs) > len(best.lhs)):
            best = s
    if best is None:
        raise OracleError("NoMatchingSentence")
    rest = path[len(best.lhs):]
    result = []
    for d in best.rhs:
        result += _descriptor(theory, d, rest, node, gnode, gpath, budget)
    return result


def _descriptor(theory, d, rest, node, gnode, gpath, budget):
    if isinstance(d, Value):
        return [d.atom]
    base = [] if d.path is None else _spliced(theory, d.path, gnode, gpath, budget)
    target = base + rest
    if d.is_global:
        where = gnode if d.node is None else d.node
        return _eval(theory, where, target, where, target, budget - 1)
    where = node if d.node is None else d.node
    return _eval(theory, where, target, gnode, gpath, budget - 1)


def _spliced(theory, path, gnode, gpath, budget):
    out = []
    for c in path:
        if isinstance(c, str):
            out.append(c)
            continue
        where = gnode if c.node is None else c.node
        sub = list(gpath) if c.path is None else _spliced(theory, c.path, gnode, gpath, budget)
        out += _eval(theory, where, sub, where, sub, budget - 1)
    return out


# ------------------------------------------------------------ generators

ATOMS = ("a", "b", "c", "d", "e")


def _path(rng, atoms, max_len, quoted_ok, node_names):
    comps = []
    for _ in range(rng.randint(0, max_len)):
        if quoted_ok and rng.random() < 0.2:
            comps.append(_quoted(rng, atoms, node_names))
        else:
            comps.append(rng.choice(atoms))
    return tuple(comps)


def _quoted(rng, atoms, node_names):
    flavour = rng.randrange(3)
    inner = tuple(rng.choice(atoms) for _ in range(rng.randint(0, 2)))
    if flavour == 0:
        return Ref(None, inner, True)
    node = rng.choice(node_names)
    return Ref(node, None if flavour == 1 else inner, True)


def random_descriptor(rng, atoms, later, all_names, quoted_ok):
    choices = ["value", "value", "lpath"]
    if later:
        choices += ["lnode", "lnodepath", "lnodepath"]
    if quoted_ok:
        choices += ["gpath"]
        if later:
            choices += ["gnode", "gnodepath"]
    kind = rng.choice(choices)
    if kind == "value":
        return Value(rng.choice(atoms))
    # quoted descriptors may not nest
    nested_ok = quoted_ok and kind in ("lpath", "lnodepath")
    p = _path(rng, atoms, 2, nested_ok, all_names)
    if kind == "lpath":
        return Ref(None, p, False)
    if kind == "gpath":
        return Ref(None, p, True)
    node = rng.choice(later)
    if rng.random() < 0.03:
        node = "MISSING"
    if kind == "lnode":
        return Ref(node, None, False)
    if kind == "gnode":
        return Ref(node, None, True)
    return Ref(node, p, kind == "gnodepath")


def random_theory(rng: random.Random, quoted_ok: bool | None = None) -> Theory:
    """A theory of at most 6 nodes whose node references point forward
    (to later nodes), with lhs length at most 3 over at most 5 atoms."""
    if quoted_ok is None:
        quoted_ok = rng.random() < 0.4
    n = rng.randint(1, 6)
    names = [f"N{i}" for i in range(n)]
    atoms = ATOMS[: rng.randint(2, 5)]
    defs = []
    for i, name in enumerate(names):
        lhss = {()} if rng.random() < 0.7 else set()
        for _ in range(rng.randint(0, 4)):
            lhss.add(tuple(rng.choice(atoms) for _ in range(rng.randint(0, 3))))
        if not lhss:
            lhss.add(())
        sentences = []
        for lhs in sorted(lhss, key=lambda p: (len(p), p)):
            k = 1 if rng.random() < 0.85 else 2
            rhs = tuple(
                random_descriptor(rng, atoms, names[i + 1:], names, quoted_ok)
                for _ in range(k)
            )
            sentences.append(Sentence(lhs, rhs))
        rng.shuffle(sentences)
        defs.append(NodeDef(name, tuple(sentences)))
    return Theory(tuple(defs))


def query_paths(rng: random.Random, theory: Theory, extra: int = 3):
    atoms = sorted({a for d in theory for s in d for a in s.lhs} | {"a", "b"})
    for d in theory:
        seen = set()
        for s in d:
            for q in (s.lhs, s.lhs + (rng.choice(atoms),)):
                seen.add(q)
        for _ in range(extra):
            seen.add(tuple(rng.choice(atoms) for _ in range(rng.randint(0, 3))))
        for q in sorted(seen):
            yield d.name, q


def acyclic_cases(seed: int, count: int, budget: int = 60):
    """Yield ``count`` (theory, [(node, path, expected)]) cases on which the
    reference evaluator terminates for every generated query.  ``expected``
    is the atom tuple or the name of the error the oracle raised."""
    rng = random.Random(seed)
    made = 0
    while made < count:
        theory = random_theory(rng)
        table = []
        try:
            for node, path in query_paths(rng, theory):
                try:
                    table.append((node, path, tuple(naive_query(theory, node, path, budget))))
                except OracleError as e:
                    table.append((node, path, e.kind))
        except Diverged:
            continue
        made += 1
        yield theory, table


def random_node_sentences(rng: random.Random, atoms=ATOMS[:3], max_lhs=4):
    lhss = {tuple(rng.choice(atoms) for _ in range(rng.randint(0, max_lhs)))
            for _ in range(rng.randint(1, 8))}
    return [Sentence(lhs, (Value(rng.choice(atoms)),)) for lhs in lhss]


def brute_longest_prefix(sentences, query):
    hits = [s for s in sentences if tuple(query[: len(s.lhs)]) == s.lhs]
    if not hits:
        return None
    best = max(hits, key=lambda s: len(s.lhs))
    return best, tuple(query[len(best.lhs):])
