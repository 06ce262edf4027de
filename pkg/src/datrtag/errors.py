"""Exception hierarchy shared by the parser, the engine and the tree tools."""

from __future__ import annotations


class DatrError(Exception):
    """Base class for every error raised by this package."""


class TheorySyntaxError(DatrError):
    """Malformed theory text. Carries a 1-based line and column."""

    def __init__(self, line: int, column: int, message: str, source: str | None = None):
        prefix = f"{source}:" if source else ""
        super().__init__(f"{prefix}{line}:{column}: {message}")
        self.source = source
        self.line = line
        self.column = column
        self.message = message


class ValidationError(DatrError):
    pass


class DuplicateNode(ValidationError):
    def __init__(self, name: str):
        super().__init__(f"node {name} is defined more than once")
        self.name = name


class DuplicatePath(ValidationError):
    def __init__(self, node: str, path: str):
        super().__init__(f"node {node} defines path {path} more than once")
        self.node = node
        self.path = path


class EvaluationError(DatrError):
    pass


class UnknownNode(EvaluationError):
    def __init__(self, name: str):
        super().__init__(f"unknown node {name}")
        self.name = name


class NoMatchingSentence(EvaluationError):
    def __init__(self, node: str, path: str):
        super().__init__(f"node {node} defines no prefix of {path}")
        self.node = node
        self.path = path


class DepthExceeded(EvaluationError):
    def __init__(self, limit: int, where: str = ""):
        msg = f"evaluation depth limit {limit} reached"
        if where:
            msg += f" at {where}"
        super().__init__(msg + " (cyclic theory?)")
        self.limit = limit


class FeatureError(EvaluationError):
    """A tree-node feature did not evaluate to exactly one atom."""


class ReconstructionError(EvaluationError):
    pass


class RuleNotApplicable(EvaluationError):
    def __init__(self, rule: str, reason: str):
        super().__init__(f"rule {rule} not applicable: {reason}")
        self.rule = rule


class UnknownFragment(DatrError):
    def __init__(self, name: str):
        super().__init__(f"unknown fragment {name!r}")
        self.name = name
