"""Default-inheritance lexicons for lexicalized tree-adjoining grammar.

Parse theory files, evaluate path queries with default inheritance,
rebuild elementary trees from their bottom-up encoding and apply the
dative, passive, subject-aux inversion and wh-question rules.
"""

__version__ = "0.1.0"

from .engine import (
    EngineConfig,
    QueryContext,
    evaluate_query,
    extend_descriptor,
    make_overlay,
    match_longest_prefix,
    query,
)
from .errors import (
    DatrError,
    DepthExceeded,
    DuplicateNode,
    DuplicatePath,
    EvaluationError,
    NoMatchingSentence,
    RuleNotApplicable,
    TheorySyntaxError,
    UnknownFragment,
    UnknownNode,
)
from .fragments import golden_cases, load_fragment
from .syntax import (
    NodeDef,
    Ref,
    Sentence,
    Theory,
    Value,
    get_node,
    parse_atom_path,
    parse_path,
    parse_theory,
    render_theory,
)
from .trees import (
    ElementaryTree,
    NodeFeatures,
    RuleRequest,
    TreeNode,
    apply_lexical_rule,
    detect_whq_trigger,
    query_node_features,
    reconstruct_tree,
    render_bracketed,
)
