"""Covering-graph workbench for ordinals below epsilon-0."""

from .ordinals import (
    EQUAL,
    GREATER,
    LESS,
    OMEGA,
    ONE,
    ZERO,
    Limit,
    Ordinal,
    Successor,
    Zero,
    add,
    classify,
    compare,
    enumerate_ordinals,
    exp_tower_w,
    mul_nat,
    omega_pow,
    succ,
    tower,
)
from .cover import FundIndex, SuccessorStep, chain, covers, fund_seq, up_fund, up_set
from .words import (
    GreatestSeq,
    UPWord,
    canonicalize,
    degree_word,
    greatest_sequence,
    greatest_step,
    lex_compare,
)
from .graphs import (
    GraphPrefix,
    build_prefix,
    graphs_equal_on_shared,
    reach_greatest,
    restrict_by_degree_word,
    shared_interior,
    to_dot,
    to_json,
)
from .stacks import (
    Stack,
    build_exprs,
    decode_iso,
    decode_raw,
    encode_iso,
    enumerate_domain,
    in_relation,
    parse_opexpr,
    parse_stack,
)
from .strictsets import TraceTree, c_set, exp2, max_cover_step, s_alpha, trace_tree
from .treegraphs import TreeGraphPrefix, build_treegraph, eval_path, power_interpretation
from .mso import eval_formula, eval_word_formula, word_formula
from .parsing import format_ordinal, format_word, parse_ordinal

__version__ = "0.1.0"
