"""Products of transfinite sequences in semigroups with an omega-power.

A base semigroup supplies a binary product and an omega-power; the
product of any sequence of countable ordinal length (below ``w^w``) built
from letters, concatenation and omega-repetition is then determined, and
:func:`evaluate` computes it.
"""

from .engine import (
    ABSORBING,
    CutSpec,
    EvalTrace,
    canonical_cuts,
    cut_chunks,
    eval_regrouped,
    eval_with_cuts,
    evaluate,
    omega_completion,
)
from .errors import (
    CutSpecError,
    OrdsemiError,
    ParseError,
    TableError,
    UndetectedPeriodicityError,
    UnknownElementError,
)
from .lawcheck import GenConfig, fuzz, gen_alt_cuts, gen_regrouping, gen_tree
from .ordinal import OMEGA, ONE, ZERO, Ordinal, add, compare, format_ordinal, left_subtract, parse
from .ordinal import parse as parse_ordinal
from .semigroup import (
    FiniteTable,
    LeftProjection,
    OrdinalSum,
    Semigroup,
    TransfiniteStrings,
    check_laws,
    ep_omega_product,
    get_builtin,
    load_table,
    load_table_file,
    min_chain_table,
    right_projection_table,
    sat_counter_table,
)
from .seq import (
    Concat,
    OmegaRepeat,
    SeqTree,
    Single,
    concat,
    flatten,
    format_regrouping,
    format_tree,
    map_letters,
    omega_repeat,
    parse_regrouping,
    parse_tree,
    single,
)

__version__ = "0.1.0"

__all__ = [
    "ABSORBING",
    "CutSpec",
    "EvalTrace",
    "canonical_cuts",
    "cut_chunks",
    "eval_regrouped",
    "eval_with_cuts",
    "evaluate",
    "omega_completion",
    "CutSpecError",
    "OrdsemiError",
    "ParseError",
    "TableError",
    "UndetectedPeriodicityError",
    "UnknownElementError",
    "GenConfig",
    "fuzz",
    "gen_alt_cuts",
    "gen_regrouping",
    "gen_tree",
    "OMEGA",
    "ONE",
    "ZERO",
    "Ordinal",
    "add",
    "compare",
    "format_ordinal",
    "left_subtract",
    "parse",
    "parse_ordinal",
    "FiniteTable",
    "LeftProjection",
    "OrdinalSum",
    "Semigroup",
    "TransfiniteStrings",
    "check_laws",
    "ep_omega_product",
    "get_builtin",
    "load_table",
    "load_table_file",
    "min_chain_table",
    "right_projection_table",
    "sat_counter_table",
    "Concat",
    "OmegaRepeat",
    "SeqTree",
    "Single",
    "concat",
    "flatten",
    "format_regrouping",
    "format_tree",
    "map_letters",
    "omega_repeat",
    "parse_regrouping",
    "parse_tree",
    "single",
]
