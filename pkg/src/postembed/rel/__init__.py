"""Rational relations: expressions, normalized transducers and queries on them."""
from .classes import (
    UnboundedDiscrepancy,
    bld_check,
    discrepancy_bound,
    is_length_preserving,
    is_synchronous_form,
    offsets,
    resynchronize,
)
from .expr import (
    Compose,
    Concat,
    Embed,
    Empty,
    Id,
    Inverse,
    Machine,
    Pair,
    Plus,
    RelExpr,
    RelSyntaxError,
    Star,
    Union,
    compile,
    concat,
    embedding,
    fold_union,
    identity,
    pair,
    parse,
    render,
    union,
)
from .nfa import Nfa, RegexError, regex
from .parikh import LinearSet, NotUnary, parikh_linear_sets
from .search import (
    has_image,
    image,
    image_bounded,
    lossy_images_max,
    lossy_step_bounded,
    min_covering_predecessors,
    post_nfa,
    pre_nfa,
    relate_pair,
)
from .transducer import AlphabetMismatch, Transducer, t_compose, t_union
