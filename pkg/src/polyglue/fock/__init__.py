from .apply import (
    CompiledOp,
    OperatorMatrix,
    apply,
    commutator_matrix,
    matrix_commutator,
    matrix_product,
    operator_matrix,
)
from .state import FockState, monomial_basis, powersum_state, trace_powers
from .wick import (
    normal_order_printed,
    symbolic_commutator,
    wick_expand,
    wick_expand_by_order,
    wick_sample_counts,
)
from .words import (
    ANNIH,
    CREATE,
    Letter,
    TraceWordOp,
    build_H,
    build_H_mu,
    build_h,
    build_h_lambda,
    canonical_word,
    number_operator,
)
