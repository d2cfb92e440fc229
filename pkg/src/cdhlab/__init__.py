"""Symmetric AND∘MOD_p∘MOD_q circuits as sums over labeled hypergraphs."""

from .caps import DEFAULT_CAPS, Caps
from .errors import (
    CapExceeded,
    CdhError,
    FieldError,
    HypothesisError,
    InputError,
    InternalConsistencyError,
    NotSymmetricError,
    VerificationError,
)
from .expr import (
    Atom,
    CircuitSpec,
    Expression,
    HammingProfile,
    SymmetricExpression,
    decompose_symmetric,
    equivalent,
    eval_atom,
    eval_circuit,
    eval_expression,
    expression_size,
    hamming_profile,
    is_symmetric_expression,
    normalize,
    symmetric_closure,
    truth_table,
)
from .ff import Fp, Prime, binom_mod, binom_period_bound, multinom_mod, seq_min_period
from .hypergraph import (
    LabeledHypergraph,
    PurifiedSummary,
    automorphism_report,
    canonical_form,
    check_dichotomy,
    exchange_classes,
    is_fully_symmetric,
    is_symmetry_purified,
    maximal_fully_symmetric,
    orbit,
    purified_summary,
)
from .period import (
    and_lower_bound,
    check_period_theorem,
    eval_purified,
    expression_period_report,
    main_period_bound,
    predicted_period,
    purified_profile,
)
from .rewrite import (
    apply_ddl,
    apply_sddl_orbit,
    ddl_coefficients,
    partially_purify,
    purify,
    sddl_coefficients,
)

__version__ = "0.1.0"
