"""Generalized Boolean functions V_n -> Z_{2^k}, their exact
Walsh-Hadamard spectra, and the strong-regularity structure of their
edge-weighted Cayley graphs."""

from ._kernels import BACKEND
from .core import (
    BooleanFunction,
    BudgetExceeded,
    CapExceeded,
    DimensionMismatch,
    ExpressionError,
    GbentError,
    GeneralizedBooleanFunction,
    SpectrumDecodingError,
    algebraic_degree,
    anf_to_truth_table,
    boolean_anf,
    complement_function,
    components,
    dec,
    enc,
    evaluate,
    format_gbf,
    from_components,
    hamming_distance,
    hamming_weight,
    iota,
    iota_inv,
    parse_boolean_expression,
    parse_expression,
    parse_gbf,
    read_gbf,
    write_gbf,
)
from .cyclotomic import CyclotomicInteger
from .graph import (
    ALL_VERTICES,
    EXCLUDE_ENDPOINTS,
    ButsonVerdict,
    CayleyGraph,
    ClassicalSrgReport,
    ComplementTheoremReport,
    LocalSrgReport,
    SrgReport,
    SrgWitness,
    WeightedRegularity,
    adjacency_matrix,
    butson_check,
    classical_srg_check,
    complement_graph,
    complement_parameter_reversal,
    complement_theorem_check,
    counting_identity_check,
    dyadic_check,
    dyadic_check_matrix,
    eigen_verify,
    export_graph,
    graph_from_json,
    local_srg_check,
    neighbor_count,
    pair_counts_all_shifts,
    spectrum_via_wht,
    srg_check,
    srg_check_generalized,
    strength,
    weighted_regularity,
    weighted_regularity_of_matrix,
)
from .theorems import (
    AuditReport,
    BentSetReport,
    Gb4Report,
    NecessaryConditionReport,
    WeightClassPair,
    audit,
    bent_set_corollary_check,
    constant_autocorrelation_nonbent,
    construct_gbent_q4,
    decomposition_criterion_q4,
    f_c,
    gb4_check,
    gbent_fixtures,
    maiorana_mcfarland,
    necessary_condition_check,
    weight_classes,
)
from .transform import (
    CrosscorrelationIdentityReport,
    GbentVerdict,
    Spectrum,
    autocorrelation,
    crosscorrelation,
    crosscorrelation_via_spectrum,
    decode_root,
    gwht_fast,
    gwht_inverse,
    gwht_naive,
    is_bent,
    is_gbent,
    spectrum_to_function,
    spectrum_to_json,
    verify_crosscorrelation_identities,
    wht,
)

__version__ = "0.1.0"
