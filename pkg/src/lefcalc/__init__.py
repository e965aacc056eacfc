"""Exceptional-data calculus for partial doublings of Lefschetz pencils, and
positive Dehn-twist words with Hurwitz moves, partial conjugations and
Euler-characteristic/signature invariants."""
from .exceptional import (
    AdjunctionReport,
    CalculusError,
    DoublingHypothesisError,
    DoublingOutcome,
    DoublingSequence,
    ExceptionalData,
    PencilState,
    SequenceStepError,
    adjunction_check,
    apply_sequence,
    blow_down,
    blow_up,
    closed_forms,
    normalize,
    partial_double,
    validate_sequence,
)
from .search import (
    MatchingFamily,
    family_final_data,
    kernel_basis,
    paper_family,
    search_matching,
    verify_family,
)
from .words import (
    Factorization,
    Stabilizer,
    TwistLetter,
    boundary_relation_check,
    global_conjugate,
    hurwitz_move,
    intersection_pairing,
    monodromy_fingerprint,
    partial_conjugate,
    stabilizer_type,
    transvection,
    word_product,
)
from .invariants import (
    SignatureTriple,
    euler_characteristic,
    form_signature,
    meyer_cocycle,
    signature,
)
from .orbits import Verdict, equivalent, hurwitz_orbit

__version__ = "0.1.0"
