"""Difference families over finite abelian groups and exact evaluation of
algebraic manipulation detection (AMD) codes built from them."""

__version__ = "0.1.0"

from .amd import (
    AmdCode,
    GameEvaluation,
    StrongStrategy,
    WeakStrategy,
    check_simultaneous_optimality,
    classify,
    code_from_family,
    eval_strategy,
    eval_strong_delta,
    eval_strong_optimum,
    eval_weak_delta,
    eval_weak_optimum,
    family_from_code,
    good_set,
    induced_message_distribution,
    strong_bounds,
    weak_bounds,
)
from .constructions import tonchev_edf, two_set_sedf
from .diffcore import (
    FrequencyMap,
    SetFamily,
    class_differences,
    cross_differences,
    external_difference_multiset,
    incoming_differences,
    internal_differences,
    outgoing_differences,
)
from .errors import AmdFamError, InternalConsistencyError
from .families import VerificationReport, check_parameter_identity, implication_check, verify
from .group import FiniteAbelianGroup, FiniteField, make_cyclic_group, make_field, make_group
from .search import SearchCertificate, SearchSpec, certify_nonexistence, search_family, sweep_sedf_open_problem
