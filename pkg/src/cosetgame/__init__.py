"""Coset guessing game: exact values, strategies, simulation, verification."""

from .f2 import (
    BitMat,
    BitVec,
    Subspace,
    enumerate_subspaces,
    format_matrix,
    gaussian_binomial,
    parse_matrix,
)
from .bound import bound_summand, count_by_intersection, rate_envelope, upper_bound
from .qstate import Gate, MeasureBasis, StateVec, circuit_from_text, circuit_to_text
from .cosets import (
    CosetLabel,
    coset_state_direct,
    coset_state_encoded,
    coset_state_pauli,
    encoder_circuit,
    random_label,
    subspace_state,
)
from .strategy import (
    LocalizedForm,
    Side,
    StrategySpec,
    build_strategy,
    decode,
    localize,
    povm_elements,
    separate_local,
    single_out_bell_pairs,
    win_probability_formula,
)
from .game import (
    GameStats,
    RoundResult,
    default_strategy,
    exact_value,
    exact_value_simulated,
    is_tight,
    monte_carlo,
    play_round,
    round_rng,
    sample_subspace,
    subspace_success,
)
from .verify import CheckResult, run_checks

__version__ = "0.1.0"

__all__ = [
    "BitMat",
    "BitVec",
    "CheckResult",
    "CosetLabel",
    "GameStats",
    "Gate",
    "LocalizedForm",
    "MeasureBasis",
    "RoundResult",
    "Side",
    "StateVec",
    "StrategySpec",
    "Subspace",
    "bound_summand",
    "build_strategy",
    "circuit_from_text",
    "circuit_to_text",
    "coset_state_direct",
    "coset_state_encoded",
    "coset_state_pauli",
    "count_by_intersection",
    "decode",
    "default_strategy",
    "encoder_circuit",
    "enumerate_subspaces",
    "exact_value",
    "exact_value_simulated",
    "format_matrix",
    "gaussian_binomial",
    "is_tight",
    "localize",
    "monte_carlo",
    "parse_matrix",
    "play_round",
    "povm_elements",
    "random_label",
    "rate_envelope",
    "round_rng",
    "run_checks",
    "sample_subspace",
    "separate_local",
    "single_out_bell_pairs",
    "subspace_state",
    "subspace_success",
    "upper_bound",
    "win_probability_formula",
]
