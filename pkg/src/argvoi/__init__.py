"""Dung and probabilistic argumentation with value-of-information analysis."""

from .ach import AchMatrix, Evidence, Hypothesis, ProbabilityMapping, ach_to_daf, ach_to_praf
from .formats import parse_ach_csv, parse_bundle, parse_framework, render_report, serialize_framework
from .framework import (
    ArgumentationError,
    DungFramework,
    Inference,
    ObservationBundle,
    Semantics,
    accepted_arguments,
    extensions,
    grounded_extension,
    make_framework,
)
from .praf import (
    MonteCarloConfig,
    ProbabilisticFramework,
    acceptance_probabilities_exact,
    acceptance_probabilities_mc,
    make_praf,
)
from .voi import (
    DifferenceKind,
    Evaluator,
    Objective,
    UtilityKind,
    rank_observed,
    rank_single_attacks,
    value_of_observation,
    value_of_observed,
)

__version__ = "0.1.0"
