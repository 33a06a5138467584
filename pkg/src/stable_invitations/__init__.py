"""Stable invitations: who to invite when guests care about the head count."""

from .asip import MultiSlotInstance, solve_asip, solve_asip_multislot
from .core import (
    CapacityError,
    Comparison,
    GsipInstance,
    InstanceError,
    PreferenceOrder,
    PreferenceShape,
    ShapeError,
    ShapeKind,
    SolveResult,
    classify_preference,
    compare_for_agent,
    is_envy_free,
    is_individually_rational,
    is_stable,
)
from .documents import parse_instance, serialize_instance
from .generate import GeneratorConfig, generate_random_instance
from .gsip import decide_stable_at_least_k, solve_gsip, solve_max_individually_rational
from .mechanism import ThresholdProfile, derive_threshold, run_inc_mechanism
from .oracle import enumerate_stable, oracle_max_stable
from .strategic import (
    MechanismTable,
    check_finds_stable,
    check_strategy_proof,
    find_manipulation,
    verify_no_sp_stable_mechanism,
)

__version__ = "0.1.0"
