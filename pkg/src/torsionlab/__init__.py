"""Exact torsion-submodule, assassin and fairness computations over
truncated monomial-rewriting quotient algebras."""

__version__ = "0.1.0"

from .errors import (
    NonConfluent,
    NotMonomialMode,
    ParseError,
    PatternError,
    RingMismatch,
    TorsionlabError,
    UnitIdeal,
    UnknownTag,
    VariableOutOfRange,
)
from .ring import (
    ConfluenceReport,
    Element,
    Monomial,
    RewriteRule,
    RingPresentation,
    check_local_confluence,
    format_element,
    format_monomial,
    grlex_key,
    normal_form,
)
from .ideals import (
    IdealHandle,
    MembershipAnswer,
    SaturationResult,
    brute_force_membership,
    ideal_colon,
    ideal_colon_ideal,
    ideal_intersection,
    ideal_membership,
    ideal_power,
    ideal_product,
    ideal_radical,
    ideal_saturation,
    ideal_sum,
    minimal_primes,
)
from .spectrum import (
    AssassinReport,
    assassins_cyclic,
    assassins_subquotient,
    format_prime,
    is_prime_ideal,
    prime_ideal,
    prime_variable_set,
    spectrum,
    weak_assassins_cyclic,
    weak_assassins_subquotient,
)
from .torsion import (
    FairnessComparison,
    FairnessReport,
    TorsionResult,
    VERDICT_NAMES,
    bounded_torsion_exponent,
    fairness_report,
    gamma_large_cyclic,
    gamma_small_cyclic,
    is_bounded_small_torsion,
    radical_probe,
)
from .harness import (
    HarnessInstance,
    HarnessReport,
    HarnessViolation,
    instance_script,
    proposition_harness,
    random_instance,
)
from .families import (
    ClaimResult,
    ExampleReport,
    FamilySpec,
    family_tags,
    get_family,
    instantiate,
    replicate_example,
    stable_query,
)
from .dsl import Script, expand_ideal, expand_ring, parse
from .cli import ExecutionOptions, execute, main

__all__ = [name for name in dir() if not name.startswith("_")]
