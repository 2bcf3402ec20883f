"""Binary sequences from Euler and Fermat quotients and their correlation measures."""

from .charsums import (
    CharacterTable,
    additive_character,
    character_power,
    chi_km,
    conductor,
    counting_sums,
    gauss_sum,
    lemma1_sum,
    primitive_part,
    ramanujan_sum,
    xi_sum,
)
from .harness import (
    BaselineStats,
    TheoremReport,
    random_baseline,
    sweep,
    theorem_lhs_direct,
    theorem_lhs_via_characters,
    theorem_report,
)
from .measures import (
    CorrelationReport,
    ShiftPattern,
    aperiodic_correlation_measure,
    pattern_sum,
    periodic_correlation_measure,
)
from .numtheory import Factorization, euler_phi, factorize, gcd, mod_inverse, mod_pow, moebius
from .quotients import QuotientTable, euler_quotient, fermat_quotient, period_multiplier, quotient_table
from .sequences import (
    BinarySequence,
    euler_threshold_sequence,
    fermat_sequence,
    prime_power_sequence,
    two_prime_sequence,
)

__version__ = "0.1.0"
