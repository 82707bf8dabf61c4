"""Decision procedures for extensive-form strategy profiles.

Parse profile documents, decide convergence / equilibrium / rationality
predicates on finite and rational-infinite profiles, and build the bundled
game families (centipede158, fig1, infpede, omegapede, zero_one,
dollar_auction).
"""

from ._core import (
    BadFamilyError,
    Family,
    NotFiniteError,
    Profile,
    ProfileParseError,
    always_convergent,
    bi,
    convergent,
    divergent,
    enumerate_profiles,
    family,
    parse,
    pe,
    rat_f,
    rat_inf,
    serialize,
    spe,
)

__all__ = [
    "BadFamilyError",
    "Family",
    "NotFiniteError",
    "Profile",
    "ProfileParseError",
    "always_convergent",
    "bi",
    "convergent",
    "divergent",
    "enumerate_profiles",
    "family",
    "parse",
    "pe",
    "rat_f",
    "rat_inf",
    "serialize",
    "spe",
]
