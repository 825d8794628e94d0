"""Numerical laboratory for ladder factorization formulas on the critical line."""

from ._ladderlab import (  # noqa: F401
    EULER_GAMMA,
    PI,
    EngineConfig,
    FactorizationReport,
    HybridReport,
    IteratedInterval,
    Lab,
    LadderlabError,
    NodeVector,
    OscillatorSpectrum,
    OscillatorTerm,
    Variant,
    formula_count,
    local_spectrum,
    oracle_zeta_half,
    prime_pi,
    theta,
    theta_oracle,
    z_oracle,
    z_value,
    zeta_sq,
)

__version__ = "0.1.0"
