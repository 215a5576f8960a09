"""Independent checks: KKT certificates, an LP oracle and a Monte-Carlo sampler."""

from .kkt import KktReport, certify, check_kkt, dual_certificate
from .montecarlo import MonteCarloResult, born_table, expected_rates, monte_carlo
from .oracle import OracleReport, OracleResult, compare_oracle, directions, lp_oracle

__all__ = [
    "KktReport",
    "check_kkt",
    "dual_certificate",
    "certify",
    "OracleResult",
    "OracleReport",
    "directions",
    "lp_oracle",
    "compare_oracle",
    "MonteCarloResult",
    "born_table",
    "expected_rates",
    "monte_carlo",
]
