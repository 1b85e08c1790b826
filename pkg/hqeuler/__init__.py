"""hqeuler - (h,q)-Euler polynomials attached to Dirichlet characters."""

__version__ = "0.1.0"

from .characters import DirichletCharacter, enumerate_characters, from_table, principal, quadratic
from .core import (
    EulerParams,
    SeriesTruncation,
    classical_euler_poly,
    euler_number,
    euler_poly,
    euler_poly_series_oracle,
    power_sum_factored,
    power_sum_naive,
)
from .identities import IdentityReport, check_addition, check_thm22, check_thm23, check_thm24, check_umbral
from .lseries import LQuery, check_theorem_L, l_multiple
from .numerics import Mode, QContext, q_number, q_pow, scalar_eq
from .verifier import GridSpec, run_grid

__all__ = [
    "DirichletCharacter",
    "EulerParams",
    "GridSpec",
    "IdentityReport",
    "LQuery",
    "Mode",
    "QContext",
    "SeriesTruncation",
    "check_addition",
    "check_theorem_L",
    "check_thm22",
    "check_thm23",
    "check_thm24",
    "check_umbral",
    "classical_euler_poly",
    "enumerate_characters",
    "euler_number",
    "euler_poly",
    "euler_poly_series_oracle",
    "from_table",
    "l_multiple",
    "power_sum_factored",
    "power_sum_naive",
    "principal",
    "q_number",
    "q_pow",
    "quadratic",
    "run_grid",
    "scalar_eq",
]
