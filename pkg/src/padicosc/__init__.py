"""Exact p-adic arithmetic, ladder operators on C(Z_p, Q_p), cyclic
branch dynamics, and the p-adic zeta function evaluated along two
independent paths."""

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    DomainError,
    InputFormatError,
    PadicError,
    PoleError,
    PrecisionExhaustedError,
)
from .padics import (
    DEFAULT_PRECISION,
    HenselDigits,
    PadicNumber,
    angle,
    hensel_digits,
    n_minus,
    teichmuller,
    unit_power,
    vp,
    vp_factorial,
)
from .series import (
    MahlerSeries,
    VanDerPutSeries,
    basis_vector,
    constant_series,
    convert,
    convert_back,
    mahler_eval,
    mahler_expand,
    sup_norm,
    sup_norm_exponent,
    vdp_eval,
    vdp_expand,
)
from .operators import (
    OperatorMatrix,
    apply_lowering,
    apply_raising,
    as_matrix,
    commutator_defect,
    hamiltonian,
    kernel_solve,
    mat_apply,
    matrices_agree,
)
from .galois import (
    Branch,
    GaloisElement,
    GroundState,
    fixed_generator,
    orbit,
    rho_apply,
    rho_prime_apply,
    t_of,
)
from .zeta import (
    MazurMeasure,
    ZetaBranchEval,
    bernoulli,
    default_regulator,
    integrate_units,
    measure_value,
    total_mass,
    zeta_interp,
    zeta_measure,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "InputFormatError",
    "PadicError",
    "PoleError",
    "PrecisionExhaustedError",
    "DEFAULT_PRECISION",
    "HenselDigits",
    "PadicNumber",
    "angle",
    "hensel_digits",
    "n_minus",
    "teichmuller",
    "unit_power",
    "vp",
    "vp_factorial",
    "MahlerSeries",
    "VanDerPutSeries",
    "basis_vector",
    "constant_series",
    "convert",
    "convert_back",
    "mahler_eval",
    "mahler_expand",
    "sup_norm",
    "sup_norm_exponent",
    "vdp_eval",
    "vdp_expand",
    "OperatorMatrix",
    "apply_lowering",
    "apply_raising",
    "as_matrix",
    "commutator_defect",
    "hamiltonian",
    "kernel_solve",
    "mat_apply",
    "matrices_agree",
    "Branch",
    "GaloisElement",
    "GroundState",
    "fixed_generator",
    "orbit",
    "rho_apply",
    "rho_prime_apply",
    "t_of",
    "MazurMeasure",
    "ZetaBranchEval",
    "bernoulli",
    "default_regulator",
    "integrate_units",
    "measure_value",
    "total_mass",
    "zeta_interp",
    "zeta_measure",
]
