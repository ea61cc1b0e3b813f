"""Numerics for Eisenstein series on the metaplectic double cover of SL2(R).

Submodules:

* ``mpl_group``     the double cover, its Iwasawa decomposition and Gamma_1(4)
* ``char_sums``     Kronecker symbols, Gauss and twisted Kloosterman sums
* ``special_funcs`` Gamma, zeta, Dirichlet L-functions and the Gamma factors
* ``coefficients``  Fourier coefficients at both cusps, closed and series forms
* ``eisenstein``    Whittaker functions, Fourier and direct-sum evaluation
* ``verify``        two-route verification suites used by the CLI
"""
from .char_sums import (
    gauss_sum_bruteforce,
    gauss_sum_closed,
    kloosterman_2power_closed,
    kloosterman_bruteforce,
    kloosterman_factored,
    kronecker,
)
from .coefficients import (
    INF,
    build_coefficient_table,
    coeff_a,
    coeff_a_bruteforce,
    coeff_b_bruteforce,
    coeff_b_derived_FE,
    coeff_b_inf,
    coeff_b_zero,
    coeff_c,
    coeff_d,
    cuspidality_residuals,
)
from .config import DEFAULT_EVAL, DEFAULT_PRECISION, EvalConfig, PrecisionConfig, load_config
from .eisenstein import (
    classical_fe_check,
    classical_fe_residual,
    eisenstein_inf_direct,
    eisenstein_inf_fourier,
    eisenstein_zero_direct,
    eisenstein_zero_fourier,
    whittaker_W,
    whittaker_W_alt,
)
from .errors import AccuracyError, DomainError, MetakitError, PoleError, UnavailableError, ZeroDivisorError
from .mpl_group import MetaElement, iwasawa_kan, multiply
from .special_funcs import G0, G1, G_pair, gamma, hurwitz_zeta, kronecker_L, riemann_zeta, zeta2

__version__ = "0.1.0"
