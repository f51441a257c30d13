"""Asymptotic expansions of ``int_0^1 f(u) (1 + q u^n)^(w/n) du`` in powers of ``1/n``.

Coefficients are assembled from exact beta data of ``f`` at ``u = 1`` and
Nielsen polylogarithm values; ``q = -1`` and symmetric ``q = 1`` cases also
come with exact zeta-value forms.
"""
from .appell import AppellFamily, AppellForm, BetaSequence, DerivativeForm, Kind, beta_sequence
from .bigfloat import BigFloat
from .expansion import (ExpansionResult, IntegralSpec, expansion_coefficients, limit_constant,
                        moment_phi, reduce_to_zeta_q_minus1)
from .registry import registry_names, registry_spec
from .symmetry import appell_criterion, solvability_check
from .verify import decay_check, integrate_In, watson_check
from .zetavals import ZetaPolynomial, mzv_height_one, nielsen_S, sigma

__all__ = [
    "AppellFamily", "AppellForm", "BetaSequence", "BigFloat", "DerivativeForm", "ExpansionResult",
    "IntegralSpec", "Kind", "ZetaPolynomial", "appell_criterion", "beta_sequence", "decay_check",
    "expansion_coefficients", "integrate_In", "limit_constant", "moment_phi", "mzv_height_one",
    "nielsen_S", "reduce_to_zeta_q_minus1", "registry_names", "registry_spec", "sigma",
    "solvability_check", "watson_check",
]
__version__ = "0.1.0"
