"""k-normal elements of finite field extensions: classification, counting,
existence criteria and exhaustive census."""
from .census import CensusReport
from .classify import KNormalityReport, apply_module_action, g_alpha, ord_poly
from .counting import count_k_normal_formula, existence_verdict, lower_bound, saygi_count
from .normal_basis import build_normal_basis, mult_table
from .polyring import Factorization, factor_xm_minus_1, phi_q
from .primes import factor_u64
from .tower import GF, Tower, build_tower

__all__ = [
    "CensusReport",
    "Factorization",
    "GF",
    "KNormalityReport",
    "Tower",
    "apply_module_action",
    "build_normal_basis",
    "build_tower",
    "count_k_normal_formula",
    "existence_verdict",
    "factor_u64",
    "factor_xm_minus_1",
    "g_alpha",
    "lower_bound",
    "mult_table",
    "ord_poly",
    "phi_q",
    "saygi_count",
]
