"""Motivic Poincare series and volumes of affine toric varieties.

Typical use::

    from artifact import build_semigroup, p_geom_local
    s = build_semigroup([(3, 0), (0, 6), (5, 0), (1, 1), (2, 1), (1, 4)])
    print(p_geom_local(s).expand(5))
"""
from .logjac import build_semigroup, candidate_pole_set, log_jacobian_ladder
from .motivic_engine import is_normal, motivic_volume, p_aux, p_geom_global_normal, p_geom_local
from .oracle import compare, oracle_local_coefficients

__all__ = [
    "build_semigroup",
    "candidate_pole_set",
    "log_jacobian_ladder",
    "is_normal",
    "motivic_volume",
    "p_aux",
    "p_geom_global_normal",
    "p_geom_local",
    "compare",
    "oracle_local_coefficients",
]
