"""Brute-force series coefficients from explicit class enumeration.

For every k and every cone tau selected by :func:`dk_cones`, lattice points
nu of the relative interior of tau are enumerated directly.  The ord values
are recomputed as plain minima over the generators of J_k (no greedy rule,
no Newton data).  Each pair (nu, s) with phi_k(nu) <= s < phi_{k+1}(nu)
gives the class (k, tau, phi_1..phi_k, s).  A class contributes
(L-1)^k L^(ks - ord_k) to the coefficient of T^s and is counted once, no
matter how many nu realize it.
"""
from dataclasses import dataclass, field
from typing import Optional

from .errors import BudgetExceeded, UnboundedPolytope
from .lattice_core import dot
from .logjac import SemigroupData, dk_cones, face_restriction, log_jacobian_ideal, log_jacobian_ladder
from .polyhedral import cone_lattice_points, interior_lattice_point
from .series_ring import LPoly, Poly


def _ord(J, nu):
    return min(dot(nu, p) for p in J)


def oracle_classes(s: SemigroupData, order: int, budget: Optional[int] = 10**7) -> dict:
    """Realized classes mapped to their first lexicographic witness nu."""
    l = log_jacobian_ladder(s)
    d = l.d
    J = [log_jacobian_ideal(s.generators, k) for k in range(1, d + 1)]
    classes = {}
    steps = 0
    for k in range(1, d + 1):
        for tau in dk_cones(l, k):
            for r in tau.rays:
                if _ord(J[k - 1], r) <= 0:
                    raise UnboundedPolytope(f"ord_{k} vanishes on the ray {r} of {list(tau.rays)}")
            nu0 = interior_lattice_point(tau)
            m0 = _ord(J[k - 1], nu0)
            w = next(p for p in J[k - 1] if dot(nu0, p) == m0)
            pts = cone_lattice_points(tau, w, k * order, relative_interior=True, budget=budget)
            steps += len(pts)
            if budget is not None and steps > budget:
                raise BudgetExceeded(f"more than {budget} witnesses for k={k}, tau={list(tau.rays)}, s <= {order}")
            for nu in pts:
                ords = [_ord(J[j], nu) for j in range(min(k + 1, d))]
                phi = [ords[0]] + [ords[j] - ords[j - 1] for j in range(1, len(ords))]
                top = order if k == d else min(order, phi[k] - 1)
                for sv in range(phi[k - 1], top + 1):
                    key = (k, tau.rays, tuple(phi[:k]), sv)
                    if key not in classes or nu < classes[key]:
                        classes[key] = nu
    return classes


def _class_value(k: int, phis, sv: int) -> Poly:
    p = LPoly({k * sv - sum(phis): 1})
    base = LPoly({1: 1, 0: -1})
    for _ in range(k):
        p = p * base
    return p


def oracle_aux_coefficients(s: SemigroupData, order: int, budget: Optional[int] = 10**7) -> list:
    """Coefficients of T^0..T^order of the auxiliary series."""
    coeffs = [LPoly({}) for _ in range(order + 1)]
    for (k, _, phis, sv) in sorted(oracle_classes(s, order, budget)):
        coeffs[sv] = coeffs[sv] + _class_value(k, phis, sv)
    return coeffs


def oracle_local_coefficients(s: SemigroupData, order: int, budget: Optional[int] = 10**7) -> list:
    """Coefficients of the local series: face restrictions plus the constant jet."""
    coeffs = [LPoly({0: 1}) for _ in range(order + 1)]
    for theta in s.sigma.faces():
        r, _ = face_restriction(s, theta)
        if r.is_zero:
            continue
        for i, c in enumerate(oracle_aux_coefficients(r, order, budget)):
            coeffs[i] = coeffs[i] + c
    return coeffs


@dataclass
class CompareReport:
    order: int
    engine: list
    oracle: list
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    @property
    def first_discrepancy(self):
        if not self.mismatches:
            return None
        i = self.mismatches[0]
        return i, self.engine[i], self.oracle[i]


def compare(s: SemigroupData, order: int, budget: Optional[int] = 10**7) -> CompareReport:
    """Engine expansion against the oracle, coefficient by coefficient."""
    from .motivic_engine import p_geom_local

    eng = p_geom_local(s, budget).expand(order)
    orc = oracle_local_coefficients(s, order, budget)
    bad = [i for i in range(order + 1) if eng[i] != orc[i]]
    return CompareReport(order, eng, orc, bad)
