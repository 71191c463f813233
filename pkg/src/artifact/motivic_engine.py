"""Assembly of the auxiliary series, the local and global series and the volume.

The auxiliary series is a sum of pieces P_{k,tau}, one per cone tau of the
k-th refinement selected by :func:`dk_cones`.  Each piece comes from the
lattice points of a lifted cone tau-hat in N x Z (pairs (nu, s) with
phi_k(nu) <= s < phi_{k+1}(nu)), projected to (<nu,e_i1>, ..., <nu,e_ik>, s)
and pushed to Z[L](T) by x^(a, s) -> L^(ks - sum a) T^s.
"""
from dataclasses import dataclass, field
from typing import Optional

from .errors import KernelMeetsCone, NotNormal, PathMismatch, VolumeMismatch
from .genfun import (
    ProjectionSpec,
    genfun_interior,
    genfun_projection,
    parallelepiped_points,
    substitute_monomial,
)
from .lattice_core import dot, lattice_basis, saturation_basis
from .logjac import (
    LogJacobianLadder,
    SemigroupData,
    _is_combination,
    build_semigroup,
    candidate_pole_set,
    curve_multiplicity,
    dk_cones,
    face_restriction,
    log_jacobian_ladder,
    phi_profile,
)
from .polyhedral import Cone, dual_cone, interior_lattice_point, simplicial_subdivision
from .series_ring import LPoly, LaurentRational, MotivicRational, Poly, rational_sum, volume_specialize

L_MINUS_1 = Poly({(1, 0): 1, (0, 0): -1})


@dataclass
class HatCone:
    """The lifted cone tau-hat, its lower boundary and the projection pi."""

    k: int
    tau: Cone
    indices: tuple
    cone: Cone
    lower: Cone
    projection: tuple


@dataclass
class AuxSeriesReport:
    pieces: dict
    total: MotivicRational
    candidate_poles: set
    poles_used: set = field(default_factory=set)


def hat_cone(l: LogJacobianLadder, k: int, tau: Cone) -> HatCone:
    s = l.semigroup
    d = l.d
    nu0 = interior_lattice_point(tau)
    idx = tuple(phi_profile(l, nu0).greedy_indices[:k])
    gens = s.generators
    ek = gens[idx[-1]]
    esum = [sum(gens[i][j] for i in idx) for j in range(d)]
    ineqs = [tuple(f) + (0,) for f in tau.inequalities]
    ineqs.append(tuple(-x for x in ek) + (1,))
    if k < d:
        for w in l.newton[k].vertices:
            ineqs.append(tuple(a - b for a, b in zip(w, esum)) + (-1,))
    cone = Cone.from_inequalities(ineqs, d + 1)
    lower = Cone.from_generators([tuple(r) + (dot(r, ek),) for r in tau.rays], d + 1)
    proj = tuple(tuple(gens[i]) + (0,) for i in idx) + (tuple([0] * d) + (1,),)
    return HatCone(k, tau, idx, cone, lower, proj)


def _zeta_images(k: int) -> list:
    return [(-1, 0)] * k + [(k, 1)]


def p_k_tau(l: LogJacobianLadder, k: int, tau: Cone, budget: Optional[int] = 10**7) -> MotivicRational:
    """(L-1)^k times the images of the interior and lower-boundary generating functions."""
    h = hat_cone(l, k, tau)
    parts = []
    for c in (h.cone, h.lower):
        try:
            spec = ProjectionSpec.create(h.projection, c)
        except KernelMeetsCone as e:
            raise KernelMeetsCone(f"k={k}, tau={list(tau.rays)}: {e}") from None
        g = genfun_projection(spec, budget)
        parts.append(substitute_monomial(g, _zeta_images(k)))
    return rational_sum(parts) * (L_MINUS_1 ** k)


def monomial_curve_series(m: int) -> MotivicRational:
    """(L-1) T^m / ((1 - L T)(1 - T^m))."""
    return MotivicRational(L_MINUS_1 * Poly({(0, m): 1}), [(1, 1, 1), (0, m, 1)])


def p_aux(s: SemigroupData, budget: Optional[int] = 10**7) -> AuxSeriesReport:
    """The auxiliary series P(s) as a sum over k and tau of P_{k,tau}."""
    l = log_jacobian_ladder(s)
    pieces = {}
    for k in range(1, l.d + 1):
        for tau in dk_cones(l, k):
            pieces[(k, tau.rays)] = p_k_tau(l, k, tau, budget)
    total = rational_sum(pieces.values())
    if l.d == 1:
        closed = monomial_curve_series(curve_multiplicity(s))
        if not closed.same_value(total):
            raise PathMismatch(f"monomial curve formula {closed} disagrees with the general path {total}")
    used = {f for p in pieces.values() for f in p.den}
    return AuxSeriesReport(pieces, total, candidate_pole_set(l), used)


def p_geom_local(s: SemigroupData, budget: Optional[int] = 10**7) -> MotivicRational:
    """Local series: sum of auxiliary series of all face restrictions."""
    return rational_sum(ser for _, _, ser in local_pieces(s, budget))


def local_pieces(s: SemigroupData, budget: Optional[int] = 10**7) -> list:
    """(face, restricted semigroup, series) for every face, in face order."""
    out = []
    for theta in s.sigma.faces():
        r, _ = face_restriction(s, theta)
        ser = MotivicRational(1, [(0, 1, 1)]) if r.is_zero else p_aux(r, budget).total
        out.append((theta, r, ser))
    return out


def _laurent_power(base: Poly, k: int) -> LaurentRational:
    p = LPoly({0: 1})
    b = Poly([((e[0],), c) for e, c in base.terms.items()], 1)
    for _ in range(k):
        p = p * b
    return LaurentRational(p)


def volume_direct(s: SemigroupData) -> LaurentRational:
    """(L-1)^d times the sum over cones of Sigma_d inside int(sigma) of the
    interior generating function under x^nu -> L^(-ord_d(nu))."""
    l = log_jacobian_ladder(s)
    d = l.d
    total = LaurentRational(LPoly({}))
    nd = l.newton[d - 1]
    for tau in l.fans[d - 1].cones:
        if tau.dim == 0:
            continue
        nu0 = interior_lattice_point(tau)
        if not s.sigma.in_relative_interior(nu0):
            continue
        w = nd.face_vertices(nu0)[0]
        g = genfun_interior(tau)
        total = total + substitute_monomial(g, [(-x, 0) for x in w])
    return total * _laurent_power(L_MINUS_1, d)


def motivic_volume(s: SemigroupData, budget: Optional[int] = 10**7, both: bool = False):
    """Motivic volume, computed directly and by specializing the local series.

    Raises VolumeMismatch when the two disagree.  With ``both=True`` returns
    the pair (direct, specialized).
    """
    direct = volume_direct(s)
    spec = volume_specialize(p_geom_local(s, budget), s.rank)
    if not direct.same_value(spec):
        raise VolumeMismatch(f"direct volume {direct} differs from specialization {spec}")
    return (direct, spec) if both else direct


def hilbert_basis(c: Cone) -> list:
    """Minimal generators of the lattice points of a pointed cone.

    Candidates are the rays and the points of the half-open parallelepipeds
    [0,1) of a triangulation; an element is kept when no other candidate
    can be subtracted from it inside the cone.
    """
    cands = set(c.rays)
    for cell in simplicial_subdivision(c).maximal:
        for p in parallelepiped_points(cell.rays, closed_top=False):
            if any(p):
                cands.add(p)
    out = []
    for x in cands:
        if not any(h != x and c.contains(tuple(a - b for a, b in zip(x, h))) for h in cands):
            out.append(x)
    return sorted(out)


def is_normal(s: SemigroupData) -> bool:
    """Does the semigroup contain every lattice point of its cone?"""
    return all(_is_combination(h, list(s.generators)) for h in hilbert_basis(s.sigma_dual))


def normal_face_semigroup(s: SemigroupData, theta: Cone) -> SemigroupData:
    """Semigroup of the germ at a point of the orbit of theta.

    Lattice points of the dual of theta in the dual of N cap span(theta),
    times the free semigroup on codim(theta) generators.
    """
    d = s.rank
    c = theta.dim
    gens = []
    if c > 0:
        sat = lattice_basis(saturation_basis(theta.rays, d), d)
        tc = Cone.from_generators([sat.coordinates(r) for r in theta.rays], c)
        gens = [tuple(h) + (0,) * (d - c) for h in hilbert_basis(dual_cone(tc))]
    gens += [tuple(1 if j == i else 0 for j in range(d)) for i in range(c, d)]
    return build_semigroup(gens, d)


def p_geom_global_normal(s: SemigroupData, budget: Optional[int] = 10**7) -> MotivicRational:
    """Global series of a normal toric variety: orbits weighted by (L-1)^codim."""
    if not is_normal(s):
        raise NotNormal("the semigroup is not saturated in its cone")
    parts = []
    for theta in s.sigma.faces():
        codim = s.rank - theta.dim
        parts.append(p_geom_local(normal_face_semigroup(s, theta), budget) * (L_MINUS_1 ** codim))
    return rational_sum(parts)


def motivic_volume_global_normal(s: SemigroupData, budget: Optional[int] = 10**7) -> LaurentRational:
    if not is_normal(s):
        raise NotNormal("the semigroup is not saturated in its cone")
    total = LaurentRational(LPoly({}))
    for theta in s.sigma.faces():
        codim = s.rank - theta.dim
        total = total + motivic_volume(normal_face_semigroup(s, theta), budget) * _laurent_power(L_MINUS_1, codim)
    return total
