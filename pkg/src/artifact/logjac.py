"""Semigroups, logarithmic jacobian ideals and the phi/Psi combinatorics.

For a semigroup with minimal generators e_1..e_n of rank d, the ideal J_k
is generated by the sums of k linearly independent generators.  Its
support function ord_k(nu) = min <nu, J_k> is computed greedily: sort the
generators by <nu, e_i> and pick a maximal independent prefix.
"""
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from .errors import EmptySemigroup, NotAFace, NotStrictlyConvex, OutsideSupport
from .lattice_core import dot, lattice_basis, rank, rank_and_independence
from .polyhedral import (
    Cone,
    Fan,
    NewtonData,
    Polytope,
    common_refinement,
    dual_cone,
    has_lattice_point,
    interior_lattice_point,
    newton_polyhedron,
    support_value,
)


@dataclass(frozen=True, eq=False)
class SemigroupData:
    """Minimal generators of a strictly convex semigroup generating Z^d."""

    rank: int
    generators: tuple
    sigma_dual: Cone
    sigma: Cone
    input_generators: tuple = ()

    @classmethod
    def zero(cls) -> "SemigroupData":
        """Marker for the zero semigroup (restriction to the face sigma)."""
        z = Cone((), (), (), (), 0)
        return cls(0, (), z, z, ())

    @property
    def is_zero(self) -> bool:
        return self.rank == 0

    def __repr__(self):
        return f"SemigroupData(rank={self.rank}, generators={list(self.generators)})"


def _is_combination(target, others) -> bool:
    """Is target a nonnegative integer combination of others?"""
    if not others:
        return False
    n = len(others)
    d = len(target)
    eqs = [(tuple(o[i] for o in others), target[i]) for i in range(d)]
    ineqs = [(tuple(1 if j == i else 0 for j in range(n)), 0) for i in range(n)]
    return has_lattice_point(Polytope(eqs, ineqs, n))


def _check_strictly_convex(vectors, d):
    if not Cone.from_generators(vectors, d).is_pointed:
        raise NotStrictlyConvex("the generators span a cone containing a line")


def minimalize_generators(raw: Sequence[Sequence[int]]) -> list:
    """Unique minimal generating set of the semigroup generated by ``raw``.

    Order of first appearance is preserved.
    """
    seen = []
    for v in raw:
        v = tuple(v)
        if v not in seen:
            seen.append(v)
    if any(not any(v) for v in seen):
        raise ValueError("the zero vector is not allowed as a generator")
    d = len(seen[0])
    _check_strictly_convex(seen, d)
    cur = list(seen)
    for v in seen:
        others = [w for w in cur if w != v]
        if _is_combination(v, others):
            cur = others
    return cur


def build_semigroup(raw: Sequence[Sequence[int]], rank_: Optional[int] = None) -> SemigroupData:
    """Validate, minimalize and rebase the generators to the lattice they span."""
    vecs = [tuple(v) for v in raw]
    if rank_ is None:
        rank_ = len(vecs[0]) if vecs else 0
    for v in vecs:
        if len(v) != rank_:
            raise ValueError(f"generator {v} does not have length {rank_}")
    vecs = [v for v in vecs if any(v)]
    if not vecs or rank_ == 0:
        raise EmptySemigroup("the semigroup has rank 0")
    gens = minimalize_generators(vecs)
    lat = lattice_basis(gens, rank_)
    d = lat.rank
    new = tuple(lat.coordinates(g) for g in gens)
    sd = Cone.from_generators(new, d)
    return SemigroupData(d, new, sd, dual_cone(sd), tuple(gens))


def curve_multiplicity(s: SemigroupData) -> int:
    """Multiplicity of a rank-one semigroup: its smallest positive generator."""
    assert s.rank == 1
    return min(g[0] for g in s.generators)


@dataclass
class PhiProfile:
    nu: tuple
    ord_values: list
    phi: list
    psi: list
    greedy_indices: list

    def phi_k(self, k: int):
        """phi_k with the conventions phi_0 = 0 and phi_{d+1} = None (infinity)."""
        if k == 0:
            return 0
        if k > len(self.phi):
            return None
        return self.phi[k - 1]


@dataclass
class LogJacobianLadder:
    semigroup: SemigroupData
    ideals: list
    newton: list
    fans: list
    refinements: list
    _dk: dict = field(default_factory=dict)

    @property
    def d(self) -> int:
        return self.semigroup.rank


def log_jacobian_ideal(gens, k: int) -> list:
    """Sums of k linearly independent generators (deduplicated, sorted)."""
    out = set()
    for S in combinations(range(len(gens)), k):
        vs = [gens[i] for i in S]
        if rank(vs) == k:
            out.add(tuple(sum(c) for c in zip(*vs)))
    return sorted(out)


def log_jacobian_ladder(s: SemigroupData) -> LogJacobianLadder:
    d = s.rank
    ideals, newton, fans, refs = [], [], [], []
    for k in range(1, d + 1):
        J = log_jacobian_ideal(s.generators, k)
        nd = newton_polyhedron(J, s.sigma_dual)
        ideals.append(J)
        newton.append(nd)
        fans.append(nd.dual_fan)
        refs.append(nd.dual_fan if k == 1 else common_refinement([refs[-1], nd.dual_fan]))
    return LogJacobianLadder(s, ideals, newton, fans, refs)


def greedy_indices(gens, nu) -> list:
    """Indices i_1, i_2, ... chosen greedily by pairing with nu (ties: smallest index)."""
    d = rank(gens)
    order = sorted(range(len(gens)), key=lambda i: (dot(nu, gens[i]), i))
    chosen = []
    for i in order:
        if rank_and_independence([gens[j] for j in chosen] + [gens[i]])[1]:
            chosen.append(i)
            if len(chosen) == d:
                break
    return chosen


def phi_profile(l: LogJacobianLadder, nu, check: bool = True) -> PhiProfile:
    """ord/phi/Psi values at nu via the greedy rule, checked against Newton data."""
    s = l.semigroup
    nu = tuple(nu)
    if not s.sigma.contains(nu):
        raise OutsideSupport(f"{nu} is not in sigma")
    idx = greedy_indices(s.generators, nu)
    vals = [dot(nu, s.generators[i]) for i in idx]
    ords = []
    acc = 0
    for v in vals:
        acc += v
        ords.append(acc)
    if check:
        for k, o in enumerate(ords):
            assert o == support_value(l.newton[k], nu), "greedy ord disagrees with the Newton polyhedron"
    psi = [0] + [(k - 1) * ords[k - 1] - k * ords[k - 2] for k in range(2, len(ords) + 1)]
    return PhiProfile(nu, ords, vals, psi, idx)


def candidate_pole_set(l: LogJacobianLadder, rays_of: str = "union") -> set:
    """The candidate pole pairs (a, b) for factors (1 - L^a T^b).

    With ``rays_of="union"`` the rays are those of the fans Sigma_1..Sigma_k;
    ``rays_of="refinement"`` uses the rays of their common refinement (these
    differ only when refining creates new rays, which needs rank >= 3).
    """
    d = l.d
    s = l.semigroup
    out = {(d, 1)}
    for k in range(1, d + 1):
        if rays_of == "union":
            rays = {r for f in l.fans[:k] for r in f.rays}
        else:
            rays = set(l.refinements[k - 1].rays)
        for r in sorted(rays):
            if k < d and not s.sigma.in_relative_interior(r):
                continue
            p = phi_profile(l, r)
            out.add((p.psi[k - 1], p.phi[k - 1]))
    return out


def dk_cones(l: LogJacobianLadder, k: int) -> list:
    """Cones tau of the k-th refinement contributing to the auxiliary series.

    tau qualifies when the face of N(J_k) selected by tau has all vertices in
    the interior of sigma-dual, its relative interior lies in int(sigma),
    and (for k < d) phi_k < phi_{k+1} at an interior lattice point.
    """
    if k in l._dk:
        return l._dk[k]
    s = l.semigroup
    d = l.d
    out = []
    for tau in l.refinements[k - 1].cones:
        if tau.dim == 0:
            continue
        nu0 = interior_lattice_point(tau)
        if not s.sigma.in_relative_interior(nu0):
            continue
        face = l.newton[k - 1].face_vertices(nu0)
        if not all(s.sigma_dual.in_relative_interior(p) for p in face):
            continue
        if k < d:
            p = phi_profile(l, nu0)
            if not p.phi[k - 1] < p.phi[k]:
                continue
        out.append(tau)
    l._dk[k] = out
    return out


def face_restriction(s: SemigroupData, theta: Cone):
    """Restriction of the semigroup to theta-perp, rebased to its own lattice.

    Returns ``(restricted, index)`` where index is the index of the lattice
    generated by the selected generators in its saturation.  For theta =
    sigma the zero-semigroup marker is returned.
    """
    faces = {f.key for f in s.sigma.faces()}
    if theta.key not in faces:
        raise NotAFace(f"{theta} is not a face of sigma")
    if theta.dim == s.rank:
        return SemigroupData.zero(), 1
    sel = [g for g in s.generators if all(dot(r, g) == 0 for r in theta.rays)]
    index = lattice_basis(sel, s.rank).index
    if theta.dim == 0:
        return s, index
    return build_semigroup(sel, s.rank), index
