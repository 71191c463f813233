"""Rational polyhedral geometry: cones, fans, Newton polyhedra, polytopes.

Cones carry both a generator and an inequality description.  Conversions
go through :func:`_dual_generators`, which enumerates tight sets of
generators (exact, fine at the sizes handled here: rank <= 5, a few dozen
rays).
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Optional, Sequence

from .errors import (
    BudgetExceeded,
    OutsideSupport,
    PointOutsideDualCone,
    SupportMismatch,
    UnboundedPolytope,
    ZeroCone,
)
from .lattice_core import (
    dot,
    integer_kernel,
    primitive_vector,
    rank,
    solve_integer,
    solve_rational,
)


def _dual_generators(gens, n):
    """Generators of {a : <a, g> >= 0 for all g in gens}.

    Returns ``(rays, lineality)``: primitive extreme rays of the pointed part
    (taken inside span(gens)) and a basis of the lineality space span(gens)^perp.
    """
    G = sorted({primitive_vector(g) for g in gens if any(g)})
    lin = integer_kernel(G, n) if G else [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    w = n - len(lin)
    if w == 0:
        return (), tuple(lin)
    rays = set()
    for S in combinations(G, w - 1):
        K = integer_kernel(list(S) + list(lin), n)
        if len(K) != 1:
            continue
        a = K[0]
        vals = [dot(a, g) for g in G]
        if all(v >= 0 for v in vals):
            rays.add(primitive_vector(a))
        elif all(v <= 0 for v in vals):
            rays.add(primitive_vector([-x for x in a]))
    return tuple(sorted(rays)), tuple(lin)


class Cone:
    """A rational polyhedral cone in Z^n.

    Attributes:
        rays: primitive extreme rays (pointed part).
        lineality: lattice basis of the lineality space.
        facets: primitive facet normals, pairing >= 0 on the cone.
        equations: lattice basis of span(cone)^perp.
    """

    __slots__ = ("rays", "lineality", "facets", "equations", "ambient_rank", "_faces")

    def __init__(self, rays, lineality, facets, equations, ambient_rank):
        self.rays = tuple(rays)
        self.lineality = tuple(lineality)
        self.facets = tuple(facets)
        self.equations = tuple(equations)
        self.ambient_rank = ambient_rank
        self._faces = None

    @classmethod
    def from_generators(cls, gens, ambient_rank: int) -> "Cone":
        gens = [tuple(g) for g in gens]
        facets, eqs = _dual_generators(gens, ambient_rank)
        H = list(facets) + list(eqs) + [tuple(-x for x in e) for e in eqs]
        rays, lin = _dual_generators(H, ambient_rank)
        return cls(rays, lin, facets, eqs, ambient_rank)

    @classmethod
    def from_inequalities(cls, ineqs, ambient_rank: int, equations=()) -> "Cone":
        """The cone {x : <h, x> >= 0 for h in ineqs, <e, x> = 0 for e in equations}."""
        H = [tuple(h) for h in ineqs] + [tuple(e) for e in equations] + [tuple(-x for x in e) for e in equations]
        rays, lin = _dual_generators(H, ambient_rank)
        G = list(rays) + list(lin) + [tuple(-x for x in v) for v in lin]
        facets, eqs = _dual_generators(G, ambient_rank)
        return cls(rays, lin, facets, eqs, ambient_rank)

    @classmethod
    def orthant(cls, n: int) -> "Cone":
        return cls.from_generators([tuple(1 if i == j else 0 for i in range(n)) for j in range(n)], n)

    @classmethod
    def zero(cls, n: int) -> "Cone":
        return cls.from_generators([], n)

    # representations named as in the data model
    @property
    def ray_generators(self) -> list:
        return list(self.rays) + list(self.lineality) + [tuple(-x for x in v) for v in self.lineality]

    @property
    def inequalities(self) -> list:
        return list(self.facets) + list(self.equations) + [tuple(-x for x in e) for e in self.equations]

    @property
    def dim(self) -> int:
        return self.ambient_rank - len(self.equations)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def key(self):
        return (self.rays, self.lineality)

    def __eq__(self, other):
        return isinstance(other, Cone) and self.key == other.key and self.ambient_rank == other.ambient_rank

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        if self.lineality:
            return f"Cone(rays={list(self.rays)}, lineality={list(self.lineality)})"
        return f"Cone({list(self.rays)})"

    def contains(self, x) -> bool:
        return all(dot(e, x) == 0 for e in self.equations) and all(dot(f, x) >= 0 for f in self.facets)

    def in_relative_interior(self, x) -> bool:
        return all(dot(e, x) == 0 for e in self.equations) and all(dot(f, x) > 0 for f in self.facets)

    def intersect(self, other: "Cone") -> "Cone":
        return Cone.from_inequalities(self.inequalities + other.inequalities, self.ambient_rank)

    def faces(self) -> list:
        """All faces of a pointed cone, from {0} up to the cone itself."""
        if self._faces is None:
            self._faces = face_lattice(self)
        return self._faces


def dual_cone(c: Cone) -> Cone:
    """{w : <w, u> >= 0 for all u in c}, with both descriptions."""
    return Cone(
        rays=c.facets,
        lineality=c.equations,
        facets=c.rays,
        equations=c.lineality,
        ambient_rank=c.ambient_rank,
    )


def face_lattice(c: Cone) -> list:
    """Faces of a strictly convex cone, sorted by dimension then rays."""
    n = len(c.rays)
    tight = []
    for f in c.facets:
        tight.append(frozenset(i for i, r in enumerate(c.rays) if dot(f, r) == 0))
    found = {frozenset(range(n))}
    frontier = [frozenset(range(n))]
    while frontier:
        nxt = []
        for S in frontier:
            for T in tight:
                U = S & T
                if U not in found:
                    found.add(U)
                    nxt.append(U)
        frontier = nxt
    out = []
    for S in found:
        if len(S) == n:
            out.append(c)
        else:
            out.append(Cone.from_generators([c.rays[i] for i in sorted(S)], c.ambient_rank))
    out.sort(key=lambda x: (x.dim, x.rays))
    return out


def face_order(faces: Sequence[Cone]) -> list:
    """Pairs (i, j) with faces[i] a proper face of faces[j]."""
    sets = [set(f.rays) for f in faces]
    return [(i, j) for i in range(len(faces)) for j in range(len(faces)) if i != j and sets[i] < sets[j]]


def interior_lattice_point(c: Cone):
    """Sum of the primitive ray generators of a pointed cone."""
    if c.dim == 0:
        raise ZeroCone("the zero cone has no interior lattice point")
    out = [0] * c.ambient_rank
    for r in c.rays:
        out = [a + b for a, b in zip(out, r)]
    return tuple(out)


class Fan:
    """A fan given by its maximal cones; all faces are generated on demand."""

    def __init__(self, maximal: Sequence[Cone], support: Cone):
        self.support = support
        self.maximal = sorted(set(maximal), key=lambda c: (c.dim, c.rays))
        self._cones = None

    @property
    def cones(self) -> list:
        if self._cones is None:
            seen = {}
            for m in self.maximal:
                for f in m.faces():
                    seen.setdefault(f.key, f)
            self._cones = sorted(seen.values(), key=lambda c: (c.dim, c.rays))
        return self._cones

    @property
    def rays(self) -> list:
        return sorted({r for m in self.maximal for r in m.rays})

    def locate(self, x) -> Cone:
        """The cone whose relative interior contains x."""
        for c in self.cones:
            if c.in_relative_interior(x):
                return c
        raise OutsideSupport(f"{tuple(x)} is not in the support of the fan")

    def __repr__(self):
        return f"Fan({[list(c.rays) for c in self.maximal]})"


def trivial_fan(c: Cone) -> Fan:
    return Fan([c], c)


@dataclass
class NewtonData:
    """Newton polyhedron conv(points + recession) and its dual fan."""

    points: list
    recession: Cone
    vertices: list
    dual_fan: Fan
    sigma: Cone
    normal_cones: dict = field(default_factory=dict)

    def face_vertices(self, nu) -> list:
        """Vertices of the face of the polyhedron where <nu, .> is minimal."""
        m = min(dot(nu, p) for p in self.vertices)
        return [p for p in self.vertices if dot(nu, p) == m]


def newton_polyhedron(points, recession: Cone) -> NewtonData:
    """Vertices and dual fan of conv(points + recession).

    The dual fan lives on sigma, the dual of the recession cone.  The normal
    cone of a point p is {nu in sigma : <nu, q - p> >= 0 for all points q};
    p is a vertex exactly when that cone is full dimensional.
    """
    pts = sorted({tuple(p) for p in points})
    for p in pts:
        if not recession.contains(p):
            raise PointOutsideDualCone(f"{p} is not in the recession cone")
    sigma = dual_cone(recession)
    n = recession.ambient_rank
    base = sigma.inequalities
    vertices = []
    cones = {}
    for p in pts:
        diffs = [tuple(a - b for a, b in zip(q, p)) for q in pts if q != p]
        nc = Cone.from_inequalities(base + diffs, n)
        if nc.dim == sigma.dim:
            vertices.append(p)
            cones[p] = nc
    fan = Fan(list(cones.values()), sigma)
    return NewtonData(pts, recession, vertices, fan, sigma, cones)


def support_value(nd: NewtonData, nu):
    """ord(nu) = min over the generating points of <nu, p>."""
    if not nd.sigma.contains(nu):
        raise OutsideSupport(f"{tuple(nu)} is outside the support")
    return min(dot(nu, p) for p in nd.points)


def common_refinement(fans: Sequence[Fan]) -> Fan:
    """Fan of all intersections of cones of the inputs.

    The attribute ``new_rays`` lists rays of the result that are not rays of
    any input; it is empty in rank 2 and can be nonempty in higher rank.
    """
    fans = list(fans)
    support = fans[0].support
    for f in fans[1:]:
        if f.support.key != support.key:
            raise SupportMismatch("fans have different supports")
    d = support.dim
    current = list(fans[0].maximal)
    for f in fans[1:]:
        nxt = {}
        for a in current:
            for b in f.maximal:
                c = a.intersect(b)
                if c.dim == d:
                    nxt.setdefault(c.key, c)
        current = list(nxt.values())
    out = Fan(current, support)
    union = {r for f in fans for r in f.rays}
    out.new_rays = [r for r in out.rays if r not in union]
    return out


def simplicial_subdivision(c: Cone) -> Fan:
    """Placing triangulation of a pointed cone using only its own rays.

    Rays are placed in lexicographic order; each new ray is coned over the
    boundary facets of the current triangulation that it sees.
    """
    rays = sorted(c.rays)
    if not rays:
        return Fan([c], c)
    cells = [(0,)]
    cur = 1
    for j in range(1, len(rays)):
        v = rays[j]
        if rank([rays[i] for i in range(j + 1)]) > cur:
            cells = [cell + (j,) for cell in cells]
            cur += 1
            continue
        count = {}
        for cell in cells:
            for u in cell:
                F = tuple(x for x in cell if x != u)
                count[F] = count.get(F, 0) + 1
        new = []
        for cell in cells:
            alpha = solve_rational([rays[i] for i in cell], v)
            for pos, u in enumerate(cell):
                F = tuple(x for x in cell if x != u)
                if count[F] == 1 and alpha[pos] < 0:
                    new.append(tuple(sorted(F + (j,))))
        cells = cells + new
    maximal = [Cone.from_generators([rays[i] for i in cell], c.ambient_rank) for cell in cells]
    return Fan(maximal, c)


@dataclass
class Polytope:
    """{x in R^n : <a, x> = b for equalities, <a, x> >= b for inequalities}."""

    equalities: list
    inequalities: list
    ambient_rank: int


def _fm_eliminate(cons):
    """Fourier-Motzkin elimination of the last variable.

    Constraints are (c, r) meaning c . t >= r, with integer data.
    """
    keep, pos, neg = [], [], []
    for c, r in cons:
        if c[-1] > 0:
            pos.append((c, r))
        elif c[-1] < 0:
            neg.append((c, r))
        else:
            keep.append((c[:-1], r))
    for cp, rp in pos:
        for cn, rn in neg:
            a, b = -cn[-1], cp[-1]
            keep.append((tuple(a * x + b * y for x, y in zip(cp[:-1], cn[:-1])), a * rp + b * rn))
    return _normalize_cons(keep)


def _normalize_cons(cons):
    out = set()
    for c, r in cons:
        g = 0
        for x in c:
            g = gcd(g, x)
        if g == 0:
            if r > 0:
                return None  # infeasible: 0 >= r > 0
            continue
        out.add((tuple(x // g for x in c), -((-r) // g)))
    return sorted(out)


def _bounds(cons, prefix):
    """Integer interval for the next variable given fixed earlier ones."""
    lo, hi = None, None
    j = len(prefix)
    for c, r in cons:
        rest = r - sum(a * b for a, b in zip(c[:j], prefix))
        a = c[j]
        if a > 0:
            v = -((-rest) // a)
            lo = v if lo is None or v > lo else lo
        elif a < 0:
            # a*t >= rest with a < 0  <=>  t <= floor(rest / a)
            v = rest // a
            hi = v if hi is None or v < hi else hi
        elif rest > 0:
            return 1, 0
    return lo, hi


def polytope_lattice_points(p: Polytope, budget: Optional[int] = None, first_only: bool = False) -> list:
    """All integer points of a bounded polytope, in lexicographic order.

    Equalities are solved over the integers first, then the remaining
    inequality system is enumerated by recursive slicing along
    Fourier-Motzkin projections.
    """
    n = p.ambient_rank
    sol = solve_integer([a for a, _ in p.equalities], [b for _, b in p.equalities], n)
    if sol is None:
        return []
    x0, K = sol
    k = len(K)
    cons = []
    for a, b in p.inequalities:
        cons.append((tuple(dot(a, v) for v in K), b - dot(a, x0)))
    if k:
        rec = Cone.from_inequalities([c for c, _ in cons], k) if cons else None
        if rec is None or rec.dim > 0:
            raise UnboundedPolytope("the inequality system has a nonzero recession cone")
    cons = _normalize_cons(cons) if cons else []
    if cons is None:
        return []
    if k == 0:
        return [x0] if all(r <= 0 for _, r in cons) else []
    levels = [None] * (k + 1)
    levels[k] = cons
    for j in range(k, 0, -1):
        levels[j - 1] = _fm_eliminate(levels[j]) if levels[j] is not None else None
        if levels[j - 1] is None:
            return []
    for _, r in levels[0]:
        if r > 0:
            return []
    out = []
    steps = [0]

    def rec_(prefix):
        j = len(prefix)
        if j == k:
            x = list(x0)
            for t, v in zip(prefix, K):
                if t:
                    x = [a + t * b for a, b in zip(x, v)]
            out.append(tuple(x))
            return first_only
        lo, hi = _bounds(levels[j + 1], prefix)
        if lo is None or hi is None:
            raise UnboundedPolytope("unbounded slice")
        for t in range(lo, hi + 1):
            steps[0] += 1
            if budget is not None and steps[0] > budget:
                raise BudgetExceeded(f"lattice point enumeration exceeded {budget} steps")
            if rec_(prefix + [t]):
                return True
        return False

    rec_([])
    if not first_only:
        out.sort()
    return out


def has_lattice_point(p: Polytope, budget: Optional[int] = None) -> bool:
    return bool(polytope_lattice_points(p, budget=budget, first_only=True))


def cone_lattice_points(c: Cone, functional, bound: int, relative_interior: bool = False, budget=None) -> list:
    """Lattice points x of c with <functional, x> <= bound (functional positive on c)."""
    ineqs = []
    for f in c.facets:
        ineqs.append((f, 1 if relative_interior else 0))
    ineqs.append((tuple(-x for x in functional), -bound))
    eqs = [(e, 0) for e in c.equations]
    return polytope_lattice_points(Polytope(eqs, ineqs, c.ambient_rank), budget=budget)
