"""Generating functions of lattice points in open cones and their projections.

``genfun_interior`` is the classical half-open parallelepiped construction
over a triangulation that introduces no new rays.  ``genfun_projection``
handles the image of the interior lattice points of a cone under a lattice
map whose kernel meets the cone only at 0.  The image is split along a
triangulation of the image cone; on each open cell it is a module over the
free monoid generated by images of edge generators, and a finite set of
module generators is produced from the source side (see
:func:`_cell_projection`).  No periodicity is guessed.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil, floor, gcd
from typing import Optional, Sequence

from .errors import DenominatorCollapse, KernelMeetsCone, NotStrictlyConvex, PeriodBudgetExceeded
from .lattice_core import (
    dot,
    hermite_basis,
    lattice_basis,
    primitive_rational,
    primitive_vector,
    rank,
    saturation_basis,
    solve_rational,
)
from .polyhedral import Cone, interior_lattice_point, simplicial_subdivision
from .series_ring import LaurentRational, MotivicRational, Poly, laurent_from_rational_function


def _vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _vscale(c, v):
    return tuple(c * a for a in v)


@dataclass(frozen=True)
class MultiGenFun:
    """sum(coeff * x^exp) / prod(1 - x^v) over Z^ambient_rank."""

    numerator: tuple
    denominator: tuple
    ambient_rank: int

    def __post_init__(self):
        for v in self.denominator:
            if not any(v):
                raise ValueError("denominator exponent 0 is not allowed")
        if self.denominator and not Cone.from_generators(self.denominator, self.ambient_rank).is_pointed:
            raise ValueError("denominator exponents must lie in a strictly convex cone")

    @classmethod
    def build(cls, terms: dict, denominator, ambient_rank: int) -> "MultiGenFun":
        num = tuple(sorted((e, c) for e, c in terms.items() if c))
        return cls(num, tuple(denominator), ambient_rank)

    def expand(self, functional, bound) -> dict:
        """Series coefficients at exponents e with <functional, e> <= bound.

        ``functional`` must be positive on every denominator exponent.
        """
        w = lambda e: dot(functional, e)
        for v in self.denominator:
            if w(v) <= 0:
                raise ValueError("functional must be positive on the denominator exponents")
        series = {}
        for e, c in self.numerator:
            if w(e) <= bound:
                series[e] = series.get(e, 0) + c
        for v in self.denominator:
            out = dict(series)
            for e, c in series.items():
                f = _vadd(e, v)
                while w(f) <= bound:
                    out[f] = out.get(f, 0) + c
                    f = _vadd(f, v)
            series = {e: c for e, c in out.items() if c}
        return series

    def multiply_denominator(self, extra) -> "MultiGenFun":
        """Same function with the extra factors (1 - x^v) added on both sides."""
        terms = dict(self.numerator)
        for v in extra:
            new = dict(terms)
            for e, c in terms.items():
                f = _vadd(e, v)
                new[f] = new.get(f, 0) - c
            terms = {e: c for e, c in new.items() if c}
        return MultiGenFun.build(terms, tuple(self.denominator) + tuple(extra), self.ambient_rank)


def _add_into(acc: dict, terms: dict):
    for e, c in terms.items():
        v = acc.get(e, 0) + c
        if v:
            acc[e] = v
        else:
            acc.pop(e, None)


def _times_factors(terms: dict, factors) -> dict:
    for v in factors:
        new = dict(terms)
        for e, c in terms.items():
            f = _vadd(e, v)
            new[f] = new.get(f, 0) - c
        terms = {e: c for e, c in new.items() if c}
    return terms


def parallelepiped_points(gens: Sequence[Sequence[int]], closed_top: bool = True) -> list:
    """Lattice points of {sum l_i g_i : 0 < l_i <= 1} for independent g_i.

    With ``closed_top=False`` the box is 0 <= l_i < 1 instead.
    """
    gens = [tuple(g) for g in gens]
    if not gens:
        return [()]
    n = len(gens[0])
    sat = lattice_basis(saturation_basis(gens, n), n)
    G = [sat.coordinates(g) for g in gens]
    H, piv = hermite_basis(G, len(G))
    diag = [H[i][piv[i]] for i in range(len(H))]
    out = []
    for x in product(*[range(h) for h in diag]):
        lam = solve_rational(G, x)
        lam = [l - ceil(l) + 1 for l in lam] if closed_top else [l - floor(l) for l in lam]
        pt = [Fraction(0)] * n
        for l, g in zip(lam, gens):
            pt = [a + l * b for a, b in zip(pt, g)]
        out.append(tuple(int(a) for a in pt))
    return sorted(out)


def _span_coordinates(c: Cone):
    """Re-express a cone in a basis of the saturated lattice of its span."""
    n = c.ambient_rank
    sat = lattice_basis(saturation_basis(c.rays, n), n)
    coords = [sat.coordinates(r) for r in c.rays]
    return sat, Cone.from_generators(coords, sat.rank)


def genfun_interior(c: Cone, lattice_rank: Optional[int] = None) -> MultiGenFun:
    """Rational form of the sum of x^a over lattice points a of the relative interior of c."""
    if not c.is_pointed:
        raise NotStrictlyConvex("cone is not strictly convex")
    n = c.ambient_rank if lattice_rank is None else lattice_rank
    if c.dim == 0:
        return MultiGenFun.build({(0,) * n: 1}, (), n)
    sat, cc = _span_coordinates(c)
    fan = simplicial_subdivision(cc)
    acc = {}
    allrays = list(cc.rays)
    for cell in fan.cones:
        if cell.dim == 0 or not cc.in_relative_interior(interior_lattice_point(cell)):
            continue
        terms = {}
        for p in parallelepiped_points(cell.rays):
            terms[p] = terms.get(p, 0) + 1
        missing = [r for r in allrays if r not in cell.rays]
        _add_into(acc, _times_factors(terms, missing))
    num = {sat.embed(e): v for e, v in acc.items()}
    den = [sat.embed(r) for r in allrays]
    return MultiGenFun.build(num, den, n)


@dataclass(frozen=True)
class ProjectionSpec:
    """A lattice map (rows of an integer matrix) applied to a source cone."""

    matrix: tuple
    source_cone: Cone
    kernel_ok: bool = True

    @classmethod
    def create(cls, matrix, source_cone: Cone) -> "ProjectionSpec":
        matrix = tuple(tuple(r) for r in matrix)
        ker = Cone.from_inequalities(source_cone.inequalities, source_cone.ambient_rank, equations=matrix)
        if ker.dim > 0:
            raise KernelMeetsCone(f"the kernel of the projection meets the cone along {ker.rays or ker.lineality}")
        return cls(matrix, source_cone, True)

    def apply(self, x):
        return tuple(dot(r, x) for r in self.matrix)


def _lcm_den(vals) -> int:
    m = 1
    for v in vals:
        q = Fraction(v).denominator
        m = m * q // gcd(m, q)
    return m


def _cell_projection(theta_bar: Cone, tau: Cone, pi, W, budget):
    """Image of the interior lattice points of pi^-1(theta_bar) meet tau.

    Returns numerator terms over the factors (1 - x^w), w in W.  The image
    is the disjoint union over parallelepiped classes p of p + W.U_p with
    U_p an upward closed subset of N^q.  Module generators come from the
    source: the relative interior lattice points of theta are generated
    over its rays by parallelepiped points of a triangulation, and a ray
    whose image has coordinates beta in the basis W needs only multiples
    below the common denominator of beta.
    """
    m = tau.ambient_rank
    pulled = [tuple(sum(h[i] * pi[i][j] for i in range(len(pi))) for j in range(m)) for h in theta_bar.inequalities]
    theta = Cone.from_inequalities(tau.inequalities + pulled, m)
    img = lambda x: tuple(dot(r, x) for r in pi)
    gens = set()
    for cell in simplicial_subdivision(theta).cones:
        if cell.dim == 0 or not theta.in_relative_interior(interior_lattice_point(cell)):
            continue
        gens.update(parallelepiped_points(cell.rays))
    shifts = {tuple([0] * len(pi))}
    for r in theta.rays:
        u = img(r)
        beta = solve_rational(W, u)
        if beta is None or min(beta) < 0:
            raise AssertionError("edge image outside the image cell")
        D = _lcm_den(beta)
        if D > 1:
            shifts = {_vadd(s, _vscale(c, u)) for s in shifts for c in range(D)}
        if budget is not None and len(shifts) * len(gens) > budget:
            raise PeriodBudgetExceeded(f"{len(shifts) * len(gens)} module generator candidates exceed the budget {budget}")
    classes = {}
    q = len(W)
    for g in gens:
        base = img(g)
        for s in shifts:
            b = _vadd(base, s)
            lam = solve_rational(W, b)
            nvec = tuple(ceil(l) - 1 for l in lam)
            p = tuple(bi - sum(ni * w[k] for ni, w in zip(nvec, W)) for k, bi in enumerate(b))
            classes.setdefault(p, set()).add(nvec)
    terms = {}
    for p, pts in classes.items():
        mins = [a for a in pts if not any(b != a and all(x <= y for x, y in zip(b, a)) for b in pts)]
        top = [max(a[i] for a in mins) + 1 for i in range(q)]

        def member(x):
            return all(v >= 0 for v in x) and any(all(xi >= gi for xi, gi in zip(x, g)) for g in mins)

        for x in product(*[range(t + 1) for t in top]):
            coeff = 0
            for eps in product((0, 1), repeat=q):
                y = tuple(a - e for a, e in zip(x, eps))
                if member(y):
                    coeff += -1 if sum(eps) % 2 else 1
            if coeff:
                e = p
                for xi, w in zip(x, W):
                    if xi:
                        e = _vadd(e, _vscale(xi, w))
                terms[e] = terms.get(e, 0) + coeff
    return {e: c for e, c in terms.items() if c}


def genfun_projection(p: ProjectionSpec, budget: Optional[int] = 10**7) -> MultiGenFun:
    """Rational form of the sum of x^b over b in pi(relint(tau) meet N).

    The denominator consists of factors (1 - x^pi(nu_rho)) for edges rho of
    tau, one per edge of the image cone.
    """
    if not p.kernel_ok:
        raise KernelMeetsCone("projection spec failed the kernel condition")
    tau = p.source_cone
    r = len(p.matrix)
    if tau.dim == 0:
        return MultiGenFun.build({(0,) * r: 1}, (), r)
    sat, tc = _span_coordinates(tau)
    m = tc.ambient_rank
    cols = [p.apply(b) for b in sat.basis_vectors]
    pi = tuple(tuple(cols[j][i] for j in range(m)) for i in range(r))
    img = lambda x: tuple(dot(row, x) for row in pi)
    if rank(cols) == m:
        # injective on the span: push the interior generating function forward
        g = genfun_interior(tc)
        terms = {}
        for e, c in g.numerator:
            f = img(e)
            terms[f] = terms.get(f, 0) + c
        return MultiGenFun.build(terms, [img(v) for v in g.denominator], r)
    images = [img(v) for v in tc.rays]
    tbar = Cone.from_generators(images, r)
    # one denominator vector per edge of the image cone: the shortest edge image on it
    W_of = {}
    for ub in tbar.rays:
        best = None
        for v, u in zip(tc.rays, images):
            if any(u) and primitive_vector(u) == ub:
                k = max(abs(x) for x in u)
                if best is None or k < best[0]:
                    best = (k, u)
        W_of[ub] = best[1]
    allW = [W_of[ub] for ub in tbar.rays]
    acc = {}
    for cell in simplicial_subdivision(tbar).cones:
        if cell.dim == 0 or not tbar.in_relative_interior(interior_lattice_point(cell)):
            continue
        W = [W_of[ub] for ub in cell.rays]
        terms = _cell_projection(cell, tc, pi, W, budget)
        missing = [w for w in allW if w not in W]
        _add_into(acc, _times_factors(terms, missing))
    return MultiGenFun.build(acc, allW, r)


def edge_classification(p: ProjectionSpec) -> list:
    """Classify edges of the image cone by the dimension of their fibre.

    Edges whose preimage in the cone is a single ray form class 'A'; the
    others form class 'B'.  For class 'B' edges the fibre polytope Q(u) over
    the primitive edge vector u yields delta(u), the largest lattice length
    from the vertex centroid to a vertex, and the scaled vector t*u with
    t = floor(1/delta) + 1, beyond which the shifted open cone lies in the
    image when fibres are one-dimensional.
    """
    tau = p.source_cone
    r = len(p.matrix)
    m = tau.ambient_rank
    tbar = Cone.from_generators([p.apply(v) for v in tau.rays], r)
    out = []
    for ub in tbar.rays:
        face = Cone.from_inequalities(
            tau.inequalities,
            m,
            equations=[tuple(ub[i] * p.matrix[j][k] - ub[j] * p.matrix[i][k] for k in range(m)) for i in range(r) for j in range(r) if i < j],
        )
        # keep only the part mapping to the positive side of the edge
        face = Cone.from_generators([v for v in face.rays if dot(ub, p.apply(v)) > 0], m)
        info = {"edge": ub, "fiber_dim": face.dim, "kind": "A" if face.dim == 1 else "B"}
        if face.dim > 1:
            # vertices of Q(u) = {x in tau : pi x = u} via the homogenized cone
            lifted_ineqs = [tuple(f) + (0,) for f in tau.inequalities] + [tuple([0] * m) + (1,)]
            eqs = [tuple(p.matrix[i]) + (-ub[i],) for i in range(r)]
            hom = Cone.from_inequalities(lifted_ineqs, m + 1, equations=eqs)
            verts = [tuple(Fraction(x, v[-1]) for x in v[:-1]) for v in hom.rays if v[-1] > 0]
            cen = tuple(sum(v[i] for v in verts) / len(verts) for i in range(m))
            delta = Fraction(0)
            for v in verts:
                diff = tuple(a - b for a, b in zip(v, cen))
                if any(diff):
                    c = primitive_rational(diff)
                    i = next(i for i in range(m) if c[i])
                    delta = max(delta, diff[i] / c[i])
            info["delta"] = delta
            t = floor(1 / delta) + 1 if delta else None
            info["scaled_edge"] = _vscale(t, ub) if t else None
        out.append(info)
    return out


def substitute_monomial(g: MultiGenFun, images):
    """Apply the ring map x_i -> L^{l_i} T^{t_i} to a generating function.

    ``images`` maps coordinate index to (l_exp, t_exp).  Returns a
    MotivicRational when every denominator image has a positive T power and
    a LaurentRational when no T appears at all.
    """
    if isinstance(images, dict):
        images = [images[i] for i in range(g.ambient_rank)]
    im = lambda e: (sum(x * a for x, (a, _) in zip(e, images)), sum(x * b for x, (_, b) in zip(e, images)))
    dens = [im(v) for v in g.denominator]
    for v, d in zip(g.denominator, dens):
        if d == (0, 0):
            raise DenominatorCollapse(f"denominator factor for {v} maps to 1 - 1")
    num_terms = {}
    for e, c in g.numerator:
        f = im(e)
        num_terms[f] = num_terms.get(f, 0) + c
    if all(b >= 1 for _, b in dens):
        return MotivicRational(Poly(num_terms), [(a, b, 1) for a, b in dens])
    if all(b == 0 for _, b in dens) and all(t == 0 for (_, t) in num_terms):
        num = Poly([((l,), c) for (l, _), c in num_terms.items()], 1)
        return laurent_from_rational_function(num, [a for a, _ in dens])
    raise ValueError("mixed T-free and T-carrying denominator factors")
