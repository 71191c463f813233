import random

import pytest

from artifact.errors import NotNormal
from artifact.genfun import ProjectionSpec
from artifact.logjac import build_semigroup, candidate_pole_set, dk_cones, face_restriction, log_jacobian_ladder
from artifact.motivic_engine import (
    L_MINUS_1,
    hat_cone,
    hilbert_basis,
    is_normal,
    local_pieces,
    monomial_curve_series,
    motivic_volume,
    motivic_volume_global_normal,
    normal_face_semigroup,
    p_aux,
    p_geom_global_normal,
    p_geom_local,
)
from artifact.oracle import oracle_local_coefficients
from artifact.polyhedral import Cone
from artifact.series_ring import LPoly, LaurentRational, MotivicRational, Poly

from brute import S11, dot, random_semigroup

L = Poly({(1, 0): 1})
A1 = [(1, 0), (1, 1), (1, 2)]


def orthant(d):
    return build_semigroup([tuple(1 if i == j else 0 for i in range(d)) for j in range(d)])


def lpow(k):
    p = LPoly({0: 1})
    for _ in range(k):
        p = p * LPoly({1: 1, 0: -1})
    return p


def test_p_aux_monomial_curves():
    assert p_aux(build_semigroup([(2,), (3,)])).total == monomial_curve_series(2)
    assert p_aux(build_semigroup([(3,), (5,)])).total == MotivicRational(L_MINUS_1 * Poly({(0, 3): 1}), [(1, 1), (0, 3)])


def test_p_aux_orthant_coefficients():
    coeffs = p_aux(orthant(2)).total.expand(8)
    for s in range(9):
        want = LPoly({})
        for n1 in range(1, s + 1):
            for n2 in range(1, s + 1):
                want = want + LPoly({2 * s - n1 - n2: 1})
        assert coeffs[s] == want * lpow(2)


def test_p_geom_local_closed_forms():
    for d in (1, 2, 3):
        assert p_geom_local(orthant(d)) == MotivicRational(1, [(d, 1)])
    want = MotivicRational(1, [(0, 1)]) + monomial_curve_series(2)
    assert p_geom_local(build_semigroup([(2,), (3,)])) == want


def test_p_geom_local_s11_face_pieces(s11):
    pieces = {theta.rays: ser for theta, _, ser in local_pieces(s11)}
    assert pieces[((1, 0),)] == monomial_curve_series(1)
    assert pieces[((0, 1),)] == monomial_curve_series(3)
    assert pieces[((0, 1), (1, 0))] == MotivicRational(1, [(0, 1)])
    total = MotivicRational(0)
    for ser in pieces.values():
        total = total + ser
    assert total == p_geom_local(s11)


def test_hat_cones_s11(ladder11):
    for k in (1, 2):
        for tau in dk_cones(ladder11, k):
            h = hat_cone(ladder11, k, tau)
            assert h.cone.is_pointed and h.cone.dim == tau.dim + 1
            ProjectionSpec.create(h.projection, h.cone)
            ProjectionSpec.create(h.projection, h.lower)
    h = hat_cone(ladder11, 1, dk_cones(ladder11, 1)[0])
    assert set(h.cone.rays) == {(1, 2, 3), (5, 1, 6), (1, 1, 3), (5, 2, 12)}


def test_aux_denominators_are_candidates(s11):
    rep = p_aux(s11)
    assert rep.poles_used <= rep.candidate_poles
    # pieces with k < d never carry (1 - L^d T)
    for (k, _), piece in rep.pieces.items():
        if k < s11.rank:
            assert piece.pole_multiplicity((2, 1)) == 0


def test_volume_orthant_and_curve():
    for d in (1, 2, 3):
        assert motivic_volume(orthant(d)) == LaurentRational(LPoly({0: 1}))
    direct, spec = motivic_volume(build_semigroup([(2,), (3,)]), both=True)
    want = LaurentRational(LPoly({-1: 1, -2: -1}), [2])
    assert direct == want and spec == want


def test_is_normal():
    assert is_normal(orthant(2))
    assert not is_normal(build_semigroup([(2,), (3,)]))
    assert not is_normal(build_semigroup(S11))
    assert is_normal(build_semigroup(A1))
    # (1, 0), (1, 2) generate an index-2 lattice and become unimodular once rebased
    assert is_normal(build_semigroup([(1, 0), (1, 2)]))
    assert not is_normal(build_semigroup([(1, 0), (1, 1), (1, 3)]))


def _brute_hilbert(c, bound):
    pts = [x for x in _box(c.ambient_rank, bound) if any(x) and c.contains(x)]
    ps = set(pts)
    return sorted(x for x in pts if not any(y != x and tuple(a - b for a, b in zip(x, y)) in ps for y in pts))


def _box(n, b):
    import itertools

    return itertools.product(range(-b, b + 1), repeat=n)


def test_hilbert_basis_against_brute():
    rng = random.Random(4)
    for _ in range(25):
        gens = [(rng.randint(1, 4), rng.randint(-4, 4)) for _ in range(2)]
        c = Cone.from_generators(gens, 2)
        if c.dim < 2:
            continue
        hb = hilbert_basis(c)
        bound = max(max(abs(x) for x in h) for h in hb)
        assert hb == [h for h in _brute_hilbert(c, bound) if max(abs(x) for x in h) <= bound]


def test_global_normal_orthants():
    assert p_geom_global_normal(orthant(1)) == MotivicRational(Poly({(1, 0): 1}), [(1, 1)])
    assert p_geom_global_normal(orthant(2)) == MotivicRational(Poly({(2, 0): 1}), [(2, 1)])
    with pytest.raises(NotNormal):
        p_geom_global_normal(build_semigroup(S11))


def test_global_normal_a1_matches_local_oracles():
    s = build_semigroup(A1)
    glob = p_geom_global_normal(s).expand(12)
    want = [LPoly({}) for _ in range(13)]
    for theta in s.sigma.faces():
        local = oracle_local_coefficients(normal_face_semigroup(s, theta), 12)
        w = lpow(s.rank - theta.dim)
        want = [a + w * b for a, b in zip(want, local)]
    assert glob == want
    vol = motivic_volume_global_normal(s)
    assert isinstance(vol, LaurentRational)


def test_normal_surfaces_cancel_low_poles():
    rng = random.Random(8)
    done = 0
    while done < 5:
        # lattice points of a random plane cone are normal by construction
        gens = [(1, 0), (rng.randint(0, 4), rng.randint(1, 4))]
        c = Cone.from_generators(gens, 2)
        s = build_semigroup(hilbert_basis(c))
        assert is_normal(s)
        P = p_geom_local(s)
        assert P.pole_multiplicity((0, 1)) == 0 and P.pole_multiplicity((1, 1)) == 0
        assert P.pole_multiplicity((2, 1)) == 1
        done += 1


def test_denominators_within_face_candidates():
    rng = random.Random(21)
    for _ in range(6):
        s = build_semigroup(random_semigroup(rng, 2, 5, 6))
        allowed = set()
        for theta in s.sigma.faces():
            r, _ = face_restriction(s, theta)
            if r.is_zero:
                allowed.add((0, 1))
            else:
                allowed |= candidate_pole_set(log_jacobian_ladder(r))
        P = p_geom_local(s)
        assert set(P.den) <= allowed
        assert P.pole_multiplicity((2, 1)) == 1
