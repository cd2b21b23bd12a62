import random
from fractions import Fraction as F

import pytest

from hilbpts.errors import NonRationalSupport, NotZeroDimensional, PointNotOnScheme
from hilbpts.grammar import format_poly, parse_poly
from hilbpts.groebner import Ideal, ideal_equal, intersect
from hilbpts.poly import RingContext, Substitution, apply_substitution
from hilbpts.quotient import (QuotientRing, colength, eliminant, is_primary,
                              is_zero_dimensional, maximal_ideal,
                              monomial_primary_decomposition, point_tangent_dim,
                              points_ideal, radical, radical_monomial,
                              radical_zero_dim, standard_monomials, support_points)

R1 = RingContext(["x"])
R = RingContext(["x", "y"])
R3 = RingContext(["x", "y", "z"])


def ideal(*texts, ctx=R):
    return Ideal.parse(ctx, *texts)


def m2(ctx):
    xs = ctx.gens()
    return Ideal([a * b for i, a in enumerate(xs) for b in xs[i:]], ctx)


def mons(I):
    return [I.ctx.format_monomial(e) for e in standard_monomials(I).monomials]


def test_zero_dimensionality():
    assert is_zero_dimensional(m2(R))
    assert not is_zero_dimensional(ideal("x"))
    assert is_zero_dimensional(ideal("y - x^2", "x^3"))


def test_colength_examples():
    assert colength(m2(R3)) == 4 and mons(m2(R3)) == ["1", "x", "y", "z"]
    assert colength(ideal("y - x^2", "x^3")) == 3 and mons(ideal("y - x^2", "x^3")) == ["1", "x", "x^2"]
    with pytest.raises(NotZeroDimensional):
        colength(ideal("x"))


def test_quotient_ring_coordinates():
    Q = QuotientRing(ideal("y - x^2", "x^3"))
    f = parse_poly("y*x + 2", R)
    assert Q.element(Q.coords(f)) == parse_poly("x^3 + 2", R) - parse_poly("x^3", R)


def test_eliminants():
    assert format_poly(eliminant(m2(R), "x")) == "x^2"
    assert format_poly(eliminant(ideal("y - x^2", "x^3"), "y")) == "y^2"
    assert format_poly(eliminant(ideal("x - 1", "y"), "x")) == "x - 1"


def test_radical_zero_dim_examples():
    assert ideal_equal(radical_zero_dim(m2(R3)), ideal("x", "y", "z", ctx=R3))
    assert ideal_equal(radical_zero_dim(ideal("y - x^2", "x^3")), ideal("x", "y"))
    assert ideal_equal(radical_zero_dim(Ideal.parse(R1, "(x - 1)^2")), Ideal.parse(R1, "x - 1"))


def test_radical_monomial_examples():
    assert ideal_equal(radical_monomial(ideal("x^2*y")), ideal("x*y"))
    assert ideal_equal(radical_monomial(ideal("x^4")), ideal("x"))
    assert ideal_equal(radical_monomial(m2(R)), ideal("x", "y"))


def _components(I):
    return [[format_poly(g) for g in c.ideal.groebner()] for c in monomial_primary_decomposition(I)]


def test_decomposition_examples():
    assert _components(ideal("x^2*y")) == [["x^2"], ["y"]]
    assert _components(ideal("x*y")) == [["x"], ["y"]]
    assert _components(m2(R)) == [["y^2", "x*y", "x^2"]]


def test_decomposition_recovers_input():
    for gens in (["x^2*y"], ["x^3", "x*y^2"], ["x^2*y*z", "y^3", "x*z^2"]):
        ctx = R3 if any("z" in g for g in gens) else R
        I = Ideal.parse(ctx, *gens)
        comps = monomial_primary_decomposition(I)
        J = comps[0].ideal
        for c in comps[1:]:
            J = intersect(J, c.ideal)
        assert ideal_equal(J, I)
        assert all(is_primary(c.ideal) for c in comps)


def test_is_primary_examples():
    assert is_primary(m2(R))
    assert not is_primary(ideal("x*(x - 1)", "y"))
    assert not is_primary(ideal("x^2*y"))


def test_support_examples():
    assert support_points(ideal("x*(x - 1)", "y")) == [((0, 0), 1), ((1, 0), 1)]
    assert support_points(m2(R3)) == [((0, 0, 0), 4)]
    with pytest.raises(NonRationalSupport):
        support_points(Ideal.parse(R1, "x^2 - 2"))


def test_point_tangent_dim_examples():
    assert point_tangent_dim(ideal("x^2*y"), (0, 0)) == 2
    assert point_tangent_dim(ideal("x^2"), (0, 0)) == 2
    assert point_tangent_dim(ideal("x"), (0, 0)) == 1
    assert point_tangent_dim(ideal("x - 1", "y"), (1, 0)) == 0
    with pytest.raises(PointNotOnScheme):
        point_tangent_dim(ideal("x - 1", "y"), (0, 0))


# -- invariants on small random inputs -----------------------------------------------

def _random_points(rng, ctx, n):
    pts = set()
    while len(pts) < n:
        pts.add(tuple(F(rng.randint(-3, 3), rng.choice([1, 2])) for _ in range(ctx.nvars)))
    return sorted(pts)


@pytest.mark.parametrize("seed", range(8))
def test_colength_invariant_under_linear_change(seed):
    rng = random.Random(seed)
    I = ideal("y - x^2", "x^3") if seed % 2 else ideal("x^2", "y^2", "x*y - x")
    while True:
        a, b, c, d = (rng.randint(-2, 2) for _ in range(4))
        if a * d - b * c:
            break
    x, y = R.gens()
    sub = Substitution(R, [x * a + y * b, x * c + y * d])
    J = Ideal([apply_substitution(g, sub) for g in I.gens], R)
    assert colength(J) == colength(I)


@pytest.mark.parametrize("seed", range(8))
def test_support_multiplicities_sum_to_colength(seed):
    rng = random.Random(100 + seed)
    pts = _random_points(rng, R, rng.randint(1, 3))
    I = points_ideal(R, pts)
    # thicken the first point in the x direction
    p0 = pts[0]
    x, y = R.gens()
    fat = Ideal([(x - p0[0]) ** 2, y - p0[1]], R)
    J = intersect(I, fat)
    sp = support_points(J)
    assert [p for p, _ in sp] == pts
    assert sum(m for _, m in sp) == colength(J) == len(pts) + 1


def test_radical_idempotent_and_contains():
    for I in (ideal("y - x^2", "x^3"), m2(R3), ideal("x^2 - 1", "y^2")):
        r = radical(I)
        assert ideal_equal(radical(r), r)
        assert r.contains_ideal(I)
        assert colength(r) <= colength(I)


def test_maximal_ideal_is_smooth_point():
    for p in ((0, 0), (F(1, 2), -3)):
        assert point_tangent_dim(maximal_ideal(R, p), p) == 0


def test_square_of_reduction_identity():
    # (m^2 + sqrt q) = (m + sqrt q)^2 + sqrt q for q supported at the origin
    for q in (ideal("y - x^2", "x^3"), m2(R3), ideal("x^2", "y^3", ctx=R)):
        ctx = q.ctx
        m = Ideal(list(ctx.gens()), ctx)
        r = radical(q)
        lhs = m * m + r
        s = m + r
        assert ideal_equal(lhs, s * s + r)
