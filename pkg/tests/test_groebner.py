import random

import pytest
import sympy

from hilbpts.errors import InvalidArgument
from hilbpts.grammar import format_poly, parse_poly
from hilbpts.groebner import (Ideal, buchberger, eliminate, ideal_equal, intersect,
                              lift, normal_form, reduce_basis, reduced_groebner,
                              saturate, syzygy_basis)
from hilbpts.poly import Polynomial, RingContext

R = RingContext(["x", "y"])
R3 = RingContext(["x", "y", "z"])


def p(text, ctx=R):
    return parse_poly(text, ctx)


def ideal(*texts, ctx=R):
    return Ideal.parse(ctx, *texts)


def gb_strings(I):
    return [format_poly(g) for g in I.groebner()]


# -- normal forms ----------------------------------------------------------------

def test_normal_form_examples():
    m2 = ideal("x^2", "x*y", "y^2").groebner()
    assert normal_form(p("x^2 + x*y"), m2).is_zero()
    assert normal_form(p("x"), m2) == p("x")
    G = reduced_groebner([p("y - x^2"), p("x^3")])
    assert normal_form(p("y^2"), G).is_zero()


# -- bases -------------------------------------------------------------------------

def test_monomial_ideal_is_its_own_basis():
    assert gb_strings(ideal("x^2", "x*y", "y^2")) == ["y^2", "x*y", "x^2"]


def test_basis_already_groebner():
    G = buchberger([p("y - x^2"), p("x^3")])
    assert reduce_basis(G).elements == (p("y - x^2"), p("x^3"))


def test_buchberger_finds_x_cubed():
    G = buchberger([p("y^2"), p("x*y"), p("y - x^2")])
    assert normal_form(p("x^3"), G).is_zero()
    assert gb_strings(ideal("y^2", "x*y", "y - x^2")) == ["y - x^2", "x^3"]


def test_redundant_generators_removed():
    assert gb_strings(ideal("y", "y^2", "x*y")) == ["y"]


def test_pure_x_power_is_last():
    G = ideal("x^2", "x*y", "y^2").groebner()
    assert G.elements[-1] == p("x^2")


def test_empty_input_rejected():
    with pytest.raises(InvalidArgument):
        buchberger([])


# -- syzygies ----------------------------------------------------------------------

def _has_multiple(syz, target):
    for s in syz:
        ratios = set()
        for a, b in zip(s, target):
            if a.is_zero() != b.is_zero():
                break
            if not a.is_zero():
                q = a.lc() / b.lc()
                if a != b.scale(q):
                    break
                ratios.add(q)
        else:
            if len(ratios) == 1:
                return True
    return False


def test_principal_ideal_has_no_syzygies():
    assert syzygy_basis(ideal("x^3").groebner()) == []


def test_two_monomials():
    G = ideal("x^2", "x*y").groebner()
    order = [format_poly(g) for g in G]
    target = [p("y"), p("-x")] if order == ["x^2", "x*y"] else [p("-x"), p("y")]
    syz = syzygy_basis(G)
    assert _has_multiple(syz, target) or _has_multiple(syz, [-t for t in target])


def test_square_ideal_relations():
    G = ideal("y^2", "x*y", "x^2").groebner()
    syz = syzygy_basis(G)
    assert _has_multiple(syz, [p("x"), p("-y"), p("0")])
    assert _has_multiple(syz, [p("0"), p("x"), p("-y")])


def test_syzygies_recombine_to_zero():
    for gens in (["y^2", "x*y", "x^2"], ["y - x^2", "x^3"], ["x^2 - y", "x*y - 1", "y^3 - x"]):
        G = ideal(*gens).groebner()
        for s in syzygy_basis(G):
            assert s.combine(G.elements).is_zero()


# -- ideal operations --------------------------------------------------------------

def test_eliminate_examples():
    assert eliminate(ideal("y - x^2", "x^3"), ["x"]) == [p("x^3", RingContext(["x"]))]
    assert eliminate(ideal("x^2", "x*y", "y^2"), ["x"]) == [p("x^2", RingContext(["x"]))]
    assert eliminate(ideal("x - 1", "y"), ["x"]) == [p("x - 1", RingContext(["x"]))]


def test_eliminate_needs_prefix():
    with pytest.raises(InvalidArgument):
        eliminate(ideal("x", "y"), ["y"])


def test_intersect_examples():
    assert gb_strings(intersect(ideal("x^2"), ideal("y"))) == ["x^2*y"]
    assert gb_strings(intersect(ideal("x"), ideal("y"))) == ["x*y"]
    assert ideal_equal(intersect(ideal("x^2", "y"), ideal("x", "y^2")), ideal("x^2", "x*y", "y^2"))


def test_saturate_examples():
    assert gb_strings(saturate(ideal("x*y"), p("y"))) == ["x"]
    I = ideal("x^2 - y", "x*y^2")
    assert ideal_equal(saturate(I, p("1")), I)
    # x^2 lies in (x^2, x*y), so the saturation by x is the unit ideal
    assert saturate(ideal("x^2", "x*y"), p("x")).is_unit()
    with pytest.raises(InvalidArgument):
        saturate(I, p("0"))


def test_ideal_equal_examples():
    I = ideal("y^2", "x*y", "y - x^2")
    assert ideal_equal(I, ideal("y - x^2", "x^3"))
    assert not ideal_equal(ideal("x"), ideal("x^2"))
    assert ideal_equal(I, I)


def test_lift_cofactors():
    gens = [p("y^2"), p("x*y"), p("y - x^2")]
    f = p("x^3")
    cof = lift(f, gens)
    total = R.zero()
    for c, g in zip(cof, gens):
        total = total + c * g
    assert total == f


# -- sympy oracle ------------------------------------------------------------------

def _to_sympy(f, syms):
    return sympy.sympify(format_poly(f).replace("^", "**"), locals=syms)


def _sympy_reduced(gens, ctx):
    syms = {v: sympy.Symbol(v) for v in ctx.variables}
    order = [syms[v] for v in reversed(ctx.variables)]
    G = sympy.groebner([_to_sympy(g, syms) for g in gens], *order, order="lex")
    out = set()
    for g in G.exprs:
        P = sympy.Poly(g, *order)
        out.add(sympy.expand(g / P.LC(order="lex")))
    return out, syms


def _random_poly(rng, ctx, nterms, maxdeg):
    pairs = []
    for _ in range(nterms):
        e = [0] * ctx.nvars
        for _ in range(rng.randint(0, maxdeg)):
            e[rng.randrange(ctx.nvars)] += 1
        pairs.append((rng.randint(-3, 3), tuple(e)))
    return Polynomial.from_terms(ctx, pairs)


@pytest.mark.parametrize("seed", range(25))
def test_reduced_basis_matches_sympy(seed):
    rng = random.Random(seed)
    ctx = R if seed % 2 else R3
    gens = [_random_poly(rng, ctx, rng.randint(1, 3), 2) for _ in range(rng.randint(2, 3))]
    gens = [g for g in gens if not g.is_zero()] or [ctx.var("x")]
    ours = Ideal(gens, ctx).groebner()
    expected, syms = _sympy_reduced(gens, ctx)
    assert {sympy.expand(_to_sympy(g, syms)) for g in ours} == expected
    for g in gens:
        assert normal_form(g, ours).is_zero()
