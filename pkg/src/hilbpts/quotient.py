"""Zero-dimensional quotients S/I: standard monomials, eliminants, radicals,
rational support and local invariants at points."""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm

from .errors import (InvalidArgument, NonRationalSupport, NotMonomial,
                     NotZeroDimensional, PointNotOnScheme, UnsupportedClass)
from .groebner import Ideal, intersect, saturate
from .kernel import nullspace_of_rows, rank_of_rows
from .poly import Polynomial, RingContext, lex_key, mono_div, mono_divides, mono_lcm


@dataclass(frozen=True)
class QuotientBasis:
    ctx: RingContext
    monomials: tuple

    def __len__(self):
        return len(self.monomials)

    def index(self, e):
        return self.monomials.index(e)

    def max_degree(self):
        return max((sum(e) for e in self.monomials), default=0)


@dataclass(frozen=True)
class PrimaryComponent:
    ideal: Ideal
    radical: Ideal


def is_zero_dimensional(I):
    if I.is_zero():
        raise NotZeroDimensional("the zero ideal is not zero-dimensional")
    lms = I.groebner().leading_monomials()
    for i in range(I.ctx.nvars):
        if not any(all(k == 0 for j, k in enumerate(m) if j != i) for m in lms):
            return False
    return True


def _require_zero_dim(I):
    if not is_zero_dimensional(I):
        raise NotZeroDimensional(f"{I} is not zero-dimensional")


def standard_monomials(I):
    _require_zero_dim(I)
    lms = I.groebner().leading_monomials()
    n = I.ctx.nvars
    start = (0,) * n
    if any(mono_divides(m, start) for m in lms):
        return QuotientBasis(I.ctx, ())
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for e in frontier:
            for i in range(n):
                f = e[:i] + (e[i] + 1,) + e[i + 1:]
                if f not in seen and not any(mono_divides(m, f) for m in lms):
                    seen.add(f)
                    nxt.append(f)
        frontier = nxt
    return QuotientBasis(I.ctx, tuple(sorted(seen, key=lex_key)))


def colength(I):
    return len(standard_monomials(I))


class QuotientRing:
    """Linear model of S/I for a zero-dimensional ideal: coordinates in the
    standard-monomial basis and memoized normal forms of monomials."""

    def __init__(self, I):
        self.ideal = I
        self.ctx = I.ctx
        self.gb = I.groebner()
        self.basis = standard_monomials(I)
        self.dim = len(self.basis)
        self._index = {e: k for k, e in enumerate(self.basis.monomials)}
        self._gb_terms = [(g.lm(), [(e, c) for e, c in g.items() if e != g.lm()])
                          for g in self.gb]
        self._memo = {}

    def nf_monomial(self, e):
        """Coordinates of x^e in S/I as a sparse dict index -> coefficient."""
        memo = self._memo
        if e in memo:
            return memo[e]
        stack = [e]
        while stack:
            m = stack[-1]
            if m in memo:
                stack.pop()
                continue
            if m in self._index:
                memo[m] = {self._index[m]: Fraction(1)}
                stack.pop()
                continue
            for lm, tail in self._gb_terms:
                if mono_divides(lm, m):
                    q = mono_div(m, lm)
                    shifted = [(tuple(a + b for a, b in zip(t, q)), c) for t, c in tail]
                    break
            else:  # pragma: no cover - standard monomials are closed under division
                raise AssertionError("monomial neither standard nor reducible")
            missing = [t for t, _ in shifted if t not in memo]
            if missing:
                stack.extend(missing)
                continue
            out = {}
            for t, c in shifted:
                for k, v in memo[t].items():
                    s = out.get(k, 0) - c * v
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
            memo[m] = out
            stack.pop()
        return memo[e]

    def coords(self, f):
        v = [Fraction(0)] * self.dim
        for e, c in f.items():
            for k, x in self.nf_monomial(e).items():
                v[k] += c * x
        return v

    def element(self, coords):
        return Polynomial.from_terms(self.ctx, [(c, self.basis.monomials[k])
                                                for k, c in enumerate(coords) if c])

    def mul_coords(self, f, coords):
        """Coordinates of f * (element with the given coordinates)."""
        v = [Fraction(0)] * self.dim
        for k, a in enumerate(coords):
            if not a:
                continue
            b = self.basis.monomials[k]
            for e, c in f.items():
                prod_e = tuple(x + y for x, y in zip(e, b))
                for j, x in self.nf_monomial(prod_e).items():
                    v[j] += a * c * x
        return v


# -- univariate helpers (coefficient lists, low degree first) ----------------

def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _udivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / b[-1]
        q[shift] = c
        for i, bc in enumerate(b):
            a[i + shift] -= c * bc
    return _trim(q), a


def _ugcd(a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _udivmod(a, b)[1]
    return [c / a[-1] for c in a] if a else a


def _uderiv(p):
    return _trim([i * c for i, c in enumerate(p)][1:])


def squarefree_part(p):
    p = _trim([Fraction(c) for c in p])
    if len(p) <= 1:
        return p
    g = _ugcd(p, _uderiv(p))
    q, _ = _udivmod(p, g)
    return [c / q[-1] for c in q]


def _divisors(n):
    n = abs(n)
    out = []
    k = 1
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            out.append(n // k)
        k += 1
    return sorted(set(out))


def rational_roots(p):
    """Distinct rational roots of a univariate polynomial, ascending."""
    p = _trim([Fraction(c) for c in p])
    if len(p) <= 1:
        return []
    den = lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    roots = set()
    if ints[0] == 0:
        roots.add(Fraction(0))
        k = 0
        while ints[k] == 0:
            k += 1
        ints = ints[k:]
    if len(ints) > 1:
        for num in _divisors(ints[0]):
            for den_ in _divisors(ints[-1]):
                for r in (Fraction(num, den_), Fraction(-num, den_)):
                    if sum(c * r ** i for i, c in enumerate(ints)) == 0:
                        roots.add(r)
    return sorted(roots)


def _univariate(ctx, name, coeffs):
    i = ctx.index(name)
    pairs = []
    for k, c in enumerate(coeffs):
        if c:
            e = [0] * ctx.nvars
            e[i] = k
            pairs.append((c, e))
    return Polynomial.from_terms(ctx, pairs)


def _eliminant_coeffs(Q, name):
    i = Q.ctx.index(name)
    powers = []
    k = 0
    while True:
        e = [0] * Q.ctx.nvars
        e[i] = k
        v = [Fraction(0)] * Q.dim
        for j, x in Q.nf_monomial(tuple(e)).items():
            v[j] = x
        powers.append(v)
        rows = [[powers[c][r] for c in range(k + 1)] for r in range(Q.dim)]
        null = nullspace_of_rows(rows, k + 1) if rows else [tuple([Fraction(1)] * (k + 1))]
        if null:
            vec = null[0]
            lead = vec[k]
            return [c / lead for c in vec]
        k += 1


def eliminant(I, name):
    """Monic generator of I ∩ Q[name]."""
    Q = QuotientRing(I)
    return _univariate(I.ctx, name, _eliminant_coeffs(Q, name))


def radical_zero_dim(I):
    Q = QuotientRing(I)
    extra = []
    for v in I.ctx.variables:
        sf = squarefree_part(_eliminant_coeffs(Q, v))
        extra.append(_univariate(I.ctx, v, sf))
    J = Ideal(list(I.gens) + extra, I.ctx)
    return Ideal(list(J.groebner()), I.ctx)


# -- monomial ideals ----------------------------------------------------------

def monomial_exponents(I):
    exps = []
    for g in I.gens:
        if not g:
            continue
        if not g.is_monomial():
            raise NotMonomial(f"{g} is not a monomial")
        exps.append(g.lm())
    return minimal_monomials(exps)


def minimal_monomials(exps):
    exps = sorted(set(exps), key=lambda e: (sum(e), lex_key(e)))
    out = []
    for e in exps:
        if not any(mono_divides(m, e) for m in out):
            out.append(e)
    return sorted(out, key=lex_key, reverse=True)


def is_monomial_ideal(I):
    return all(not g or g.is_monomial() for g in I.gens)


def _monomial_ideal(ctx, exps):
    return Ideal([ctx.monomial(e) for e in exps], ctx)


def radical_monomial(I):
    exps = monomial_exponents(I)
    return _monomial_ideal(I.ctx, minimal_monomials(tuple(min(k, 1) for k in e) for e in exps))


def _monomial_intersection(a, b):
    return minimal_monomials(mono_lcm(x, y) for x in a for y in b)


def _contained(a, b):
    """Monomial ideal a ⊆ b."""
    return all(any(mono_divides(y, x) for y in b) for x in a)


def _irreducible_pieces(gens):
    for m in gens:
        support = [i for i, k in enumerate(m) if k]
        if len(support) > 1:
            i = support[0]
            power = tuple(m[i] if j == i else 0 for j in range(len(m)))
            rest = tuple(0 if j == i else k for j, k in enumerate(m))
            return (_irreducible_pieces(minimal_monomials(gens + [power]))
                    + _irreducible_pieces(minimal_monomials(gens + [rest])))
    return [gens]


def monomial_primary_decomposition(I):
    ctx = I.ctx
    exps = monomial_exponents(I)
    if not exps:
        zero = Ideal([], ctx)
        return [PrimaryComponent(zero, zero)]
    if any(not any(e) for e in exps):
        return []
    pieces = []
    for p in _irreducible_pieces(list(exps)):
        if p not in pieces:
            pieces.append(p)
    pieces = [p for k, p in enumerate(pieces)
              if not any(_contained(q, p) and (q != p) for j, q in enumerate(pieces) if j != k)]
    groups = {}
    for p in pieces:
        key = tuple(sorted(i for e in p for i, k in enumerate(e) if k))
        groups[key] = _monomial_intersection(groups[key], p) if key in groups else p
    out = []
    for key in sorted(groups):
        rad = [tuple(1 if j == i else 0 for j in range(ctx.nvars)) for i in key]
        out.append(PrimaryComponent(_monomial_ideal(ctx, groups[key]),
                                    _monomial_ideal(ctx, minimal_monomials(rad))))
    return out


def is_primary(I):
    if is_monomial_ideal(I) and not I.is_zero():
        exps = monomial_exponents(I)
        pure = {i for e in exps for i, k in enumerate(e) if k and sum(e) == k}
        used = {i for e in exps for i, k in enumerate(e) if k}
        return used <= pure
    try:
        zero_dim = not I.is_zero() and is_zero_dimensional(I)
    except NotZeroDimensional:
        zero_dim = False
    if not zero_dim:
        raise UnsupportedClass("primarity is decided only for zero-dimensional or monomial ideals")
    return colength(radical_zero_dim(I)) == 1


def radical(I):
    """Radical for the supported classes (monomial or zero-dimensional)."""
    if is_monomial_ideal(I) and not I.is_zero():
        return radical_monomial(I)
    return radical_zero_dim(I)


# -- points ---------------------------------------------------------------------

def _vanishes(I, point):
    return all(not g.evaluate(point) for g in I.groebner())


def support_points(I):
    """Rational points of V(I) with local multiplicities, sorted by coordinates."""
    Q = QuotientRing(I)
    ctx = I.ctx
    coordinate_roots = []
    for v in ctx.variables:
        sf = squarefree_part(_eliminant_coeffs(Q, v))
        roots = rational_roots(sf)
        if len(roots) != len(sf) - 1:
            raise NonRationalSupport(f"eliminant in {v} has non-rational roots")
        coordinate_roots.append(roots)
    points = [p for p in product(*coordinate_roots) if _vanishes(I, p)]
    if len(points) == 1:
        return [(points[0], Q.dim)]
    out = []
    for p in points:
        sep = ctx.one()
        for q in points:
            if q == p:
                continue
            i = next(k for k in range(ctx.nvars) if q[k] != p[k])
            sep = sep * (ctx.gens()[i] - q[i])
        out.append((p, colength(saturate(I, sep))))
    return out


def point_tangent_dim(q, point):
    """dim_k m_p / m_p^2 of S/q at a rational point p lying on V(q)."""
    ctx = q.ctx
    point = tuple(Fraction(c) for c in point)
    if len(point) != ctx.nvars:
        raise InvalidArgument("point dimension does not match the ring")
    gens = [g for g in q.gens if g]
    for g in gens:
        if g.evaluate(point):
            raise PointNotOnScheme(f"{g} does not vanish at {tuple(str(c) for c in point)}")
    rows = [[g.diff(v).evaluate(point) for v in ctx.variables] for g in gens]
    return ctx.nvars - (rank_of_rows(rows, ctx.nvars) if rows else 0)


def maximal_ideal(ctx, point):
    return Ideal([x - Fraction(c) for x, c in zip(ctx.gens(), point)], ctx)


def points_ideal(ctx, points):
    """Radical ideal of finitely many rational points."""
    points = list(points)
    if not points:
        return Ideal([ctx.one()], ctx)
    I = maximal_ideal(ctx, points[0])
    for p in points[1:]:
        I = intersect(I, maximal_ideal(ctx, p))
    return I
