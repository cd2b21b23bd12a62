"""Lex Groebner bases over Q and the ideal operations built on them."""
from fractions import Fraction

from .errors import ContextMismatch, InvalidArgument
from .poly import (Polynomial, RingContext, lex_key, mono_div, mono_divides,
                   mono_lcm, mono_mul)


def fresh_name(ctx, stem):
    taken = set(ctx.variables) | set(ctx.parameters)
    if stem not in taken:
        return stem
    k = 1
    while f"{stem}_{k}" in taken:
        k += 1
    return f"{stem}_{k}"


class GroebnerBasis:
    """Groebner basis of an ideal; ``reduced`` bases are monic, inter-reduced
    and sorted by descending leading monomial (a pure power of the least
    variable, if present, comes last)."""

    __slots__ = ("elements", "ctx", "reduced")

    def __init__(self, elements, ctx, reduced=False):
        self.elements = tuple(elements)
        self.ctx = ctx
        self.reduced = reduced

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def leading_monomials(self):
        return [g.lm() for g in self.elements]

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self.ctx == other.ctx and self.elements == other.elements

    def __hash__(self):
        return hash((self.ctx, self.elements))

    def __repr__(self):
        return "GroebnerBasis([" + ", ".join(str(g) for g in self.elements) + "])"


class SyzygyVector(tuple):
    """Coefficients (a_1, ..., a_s) with sum a_i g_i = 0 for a fixed generator list."""

    def combine(self, gens):
        total = gens[0].ctx.zero()
        for a, g in zip(self, gens):
            if a:
                total = total + a * g
        return total


def _check_plain(polys):
    ctx = None
    for f in polys:
        if ctx is None:
            ctx = f.ctx
        elif f.ctx != ctx:
            raise ContextMismatch(f"{ctx!r} vs {f.ctx!r}")
    if ctx is not None and ctx.parameters:
        raise InvalidArgument("specialize parameters before computing a Groebner basis")
    return ctx


def _divide(f, basis, quotients=False):
    """Multivariate division; returns ``(remainder, quotient_terms)``.

    ``quotient_terms[i]`` is a dict exps -> coefficient when requested.
    """
    lms = [g.lm() for g in basis]
    lcs = [g.lc() for g in basis]
    gterms = [list(g.items()) for g in basis]
    p = dict(f._terms)
    rem = {}
    quots = [dict() for _ in basis] if quotients else None
    while p:
        m = max(p, key=lex_key)
        c = p[m]
        for i, lm in enumerate(lms):
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                qc = c / lcs[i]
                for e, gc in gterms[i]:
                    ne = mono_mul(e, q)
                    v = p.get(ne, 0) - qc * gc
                    if v:
                        p[ne] = v
                    else:
                        p.pop(ne, None)
                if quotients:
                    d = quots[i]
                    v = d.get(q, 0) + qc
                    if v:
                        d[q] = v
                    else:
                        d.pop(q, None)
                break
        else:
            rem[m] = c
            del p[m]
    return Polynomial(f.ctx, rem), quots


def normal_form(f, G):
    if isinstance(G, GroebnerBasis):
        elements = G.elements
        ctx = G.ctx
    else:
        elements = tuple(G)
        ctx = elements[0].ctx if elements else f.ctx
    if f.ctx != ctx:
        raise ContextMismatch(f"{f.ctx!r} vs {ctx!r}")
    if not elements:
        return f
    return _divide(f, elements)[0]


def division(f, G):
    """``(quotients, remainder)`` with f = sum q_i g_i + remainder."""
    elements = G.elements if isinstance(G, GroebnerBasis) else tuple(G)
    if any(g.ctx != f.ctx for g in elements):
        raise ContextMismatch("division across rings")
    rem, quots = _divide(f, elements, quotients=True)
    return [Polynomial(f.ctx, q) for q in quots], rem


def spoly(f, g):
    m = mono_lcm(f.lm(), g.lm())
    return (f.mul_term(1 / f.lc(), mono_div(m, f.lm()))
            - g.mul_term(1 / g.lc(), mono_div(m, g.lm())))


def _combine(ctx, reps, coeffs):
    """sum coeffs[k] * reps[k] for vectors of polynomials."""
    out = None
    for c, rep in zip(coeffs, reps):
        if not c:
            continue
        scaled = [c * r for r in rep]
        out = scaled if out is None else [a + b for a, b in zip(out, scaled)]
    return out


def _buchberger(gens, track=False):
    ctx = _check_plain(gens)
    n_in = len(gens)
    basis = []
    reps = []
    for k, f in enumerate(gens):
        if not f:
            continue
        lc = f.lc()
        basis.append(f.monic())
        if track:
            rep = [ctx.zero()] * n_in
            rep[k] = Polynomial.constant(ctx, 1 / lc)
            reps.append(rep)
    pending = set()
    sort_key = {}

    def add_pair(i, j):
        pending.add((i, j))
        sort_key[(i, j)] = (lex_key(mono_lcm(basis[i].lm(), basis[j].lm())), (i, j))

    for j in range(len(basis)):
        for i in range(j):
            add_pair(i, j)
    while pending:
        i, j = min(pending, key=sort_key.__getitem__)
        pending.discard((i, j))
        li, lj = basis[i].lm(), basis[j].lm()
        if not any(a and b for a, b in zip(li, lj)):
            continue
        m = mono_lcm(li, lj)
        chain = False
        for k in range(len(basis)):
            if k in (i, j) or not mono_divides(basis[k].lm(), m):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                chain = True
                break
        if chain:
            continue
        s = spoly(basis[i], basis[j])
        if track:
            quots, r = division(s, basis)
        else:
            r = _divide(s, basis)[0]
        if not r:
            continue
        lc = r.lc()
        new = len(basis)
        basis.append(r.monic())
        if track:
            ui = Polynomial(ctx, {mono_div(m, li): Fraction(1)})
            uj = Polynomial(ctx, {mono_div(m, lj): Fraction(1)})
            coeffs = [ui, -uj] + [-q for q in quots]
            rep = _combine(ctx, [reps[i], reps[j]] + reps, coeffs) or [ctx.zero()] * n_in
            reps.append([x * (1 / lc) for x in rep])
        for k in range(new):
            add_pair(k, new)
    return basis, reps


def buchberger(gens):
    """Groebner basis of the ideal generated by ``gens`` (not yet reduced)."""
    gens = list(gens)
    if not gens:
        raise InvalidArgument("buchberger needs at least one generator")
    ctx = _check_plain(gens)
    basis, _ = _buchberger(gens)
    return GroebnerBasis(basis, ctx)


def _reduce(basis, reps=None):
    order = sorted(range(len(basis)), key=lambda k: lex_key(basis[k].lm()), reverse=True)
    keep = []
    for pos, k in enumerate(order):
        lm = basis[k].lm()
        # drop if divisible by another leading monomial (equal ones: keep the last in order)
        if any(mono_divides(basis[o].lm(), lm) and (basis[o].lm() != lm or q > pos)
               for q, o in enumerate(order) if o != k):
            continue
        keep.append(k)
    minimal = [basis[k] for k in keep]
    min_reps = [reps[k] for k in keep] if reps is not None else None
    out = []
    out_reps = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        lm = g.lm()
        head = Polynomial(g.ctx, {lm: g.lc()})
        tail = g - head
        if others:
            if reps is not None:
                quots, tail = division(tail, others)
            else:
                tail = _divide(tail, others)[0]
        r = (head + tail)
        inv = 1 / r.lc()
        out.append(r.monic())
        if reps is not None:
            other_reps = min_reps[:idx] + min_reps[idx + 1:]
            rep = list(min_reps[idx])
            if others:
                sub = _combine(g.ctx, other_reps, quots)
                if sub is not None:
                    rep = [a - b for a, b in zip(rep, sub)]
            out_reps.append([x * inv for x in rep])
    return out, out_reps


def reduce_basis(G):
    elements, _ = _reduce(list(G.elements))
    return GroebnerBasis(elements, G.ctx, reduced=True)


def reduced_groebner(gens):
    gens = [g for g in gens if g]
    if not gens:
        return None
    basis, _ = _buchberger(gens)
    return reduce_basis(GroebnerBasis(basis, gens[0].ctx))


def groebner_with_lift(gens):
    """Reduced basis plus, for each element, cofactors in terms of ``gens``."""
    gens = list(gens)
    basis, reps = _buchberger(gens, track=True)
    elements, out_reps = _reduce(basis, reps)
    return GroebnerBasis(elements, gens[0].ctx, reduced=True), out_reps


def syzygy_basis(G):
    """Generators of the syzygy module of G from S-pair division transcripts."""
    elements = list(G.elements)
    ctx = G.ctx
    s = len(elements)
    out = []
    for j in range(s):
        for i in range(j):
            gi, gj = elements[i], elements[j]
            m = mono_lcm(gi.lm(), gj.lm())
            ci = Polynomial(ctx, {mono_div(m, gi.lm()): 1 / gi.lc()})
            cj = Polynomial(ctx, {mono_div(m, gj.lm()): 1 / gj.lc()})
            quots, rem = division(ci * gi - cj * gj, elements)
            if rem:
                raise InvalidArgument("syzygy_basis needs a Groebner basis")
            vec = [-q for q in quots]
            vec[i] = vec[i] + ci
            vec[j] = vec[j] - cj
            if any(vec):
                out.append(SyzygyVector(vec))
    return out


class Ideal:
    """Ideal given by generators, with a cached reduced lex Groebner basis."""

    __slots__ = ("ctx", "gens", "_gb")

    def __init__(self, gens, ctx=None):
        gens = tuple(gens)
        if ctx is None:
            if not gens:
                raise InvalidArgument("an empty generator list needs an explicit ring")
            ctx = gens[0].ctx
        for g in gens:
            if g.ctx != ctx:
                raise ContextMismatch(f"{g.ctx!r} vs {ctx!r}")
        self.ctx = ctx
        self.gens = gens
        self._gb = None

    @classmethod
    def parse(cls, ctx, *texts):
        from .grammar import parse_poly
        return cls([parse_poly(t, ctx) for t in texts], ctx)

    def groebner(self):
        if self._gb is None:
            if self.ctx.parameters:
                raise InvalidArgument("specialize parameters before computing a Groebner basis")
            gb = reduced_groebner(self.gens)
            self._gb = gb if gb is not None else GroebnerBasis((), self.ctx, reduced=True)
        return self._gb

    def is_zero(self):
        return not any(self.gens)

    def is_unit(self):
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def contains(self, f):
        return not normal_form(f, self.groebner())

    def reduce(self, f):
        return normal_form(f, self.groebner())

    def contains_ideal(self, other):
        return all(self.contains(g) for g in other.gens)

    def __add__(self, other):
        if other.ctx != self.ctx:
            raise ContextMismatch("ideal sum across rings")
        return Ideal(self.gens + other.gens, self.ctx)

    def __mul__(self, other):
        if other.ctx != self.ctx:
            raise ContextMismatch("ideal product across rings")
        return Ideal([f * g for f in self.gens for g in other.gens if f and g], self.ctx)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    def __hash__(self):
        return hash(self.groebner())

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.gens) + ")"

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def embed(self, target):
        return Ideal([g.embed(target) for g in self.gens], target)


def ideal_equal(I, J):
    if I.ctx != J.ctx:
        raise ContextMismatch("comparing ideals in different rings")
    return I.groebner() == J.groebner()


def _restrict(polys, sub):
    """Read polynomials that only involve ``sub``'s variables in ``sub``."""
    out = []
    for f in polys:
        pos = [f.ctx.index(v) for v in sub.variables]
        terms = {}
        for e, c in f.items():
            ne = tuple(e[p] for p in pos)
            if sum(ne) != sum(e):
                raise InvalidArgument("polynomial involves eliminated variables")
            terms[ne] = c
        out.append(Polynomial(sub, terms))
    return out


def eliminate(I, keep):
    """Generators of I ∩ Q[keep]; ``keep`` must be the first k variables."""
    keep = list(keep)
    k = len(keep)
    if k == 0 or tuple(keep) != I.ctx.variables[:k]:
        raise InvalidArgument("eliminate keeps a nonempty prefix x_1, ..., x_k of the variable order")
    sub = RingContext(keep)
    gb = I.groebner()
    survivors = [g for g in gb if not any(g.lm()[k:])]
    return _restrict(survivors, sub)


def _with_top_variable(I, stem):
    name = fresh_name(I.ctx, stem)
    big = RingContext(I.ctx.variables + (name,))
    return big, [g.embed(big) for g in I.gens], big.var(name)


def intersect(I, J):
    if I.ctx != J.ctx:
        raise ContextMismatch("intersection across rings")
    ctx = I.ctx
    if I.is_zero() or J.is_zero():
        return Ideal([], ctx)
    name = fresh_name(ctx, "t")
    big = RingContext(ctx.variables + (name,))
    t = big.var(name)
    gens = [t * g.embed(big) for g in I.gens] + [(1 - t) * g.embed(big) for g in J.gens]
    elim = eliminate(Ideal(gens, big), ctx.variables)
    return Ideal([Polynomial(ctx, dict(p.items())) for p in elim], ctx)


def saturate(I, f):
    """I : f^∞."""
    if f.ctx != I.ctx:
        raise ContextMismatch("saturation across rings")
    if not f:
        raise InvalidArgument("cannot saturate by the zero polynomial")
    ctx = I.ctx
    if f.is_constant() or I.is_zero():
        return Ideal(I.gens, ctx)
    big, gens, w = _with_top_variable(I, "w")
    gens.append(1 - w * f.embed(big))
    elim = eliminate(Ideal(gens, big), ctx.variables)
    return Ideal([Polynomial(ctx, dict(p.items())) for p in elim], ctx)


def lift(f, gens):
    """Cofactors c with f = sum c_i gens_i; raises if f is not in the ideal."""
    gb, reps = groebner_with_lift(gens)
    quots, rem = division(f, gb)
    if rem:
        raise InvalidArgument("polynomial is not in the ideal")
    ctx = f.ctx
    out = [ctx.zero()] * len(gens)
    for q, rep in zip(quots, reps):
        if q:
            out = [a + q * r for a, r in zip(out, rep)]
    return out
