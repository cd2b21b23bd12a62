"""Ring contexts, lex-ordered monomials and exact polynomials.

Monomials are exponent tuples aligned with ``RingContext.variables``.  The
variables are listed in ascending significance: in ``ring x, y, z`` we have
x < y < z and lex comparison looks at the z-exponent first.  Coefficients are
``Fraction`` in a parameter-free context and polynomials over the parameter
ring otherwise, so a family such as ``y - a*x^2`` is an ordinary polynomial
in x, y whose coefficients live in Q[a].
"""
from enum import IntEnum
from fractions import Fraction
import re

from .errors import ContextMismatch, InvalidArgument

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_RESERVED = {"ring", "param", "ideal"}


class Ordering(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def lex_key(e):
    return e[::-1]


def lex_compare(a, b, ctx):
    if len(a) != ctx.nvars or len(b) != ctx.nvars:
        raise ContextMismatch("monomial length does not match the ring")
    ka, kb = a[::-1], b[::-1]
    if ka == kb:
        return Ordering.EQ
    return Ordering.GT if ka > kb else Ordering.LT


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True when monomial ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b, a):
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a):
    return sum(a)


class RingContext:
    """Polynomial ring Q[parameters][variables] with the lex order."""

    __slots__ = ("variables", "parameters", "nvars", "coeff_ring", "_index", "_hash")

    def __init__(self, variables, parameters=()):
        variables = tuple(variables)
        parameters = tuple(parameters)
        if not variables:
            raise InvalidArgument("a ring needs at least one variable")
        names = variables + parameters
        for n in names:
            if not _NAME.match(n) or n in _RESERVED:
                raise InvalidArgument(f"invalid name {n!r}")
        if len(set(names)) != len(names):
            raise InvalidArgument("variable and parameter names must be unique")
        self.variables = variables
        self.parameters = parameters
        self.nvars = len(variables)
        self.coeff_ring = RingContext(parameters) if parameters else None
        self._index = {n: i for i, n in enumerate(variables)}
        self._hash = hash((variables, parameters))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, RingContext):
            return NotImplemented
        return self.variables == other.variables and self.parameters == other.parameters

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.parameters:
            return f"RingContext({list(self.variables)}, params={list(self.parameters)})"
        return f"RingContext({list(self.variables)})"

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise InvalidArgument(f"unknown variable {name!r}") from None

    def base(self):
        """Same variables, no parameters."""
        return self if not self.parameters else RingContext(self.variables)

    def coeff(self, c):
        """Coerce a scalar (or parameter polynomial) into this ring's coefficient domain."""
        if self.coeff_ring is None:
            if isinstance(c, Polynomial):
                raise ContextMismatch("parametric coefficient in a parameter-free ring")
            return Fraction(c)
        if isinstance(c, Polynomial):
            if c.ctx != self.coeff_ring:
                raise ContextMismatch("coefficient from a different parameter ring")
            return c
        return Polynomial.constant(self.coeff_ring, c)

    @property
    def one_monomial(self):
        return (0,) * self.nvars

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return Polynomial.constant(self, 1)

    def const(self, c):
        return Polynomial.constant(self, c)

    def var(self, name):
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): self.coeff(1)})

    def gens(self):
        return [self.var(v) for v in self.variables]

    def param(self, name):
        if name not in self.parameters:
            raise InvalidArgument(f"unknown parameter {name!r}")
        coeff = self.coeff_ring.var(name)
        return Polynomial(self, {self.one_monomial: coeff})

    def monomial(self, exps, coeff=1):
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ContextMismatch("monomial length does not match the ring")
        c = self.coeff(coeff)
        return Polynomial(self, {exps: c} if c else {})

    def format_monomial(self, e):
        parts = []
        for name, k in zip(self.variables, e):
            if k == 1:
                parts.append(name)
            elif k > 1:
                parts.append(f"{name}^{k}")
        return "*".join(parts) if parts else "1"


class Polynomial:
    """Canonical sparse polynomial; immutable by convention."""

    __slots__ = ("ctx", "_terms", "_lm", "_hash")

    def __init__(self, ctx, terms):
        # terms: dict exps -> nonzero coefficient of the ring's coefficient domain
        self.ctx = ctx
        self._terms = terms
        self._lm = None
        self._hash = None

    @classmethod
    def constant(cls, ctx, c):
        c = ctx.coeff(c)
        return cls(ctx, {ctx.one_monomial: c} if c else {})

    @classmethod
    def from_terms(cls, ctx, pairs):
        """Build from ``(coeff, exps)`` pairs, merging repeats and dropping zeros."""
        terms = {}
        for c, e in pairs:
            e = tuple(e)
            if len(e) != ctx.nvars:
                raise ContextMismatch("monomial length does not match the ring")
            c = ctx.coeff(c)
            terms[e] = terms[e] + c if e in terms else c
        return cls(ctx, {e: c for e, c in terms.items() if c})

    # -- inspection -------------------------------------------------------

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, exps):
        return self._terms.get(tuple(exps), self.ctx.coeff(0))

    def monomials(self):
        return sorted(self._terms, key=lex_key, reverse=True)

    def terms(self):
        """``(coeff, exps)`` pairs in strictly descending lex order."""
        return [(self._terms[e], e) for e in self.monomials()]

    def lm(self):
        if self._lm is None:
            if not self._terms:
                raise ValueError("zero polynomial has no leading monomial")
            self._lm = max(self._terms, key=lex_key)
        return self._lm

    def lc(self):
        return self._terms[self.lm()]

    def is_constant(self):
        return not self._terms or (len(self._terms) == 1 and not any(self.lm()))

    def is_monomial(self):
        return len(self._terms) == 1

    def total_degree(self):
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, name):
        i = self.ctx.index(name)
        return max((e[i] for e in self._terms), default=-1)

    def used_variables(self):
        used = set()
        for e in self._terms:
            used.update(i for i, k in enumerate(e) if k)
        return [self.ctx.variables[i] for i in sorted(used)]

    def used_parameters(self):
        if self.ctx.coeff_ring is None:
            return []
        used = set()
        for c in self._terms.values():
            used.update(c.used_variables())
        return [p for p in self.ctx.parameters if p in used]

    # -- arithmetic -------------------------------------------------------

    def _check(self, other):
        if other.ctx != self.ctx:
            raise ContextMismatch(f"{self.ctx!r} vs {other.ctx!r}")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ctx == self.ctx:
                return other
            if self.ctx.coeff_ring is not None and other.ctx == self.ctx.coeff_ring:
                return Polynomial.constant(self.ctx, other)
            raise ContextMismatch(f"{self.ctx!r} vs {other.ctx!r}")
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.ctx, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other._terms:
            return self
        terms = dict(self._terms)
        for e, c in other._terms.items():
            if e in terms:
                s = terms[e] + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
            else:
                terms[e] = c
        return Polynomial(self.ctx, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ctx, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c):
        c = self.ctx.coeff(c)
        if not c:
            return self.ctx.zero()
        return Polynomial(self.ctx, {e: v * c for e, v in self._terms.items() if v * c})

    def mul_term(self, c, mono):
        """Multiply by the single term ``c * x^mono``."""
        if not c:
            return self.ctx.zero()
        return Polynomial(self.ctx, {mono_mul(e, mono): v * c for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Polynomial) and other.ctx != self.ctx:
            if self.ctx.coeff_ring is not None and other.ctx == self.ctx.coeff_ring:
                return self.scale(other)
            raise ContextMismatch(f"{self.ctx!r} vs {other.ctx!r}")
        if not isinstance(other, Polynomial):
            return NotImplemented
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                if e in terms:
                    c = terms[e] + c
                    if c:
                        terms[e] = c
                    else:
                        del terms[e]
                elif c:
                    terms[e] = c
        return Polynomial(self.ctx, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def monic(self):
        if not self._terms:
            return self
        lc = self.lc()
        if isinstance(lc, Polynomial):
            raise ContextMismatch("cannot normalize a parametric leading coefficient")
        if lc == 1:
            return self
        inv = 1 / lc
        return Polynomial(self.ctx, {e: c * inv for e, c in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ctx == other.ctx and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.ctx, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    # -- maps -------------------------------------------------------------

    def evaluate(self, point):
        """Value at a point given as a sequence aligned with the variables."""
        if len(point) != self.ctx.nvars:
            raise ContextMismatch("point dimension does not match the ring")
        point = [Fraction(p) for p in point]
        total = self.ctx.coeff(0)
        for e, c in self._terms.items():
            v = Fraction(1)
            for p, k in zip(point, e):
                if k:
                    v *= p ** k
            total = total + c * v
        return total

    def diff(self, name):
        """Partial derivative in a variable."""
        i = self.ctx.index(name)
        terms = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                terms[ne] = c * e[i]
        return Polynomial(self.ctx, terms)

    def specialize(self, values):
        """Substitute rational values for all parameters; returns a polynomial over Q."""
        base = self.ctx.base()
        if self.ctx.coeff_ring is None:
            return self
        missing = [p for p in self.ctx.parameters if p not in values]
        if missing:
            raise InvalidArgument(f"missing parameter value(s): {', '.join(missing)}")
        point = [Fraction(values[p]) for p in self.ctx.parameters]
        terms = {}
        for e, c in self._terms.items():
            v = c.evaluate(point)
            if v:
                terms[e] = v
        return Polynomial(base, terms)

    def with_parameters_as_variables(self, target):
        """Re-read in ``target``, a parameter-free ring containing every variable and parameter name."""
        var_pos = [target.index(v) for v in self.ctx.variables]
        par_pos = [target.index(p) for p in self.ctx.parameters]
        pairs = []
        for e, c in self._terms.items():
            coeff_items = c.items() if isinstance(c, Polynomial) else [((), c)]
            for pe, pc in coeff_items:
                ne = [0] * target.nvars
                for pos, k in zip(var_pos, e):
                    ne[pos] += k
                for pos, k in zip(par_pos, pe):
                    ne[pos] += k
                pairs.append((pc, ne))
        return Polynomial.from_terms(target, pairs)

    def embed(self, target):
        """Re-read in a ring whose variables include ours (matched by name)."""
        if self.ctx.parameters != target.parameters:
            raise ContextMismatch("parameter lists differ")
        pos = [target.index(v) for v in self.ctx.variables]
        terms = {}
        for e, c in self._terms.items():
            ne = [0] * target.nvars
            for p, k in zip(pos, e):
                ne[p] = k
            terms[tuple(ne)] = c
        return Polynomial(target, terms)


def param_derivative(f, name):
    """Formal partial derivative in a parameter."""
    ctx = f.ctx
    if name not in ctx.parameters:
        raise InvalidArgument(f"unknown parameter {name!r}")
    terms = {}
    for e, c in f.items():
        dc = c.diff(name)
        if dc:
            terms[e] = dc
    return Polynomial(ctx, terms)


class Substitution:
    """Ring map sending each variable of ``source`` to a polynomial.

    Parameters are left alone, so source and target must share them.
    """

    __slots__ = ("source", "target", "images")

    def __init__(self, source, images, target=None):
        if isinstance(images, dict):
            missing = [v for v in source.variables if v not in images]
            if missing:
                raise InvalidArgument(f"substitution misses variable(s): {', '.join(missing)}")
            extra = set(images) - set(source.variables)
            if extra:
                raise InvalidArgument(f"unknown variable(s) in substitution: {', '.join(sorted(extra))}")
            images = [images[v] for v in source.variables]
        images = tuple(images)
        if len(images) != source.nvars:
            raise InvalidArgument("substitution must assign every variable")
        if target is None:
            target = images[0].ctx
        for g in images:
            if g.ctx != target:
                raise ContextMismatch("substitution images live in different rings")
        if target.parameters != source.parameters:
            raise ContextMismatch("substitution must preserve the parameters")
        self.source = source
        self.target = target
        self.images = images

    @classmethod
    def identity(cls, ctx):
        return cls(ctx, ctx.gens())

    def __call__(self, f):
        return apply_substitution(f, self)


def apply_substitution(f, s):
    if f.ctx != s.source:
        raise ContextMismatch("polynomial is not in the substitution's source ring")
    powers = [{0: s.target.one()} for _ in s.images]

    def power(i, k):
        cache = powers[i]
        if k not in cache:
            cache[k] = power(i, k - 1) * s.images[i]
        return cache[k]

    out = s.target.zero()
    for e, c in f.items():
        term = Polynomial.constant(s.target, c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        out = out + term
    return out


def format_poly(f):
    from .grammar import format_poly as _fmt
    return _fmt(f)
