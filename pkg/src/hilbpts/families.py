"""One-parameter (and multi-parameter) families of zero-dimensional ideals.

Covers specialization, per-sample colength measurement, flat limits by
saturation, first-order germs, the deformation catalogs at (x_1..x_d)^2,
the lex smoothing chain, the split-off and embedding constructions, and the
two certificates (curve-rank reducedness and the integrality criterion).
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .errors import (BaseMismatch, InvalidArgument, MultiParameter,
                     NotFirstOrderFlat, NotPrimary, NotZeroDimensional,
                     SupportNotOrigin, UnsupportedClass, UnsupportedRadical)
from .grammar import parse_poly
from .groebner import (Ideal, fresh_name, groebner_with_lift, ideal_equal,
                       saturate)
from .hilbtangent import (TangentVector, default_variables, hom_data,
                          square_of_maximal, tangent_dimension, validate_hom)
from .kernel import rank_of_rows
from .poly import (Polynomial, RingContext, Substitution, apply_substitution,
                   param_derivative)
from .quotient import (colength, is_monomial_ideal, is_primary,
                       is_zero_dimensional, maximal_ideal, point_tangent_dim,
                       radical_monomial, radical_zero_dim)

DEFAULT_SAMPLES = (Fraction(1), Fraction(-1), Fraction(2), Fraction(-2),
                   Fraction(3), Fraction(-3), Fraction(1, 2), Fraction(5))


def _rehome(f, target):
    """Move f into ``target`` (same variables, a subset of the parameters)."""
    if target.coeff_ring is None:
        return f.specialize({p: 0 for p in f.ctx.parameters}) if f.ctx.parameters else f
    pos = [f.ctx.parameters.index(p) for p in target.parameters]
    terms = {}
    for e, c in f.items():
        pterms = {}
        for pe, pc in c.items():
            if any(k for j, k in enumerate(pe) if j not in pos):
                raise InvalidArgument("coefficient uses a parameter outside the target ring")
            pterms[tuple(pe[j] for j in pos)] = pc
        terms[e] = Polynomial(target.coeff_ring, pterms)
    return Polynomial(target, terms)


@dataclass(frozen=True)
class ParametricIdeal:
    ctx: RingContext
    generators: tuple
    name: str = ""

    @classmethod
    def from_generators(cls, gens, name="", ctx=None):
        """Build a family whose ring keeps only the parameters that occur."""
        gens = list(gens)
        ctx = ctx or gens[0].ctx
        used = set()
        for g in gens:
            used.update(g.used_parameters())
        params = tuple(p for p in ctx.parameters if p in used)
        target = RingContext(ctx.variables, params)
        return cls(target, tuple(_rehome(g, target) for g in gens), name)

    @classmethod
    def parse(cls, variables, parameters, texts, name=""):
        ctx = RingContext(variables, parameters)
        return cls.from_generators([parse_poly(t, ctx) for t in texts], name, ctx)

    @property
    def parameters(self):
        return self.ctx.parameters

    @property
    def base(self):
        return specialize(self, {p: 0 for p in self.parameters})

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


def specialize(F, values):
    base = F.ctx.base()
    if not F.parameters:
        return Ideal([_rehome(g, base) for g in F.generators], base)
    missing = [p for p in F.parameters if p not in values]
    if missing:
        raise InvalidArgument(f"missing parameter value(s): {', '.join(missing)}")
    vals = {p: Fraction(values[p]) for p in F.parameters}
    return Ideal([g.specialize(vals) for g in F.generators], base)


class FlatnessVerdict(str, Enum):
    CONSTANT = "CONSTANT"
    NON_CONSTANT = "NON_CONSTANT"
    SPECIAL_FIBER_DEGENERATE = "SPECIAL_FIBER_DEGENERATE"


@dataclass(frozen=True)
class FiberMeasurement:
    values: dict
    zero_dimensional: bool
    colength: int = None


@dataclass(frozen=True)
class FlatnessReport:
    family: ParametricIdeal
    fibers: tuple
    verdict: FlatnessVerdict
    generic_colength: int = None

    @property
    def samples(self):
        return [f.values for f in self.fibers]


def default_samples(parameters, count=None):
    pool = DEFAULT_SAMPLES if count is None else DEFAULT_SAMPLES[:count]
    if not parameters:
        return [{}]
    n = len(DEFAULT_SAMPLES)
    return [{p: DEFAULT_SAMPLES[(k + j) % n] for j, p in enumerate(parameters)}
            for k in range(len(pool))]


def _normalize_samples(F, samples):
    if samples is None:
        return default_samples(F.parameters)
    out = []
    for s in samples:
        if isinstance(s, dict):
            out.append({p: Fraction(s[p]) for p in F.parameters})
        else:
            if len(F.parameters) != 1:
                raise MultiParameter("bare sample values need a one-parameter family")
            out.append({F.parameters[0]: Fraction(s)})
    if not out:
        raise InvalidArgument("no samples given")
    return out


def measure_fiber(F, values):
    I = specialize(F, values)
    try:
        zd = not I.is_zero() and is_zero_dimensional(I)
    except NotZeroDimensional:
        zd = False
    return FiberMeasurement(dict(values), zd, colength(I) if zd else None)


def flatness_report(F, samples=None):
    """Measure fiber colengths at the samples; constancy is never assumed."""
    fibers = tuple(measure_fiber(F, v) for v in _normalize_samples(F, samples))
    is_special = [bool(F.parameters) and all(v == 0 for v in f.values.values()) for f in fibers]
    special = [f for f, s in zip(fibers, is_special) if s]
    generic = [f for f, s in zip(fibers, is_special) if not s]
    lengths = {f.colength for f in generic}
    generic_ok = bool(generic) and all(f.zero_dimensional for f in generic) and len(lengths) == 1
    generic_colength = lengths.pop() if generic_ok else None
    if generic_ok and all(f.zero_dimensional and f.colength == generic_colength for f in special):
        verdict = FlatnessVerdict.CONSTANT
    elif generic_ok and special and all(not f.zero_dimensional for f in special):
        verdict = FlatnessVerdict.SPECIAL_FIBER_DEGENERATE
    else:
        verdict = FlatnessVerdict.NON_CONSTANT
    return FlatnessReport(F, fibers, verdict, generic_colength)


def flat_limit(F, at=0):
    """Limit fiber of the closure of the family over parameter values != ``at``."""
    if len(F.parameters) > 1:
        raise MultiParameter("flat_limit needs a one-parameter family")
    if not F.parameters:
        return F.base
    at = Fraction(at)
    base = F.ctx.base()
    pname = F.parameters[0]
    big = RingContext((pname,) + base.variables)
    gens = [g.with_parameters_as_variables(big) for g in F.generators]
    a = big.var(pname)
    sat = saturate(Ideal(gens, big), a - at)
    out = []
    for g in sat.groebner():
        pairs = [(c * at ** e[0], e[1:]) for e, c in g.items()]
        out.append(Polynomial.from_terms(base, pairs))
    return Ideal(out, base)


def family_germ(F):
    """First-order germ at parameter 0: g_i -> d g_i / d alpha |_0, on the reduced basis."""
    if len(F.parameters) > 1:
        raise MultiParameter("family_germ needs a one-parameter family")
    I = F.base
    if not is_zero_dimensional(I):
        raise NotZeroDimensional(f"base {I} is not zero-dimensional")
    if not F.parameters:
        return TangentVector.zero(I)
    pname = F.parameters[0]
    zero = {pname: 0}
    base_gens = [g.specialize(zero) for g in F.generators]
    derivs = [param_derivative(g, pname).specialize(zero) for g in F.generators]
    gb, reps = groebner_with_lift(base_gens)
    ctx = I.ctx
    images = []
    for rep in reps:
        h = ctx.zero()
        for c, d in zip(rep, derivs):
            if c and d:
                h = h + c * d
        images.append(h)
    v = TangentVector.from_polynomials(I, images)
    if not validate_hom(I, v):
        raise NotFirstOrderFlat(f"germ of {F} is not a homomorphism I -> S/I")
    return v


# -- catalogs at (x_1, ..., x_d)^2 ---------------------------------------------

def _square_generators(ctx):
    xs = ctx.gens()
    return [(i, j, xs[i] * xs[j]) for i in range(ctx.nvars) for j in range(i, ctx.nvars)]


def group1_families(d, param="alpha"):
    """Reattachment of points: x_i^2 -> x_i(x_i - a), optionally x_i x_j -> (x_i - a) x_j."""
    ctx = RingContext(default_variables(d), (param,))
    xs, a = ctx.gens(), ctx.param(param)
    names = ctx.variables
    out = []
    for i in range(d):
        gens = [xs[i] * (xs[i] - a) if (p, q) == (i, i) else g for p, q, g in _square_generators(ctx)]
        out.append(ParametricIdeal.from_generators(gens, f"reattach {names[i]}", ctx))
    for i in range(d):
        for j in range(d):
            if j == i:
                continue
            gens = []
            for p, q, g in _square_generators(ctx):
                if (p, q) == (i, i):
                    gens.append(xs[i] * (xs[i] - a))
                elif {p, q} == {i, j}:
                    gens.append((xs[i] - a) * xs[j])
                else:
                    gens.append(g)
            out.append(ParametricIdeal.from_generators(gens, f"reattach {names[i]} along {names[j]}", ctx))
    return out


def group2_families(d, param="nu"):
    """Subschemes on quadrics: x_i x_j -> x_i x_j - a x_s with s not in {i, j}."""
    ctx = RingContext(default_variables(d), (param,))
    xs, a = ctx.gens(), ctx.param(param)
    names = ctx.variables
    out = []
    for i in range(d):
        for j in range(i, d):
            for s in range(d):
                if s in (i, j):
                    continue
                gens = [g - a * xs[s] if (p, q) == (i, j) else g for p, q, g in _square_generators(ctx)]
                out.append(ParametricIdeal.from_generators(
                    gens, f"quadric {names[i]}*{names[j]} - {param}*{names[s]}", ctx))
    return out


_EXAMPLE1 = [
    ("alpha", "x*(x-alpha), x*y, y^2, y*z, z^2, z*x"),
    ("beta", "x^2, x*y, y*(y-beta), y*z, z^2, z*x"),
    ("gamma", "x^2, x*y, y^2, y*z, z*(z-gamma), z*x"),
    ("alpha", "x*(x-alpha), x*y, y^2, y*z, z^2, z*(x-alpha)"),
    ("beta", "x^2, x*(y-beta), y*(y-beta), y*z, z^2, z*x"),
    ("gamma", "x^2, x*y, y^2, y*(z-gamma), z*(z-gamma), z*x"),
    ("alpha", "x*(x-alpha), (x-alpha)*y, y^2, y*z, z^2, z*x"),
    ("beta", "x^2, x*y, y*(y-beta), (y-beta)*z, z^2, z*x"),
    ("gamma", "x^2, x*y, y^2, y*z, z*(z-gamma), (z-gamma)*x"),
    ("mu", "x^2-mu*y, x*y, y^2, y*z, z^2, z*x"),
    ("nu", "x^2, x*y, y^2-nu*z, y*z, z^2, z*x"),
    ("sigma", "x^2, x*y, y^2, y*z, z^2-sigma*x, z*x"),
    ("pi", "x^2-pi*z, x*y, y^2, y*z, z^2, z*x"),
    ("rho", "x^2, x*y, y^2-rho*x, y*z, z^2, z*x"),
    ("tau", "x^2, x*y, y^2, y*z, z^2-tau*y, z*x"),
    ("eta", "x^2, x*y-eta*z, y^2, y*z, z^2, z*x"),
    ("xi", "x^2, x*y, y^2, y*z-xi*x, z^2, z*x"),
    ("zeta", "x^2, x*y, y^2, y*z, z^2, z*x-zeta*y"),
]


def example1_catalog():
    """The eighteen one-parameter families through (x, y, z)^2 in A^3."""
    return [ParametricIdeal.parse(["x", "y", "z"], [p], text.split(", "), name=f"family {k}")
            for k, (p, text) in enumerate(_EXAMPLE1, start=1)]


# -- smoothing chain ---------------------------------------------------------------

@dataclass(frozen=True)
class SmoothingStep:
    ideal: Ideal
    family: ParametricIdeal
    next: Ideal
    exponent: int
    report: FlatnessReport
    next_colength: int


@dataclass(frozen=True)
class SmoothingChain:
    steps: tuple
    terminal: ParametricIdeal
    terminal_report: FlatnessReport
    length: int


def _require_origin_support(I):
    if not is_zero_dimensional(I):
        raise NotZeroDimensional(f"{I} is not zero-dimensional")
    origin = maximal_ideal(I.ctx, [0] * I.ctx.nvars)
    if not ideal_equal(radical_zero_dim(I), origin):
        raise SupportNotOrigin(f"{I} is not supported at the origin alone")


def smoothing_step(I, param="alpha"):
    ctx = I.ctx
    d = ctx.nvars
    if d < 2:
        raise InvalidArgument("one variable is terminal; no smoothing step applies")
    _require_origin_support(I)
    gb = I.groebner().elements
    fm = gb[-1]
    if any(any(e[1:]) for e, _ in fm.items()) or not fm.is_monomial():
        raise SupportNotOrigin(f"last basis element {fm} is not a pure power of {ctx.variables[0]}")
    exponent = fm.lm()[0]
    pname = fresh_name(ctx, param)
    fctx = RingContext(ctx.variables, (pname,))
    a = fctx.param(pname)
    fam_gens = [_lift_params(g, fctx) for g in gb[:-1]]
    fam_gens.append(fctx.var(ctx.variables[-1]) - a * _lift_params(fm, fctx))
    family = ParametricIdeal(fctx, tuple(fam_gens), f"smoothing in {ctx.variables[-1]}")
    images = list(ctx.gens()[:-1]) + [fm]
    sub = Substitution(ctx, images)
    small = RingContext(ctx.variables[:-1])
    nxt = []
    for g in gb[:-1]:
        h = apply_substitution(g, sub)
        nxt.append(Polynomial(small, {e[:-1]: c for e, c in h.items()}))
    nxt = Ideal(nxt, small)
    report = flatness_report(family)
    return SmoothingStep(I, family, nxt, exponent, report, colength(nxt))


def _lift_params(f, target):
    """Read a parameter-free polynomial in a ring that has parameters."""
    return Polynomial(target, {e: target.coeff(c) for e, c in f.items()})


def splitting_family(ctx, l, param="alpha"):
    """prod_{i<l} (x_1 - i*a): l points collide at the origin as a -> 0."""
    pname = fresh_name(ctx, param)
    fctx = RingContext(ctx.variables, (pname,))
    x, a = fctx.gens()[0], fctx.param(pname)
    f = fctx.one()
    for i in range(l):
        f = f * (x - a * i)
    return ParametricIdeal(fctx, (f,) + tuple(fctx.gens()[1:]), "splitting")


def smoothing_chain(I):
    start = colength(I)
    steps = []
    current = I
    while current.ctx.nvars > 1:
        step = smoothing_step(current)
        steps.append(step)
        current = step.next
    _require_origin_support(current)
    fm = current.groebner().elements[-1]
    terminal = splitting_family(current.ctx, fm.lm()[0])
    return SmoothingChain(tuple(steps), terminal, flatness_report(terminal), start)


# -- split-off, embedding, projection --------------------------------------------

def split_off_family(l, d):
    """Deform (x_1..x_d)^2 into a length-l point with d-l+1 reduced points split off."""
    if not (2 <= l <= d):
        raise InvalidArgument("split_off_family needs 2 <= l <= d")
    variables = default_variables(d)
    params = tuple(f"alpha{t}" for t in range(l, d + 1))
    ctx = RingContext(variables, params)
    xs = ctx.gens()
    gens = [xs[i] * xs[j] for j in range(l - 1) for i in range(j + 1)]
    for t in range(l - 1, d):
        a = ctx.param(params[t - (l - 1)])
        for s in range(t + 1):
            gens.append(xs[s] * (xs[t] - a))
    return ParametricIdeal(ctx, tuple(gens), f"split-off l={l} d={d}")


_NAME_POOL = ["x", "y", "z", "w", "u", "v", "s", "t"]


def embedding_variables(ctx, count):
    taken = set(ctx.variables) | set(ctx.parameters)
    out = []
    for name in _NAME_POOL + [f"x{k}" for k in range(1, 64)]:
        if len(out) == count:
            break
        if name not in taken:
            out.append(name)
            taken.add(name)
    return out


def embed_ideal(I, l, names=None):
    """I + (x_{d+1}, ..., x_{l-1}) in l-1 variables."""
    d = I.ctx.nvars
    if not d < l - 1:
        raise InvalidArgument(f"embedding needs d < l-1 (d={d}, l={l})")
    if colength(I) != l:
        raise InvalidArgument(f"ideal has colength {colength(I)}, not {l}")
    extra = list(names) if names is not None else embedding_variables(I.ctx, l - 1 - d)
    if len(extra) != l - 1 - d:
        raise InvalidArgument(f"need {l - 1 - d} new variable names")
    big = RingContext(I.ctx.variables + tuple(extra))
    return Ideal([g.embed(big) for g in I.gens] + [big.var(v) for v in extra], big)


def project_tangent_vector(v, I):
    """Restrict a tangent vector at the embedded ideal to the generators of I."""
    J = v.ideal
    if not validate_hom(J, v):
        raise InvalidArgument("input is not a valid tangent vector")
    small, big = I.ctx, J.ctx
    d = small.nvars
    if big.variables[:d] != small.variables:
        raise InvalidArgument("ideal is not the small ring of the embedding")
    big_data, small_data = hom_data(J), hom_data(I)
    position = {g: k for k, g in enumerate(big_data.gb)}
    big_basis = big_data.quotient.basis.monomials
    small_index = {e: k for k, e in enumerate(small_data.quotient.basis.monomials)}
    images = []
    for g in small_data.gb:
        k = position.get(g.embed(big))
        if k is None:
            raise InvalidArgument("ideal does not match the embedded ideal")
        coords = [Fraction(0)] * small_data.l
        for b, c in enumerate(v.images[k]):
            if c:
                e = big_basis[b]
                if any(e[d:]):
                    raise InvalidArgument("embedded ideal does not kill the extra variables")
                coords[small_index[e[:d]]] = c
        images.append(tuple(coords))
    return TangentVector(I, tuple(images))


def embedded_family(I, l, alpha=None, beta=None, param="alpha", names=None):
    """The family (f_u - sum_j alpha_uj fbar_j, x_t - sum_j beta_tj fbar_j) at embed_ideal(I, l).

    ``alpha`` maps generator index u -> list of (coefficient, polynomial in I's ring);
    ``beta`` maps a new variable name -> the same kind of list.  The deformation
    parameter multiplies every correction term.
    """
    J = embed_ideal(I, l, names)
    big = J.ctx
    fctx = RingContext(big.variables, (fresh_name(big, param),))
    a = fctx.param(fctx.parameters[0])
    extra = big.variables[I.ctx.nvars:]
    gens = []
    for u, f in enumerate(I.gens):
        g = _lift_params(f.embed(big), fctx)
        for c, fbar in (alpha or {}).get(u, []):
            g = g - a * _lift_params(fbar.embed(big), fctx) * c
        gens.append(g)
    for t in extra:
        g = fctx.var(t)
        for c, fbar in (beta or {}).get(t, []):
            g = g - a * _lift_params(fbar.embed(big), fctx) * c
        gens.append(g)
    return ParametricIdeal(fctx, tuple(gens), "embedded family")


def project_family(F, I):
    """Apply x_t -> x_t + (its correction) and drop the x_t generators, landing in I's ring."""
    small = I.ctx
    d = small.nvars
    n_small = len(I.gens)
    gens = []
    for g in F.generators[:n_small]:
        terms = {}
        for e, c in g.items():
            if any(e[d:]):
                raise InvalidArgument("family generator involves the extra variables")
            terms[e[:d]] = c
        gens.append(Polynomial(RingContext(small.variables, F.parameters), terms))
    return ParametricIdeal.from_generators(gens, "projected family",
                                           RingContext(small.variables, F.parameters))


# -- certificates -----------------------------------------------------------------

class CertificateVerdict(str, Enum):
    CERTIFIED = "CERTIFIED"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class ReducednessCertificate:
    ideal: Ideal
    families: tuple
    germs: tuple
    germ_rank: int
    tangent_dim: int
    verdict: CertificateVerdict


def certify_reduced(I, families):
    families = tuple(families)
    germs = []
    for F in families:
        if F.ctx.variables != I.ctx.variables or not ideal_equal(F.base, I):
            raise BaseMismatch(f"{F.name or F} does not pass through {I}")
        germs.append(family_germ(F))
    data = hom_data(I)
    rank = rank_of_rows([g.flat() for g in germs], data.nunknowns) if germs else 0
    tdim = tangent_dimension(I)
    verdict = CertificateVerdict.CERTIFIED if rank == tdim else CertificateVerdict.INCONCLUSIVE
    return ReducednessCertificate(I, families, tuple(germs), rank, tdim, verdict)


class IntegralityVerdict(str, Enum):
    INTEGRAL = "INTEGRAL"
    NOT_INTEGRAL = "NOT_INTEGRAL"


@dataclass(frozen=True)
class IntegralityReport:
    ideal: Ideal
    radical: Ideal
    point: tuple
    cotangent_dim: int
    reduced_cotangent_dim: int
    primary: bool
    verdict: IntegralityVerdict = field(default=None)


def integrality_criterion(q, point):
    """Compare dim m/m^2 for S/q and for S/sqrt(q) at a rational point of a primary q."""
    try:
        primary = is_primary(q)
    except UnsupportedClass as exc:
        raise UnsupportedRadical(str(exc)) from None
    if not primary:
        raise NotPrimary(f"{q} is not primary")
    if is_monomial_ideal(q):
        rad = radical_monomial(q)
    else:
        rad = radical_zero_dim(q)
    point = tuple(Fraction(c) for c in point)
    dim_q = point_tangent_dim(q, point)
    dim_red = point_tangent_dim(rad, point)
    verdict = (IntegralityVerdict.INTEGRAL if dim_q == dim_red and primary
               else IntegralityVerdict.NOT_INTEGRAL)
    return IntegralityReport(q, rad, point, dim_q, dim_red, primary, verdict)


def square_ideal_families(d):
    """Group 1 followed by group 2 at (x_1..x_d)^2."""
    return group1_families(d) + group2_families(d)


__all__ = [
    "DEFAULT_SAMPLES", "ParametricIdeal", "FlatnessReport", "FlatnessVerdict",
    "SmoothingStep", "SmoothingChain", "ReducednessCertificate", "IntegralityReport",
    "CertificateVerdict", "IntegralityVerdict", "specialize", "flatness_report",
    "flat_limit", "family_germ", "group1_families", "group2_families",
    "example1_catalog", "smoothing_step", "smoothing_chain", "split_off_family",
    "embed_ideal", "project_tangent_vector", "embedded_family", "project_family",
    "certify_reduced", "integrality_criterion", "square_ideal_families",
    "square_of_maximal", "splitting_family",
]
