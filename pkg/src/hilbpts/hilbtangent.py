"""Zariski tangent space Hom_S(I, S/I) of the Hilbert scheme of points at [I].

A homomorphism is stored by the images of the reduced Groebner basis
g_1, ..., g_s, each image written in the standard-monomial basis of S/I.
It is well defined exactly when every syzygy (a_1, ..., a_s) of the basis
satisfies sum a_i * h_i = 0 in S/I.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InvalidArgument, NotZeroDimensional
from .groebner import Ideal, syzygy_basis
from .kernel import nullspace_of_rows, rank_of_rows
from .poly import RingContext, lex_key
from .quotient import QuotientRing, colength, is_zero_dimensional


def default_variables(d):
    return ["x", "y", "z"][:d] if d <= 3 else [f"x{i}" for i in range(1, d + 1)]


def square_of_maximal(d, ctx=None):
    """(x_1, ..., x_d)^2 in the default ring with d variables."""
    ctx = ctx or RingContext(default_variables(d))
    xs = ctx.gens()
    return Ideal([xs[i] * xs[j] for j in range(ctx.nvars) for i in range(j + 1)], ctx)


class HomData:
    """Everything needed to write down Hom(I, S/I) for a zero-dimensional I."""

    def __init__(self, I):
        self.ideal = I
        self.quotient = QuotientRing(I)
        self.gb = self.quotient.gb
        self.s = len(self.gb)
        self.l = self.quotient.dim
        self.syzygies = syzygy_basis(self.gb)
        self._rows = None

    @property
    def nunknowns(self):
        return self.s * self.l

    def constraint_rows(self):
        """One row per (syzygy, quotient coordinate); columns index (generator, basis monomial)."""
        if self._rows is None:
            Q = self.quotient
            l = self.l
            rows = []
            for syz in self.syzygies:
                block = [[Fraction(0)] * (self.s * l) for _ in range(l)]
                for i, a in enumerate(syz):
                    for e, c in a.items():
                        for b, bm in enumerate(Q.basis.monomials):
                            prod_e = tuple(x + y for x, y in zip(e, bm))
                            for k, v in Q.nf_monomial(prod_e).items():
                                block[k][i * l + b] += c * v
                rows.extend(r for r in block if any(r))
            self._rows = rows
        return self._rows


@lru_cache(maxsize=128)
def _hom_data_cached(gb):
    return HomData(Ideal(list(gb), gb.ctx))


def hom_data(I):
    if not is_zero_dimensional(I):
        raise NotZeroDimensional(f"{I} is not zero-dimensional")
    return _hom_data_cached(I.groebner())


@dataclass(frozen=True)
class TangentVector:
    """Images of the reduced basis elements, as coordinate tuples in S/I."""

    ideal: Ideal
    images: tuple

    @classmethod
    def from_flat(cls, I, flat):
        data = hom_data(I)
        l = data.l
        flat = [Fraction(x) for x in flat]
        if len(flat) != data.nunknowns:
            raise InvalidArgument("vector length does not match s*l")
        return cls(I, tuple(tuple(flat[i * l:(i + 1) * l]) for i in range(data.s)))

    @classmethod
    def from_polynomials(cls, I, polys):
        """Images given as polynomials, one per reduced basis element (reduced mod I)."""
        data = hom_data(I)
        if len(polys) != data.s:
            raise InvalidArgument(f"expected {data.s} images, got {len(polys)}")
        return cls(I, tuple(tuple(data.quotient.coords(p)) for p in polys))

    @classmethod
    def zero(cls, I):
        data = hom_data(I)
        return cls(I, tuple((Fraction(0),) * data.l for _ in range(data.s)))

    def flat(self):
        return tuple(x for img in self.images for x in img)

    def generators(self):
        return hom_data(self.ideal).gb.elements

    def image_polynomials(self):
        Q = hom_data(self.ideal).quotient
        return [Q.element(img) for img in self.images]

    def is_zero(self):
        return not any(self.flat())

    def __str__(self):
        parts = [f"{g} -> {h}" for g, h in zip(self.generators(), self.image_polynomials())]
        return "{" + ", ".join(parts) + "}"


def validate_hom(I, v):
    data = hom_data(I)
    if len(v.images) != data.s or any(len(img) != data.l for img in v.images):
        raise InvalidArgument("tangent vector shape does not match the ideal")
    flat = v.flat()
    for row in data.constraint_rows():
        if sum((a * b for a, b in zip(row, flat) if a and b), Fraction(0)):
            return False
    return True


@dataclass(frozen=True)
class TangentSpace:
    dim: int
    basis: tuple


def tangent_space(I):
    data = hom_data(I)
    null = nullspace_of_rows(data.constraint_rows(), data.nunknowns)
    basis = tuple(TangentVector.from_flat(I, v) for v in null)
    return TangentSpace(len(basis), basis)


def tangent_dimension(I):
    data = hom_data(I)
    return data.nunknowns - rank_of_rows(data.constraint_rows(), data.nunknowns)


def square_ideal_basis(d):
    """The vectors x_i x_j -> x_m (all other generators -> 0), i <= j, at (x_1..x_d)^2."""
    if d < 1:
        raise InvalidArgument("d must be at least 1")
    I = square_of_maximal(d)
    data = hom_data(I)
    ctx = I.ctx
    position = {g.lm(): k for k, g in enumerate(data.gb)}
    xs = ctx.gens()
    out = []
    for j in range(d):
        for i in range(j + 1):
            target = position[(xs[i] * xs[j]).lm()]
            for m in range(d):
                images = [ctx.zero()] * data.s
                images[target] = xs[m]
                out.append(TangentVector.from_polynomials(I, images))
    return out


def is_singular_point(I, d=None):
    if d is None:
        d = I.ctx.nvars
    elif d != I.ctx.nvars:
        raise InvalidArgument(f"ideal lives in {I.ctx.nvars} variables, not {d}")
    if not is_zero_dimensional(I):
        raise NotZeroDimensional(f"{I} is not zero-dimensional")
    return tangent_dimension(I) > colength(I) * d


# -- independent oracle -----------------------------------------------------------

def _monomials_up_to(n, D):
    if n == 0:
        yield ()
        return
    for k in range(D + 1):
        for rest in _monomials_up_to(n - 1, D - k):
            yield (k,) + rest


def _sparse_rank(rows):
    pivots = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            key = max(row)
            if key not in pivots:
                c = row[key]
                pivots[key] = {k: v / c for k, v in row.items()}
                rank += 1
                break
            c = row[key]
            for k, v in pivots[key].items():
                s = row.get(k, 0) - c * v
                if s:
                    row[k] = s
                else:
                    row.pop(k, None)
    return rank


def _truncated_hom_dim(I, Q, D):
    gens = [g for g in I.gens if g]
    l = Q.dim
    n = len(gens) * l
    pivots = {}
    constraints = []
    for i, g in enumerate(gens):
        dg = g.total_degree()
        if dg > D:
            continue
        for m in _monomials_up_to(I.ctx.nvars, D - dg):
            row = {}
            for e, c in g.items():
                key = ("p", lex_key(tuple(a + b for a, b in zip(e, m))))
                row[key] = row.get(key, 0) + c
            for b, bm in enumerate(Q.basis.monomials):
                prod_e = tuple(a + x for a, x in zip(m, bm))
                for k, v in Q.nf_monomial(prod_e).items():
                    key = ("q", k, i * l + b)
                    row[key] = row.get(key, 0) + v
            row = {k: v for k, v in row.items() if v}
            while True:
                pkeys = [k for k in row if k[0] == "p"]
                if not pkeys:
                    break
                key = max(pkeys)
                c = row[key]
                if key not in pivots:
                    pivots[key] = {k: v / c for k, v in row.items()}
                    row = None
                    break
                for k, v in pivots[key].items():
                    s = row.get(k, 0) - c * v
                    if s:
                        row[k] = s
                    else:
                        row.pop(k, None)
            if row:
                by_coord = {}
                for (_, k, col), v in row.items():
                    by_coord.setdefault(k, {})[col] = v
                constraints.extend(by_coord.values())
    return n - _sparse_rank(constraints)


def tangent_dim_oracle(I):
    """dim Hom(I, S/I) from degree-truncated linear algebra on the input generators.

    Relations among the products m*g of bounded degree are found by sparse
    elimination; the truncation degree doubles until two runs agree.  No
    syzygy computation is involved.
    """
    if not is_zero_dimensional(I):
        raise NotZeroDimensional(f"{I} is not zero-dimensional")
    Q = QuotientRing(I)
    D = max(g.total_degree() for g in I.gens if g) + Q.basis.max_degree() + 1
    previous = _truncated_hom_dim(I, Q, D)
    while True:
        D *= 2
        current = _truncated_hom_dim(I, Q, D)
        if current == previous:
            return current
        previous = current
