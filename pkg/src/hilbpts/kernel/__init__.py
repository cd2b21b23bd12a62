"""Exact rational scalars and dense exact matrices.

Scalars are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator).  Rank and nullspace go through fraction-free
elimination on integer rows; the elimination itself lives in a compiled
kernel when available, otherwise in its pure-Python twin.  Set
``HILBPTS_PURE_PYTHON=1`` to force the fallback.
"""
import os
from fractions import Fraction
from math import lcm

from . import _kernels_py

BigRational = Fraction

_compiled = None
if not os.environ.get("HILBPTS_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"
_echelon = (_compiled or _kernels_py).echelon


def use_backend(name):
    """Switch the elimination kernel ("compiled" or "python"); returns the previous name."""
    global BACKEND, _echelon
    previous = BACKEND
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernel is not available")
        _echelon = _compiled.echelon
    elif name == "python":
        _echelon = _kernels_py.echelon
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name
    return previous


def compiled_available():
    return _compiled is not None


class ExactMatrix:
    """Row-major matrix of rationals; treat as immutable."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        if entries is None:
            entries = [Fraction(0)] * (rows * cols)
        else:
            entries = [Fraction(e) for e in entries]
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = tuple(entries)

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("column count needed for an empty matrix")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n):
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def row_list(self):
        return [self.row(i) for i in range(self.rows)]

    def apply(self, v):
        """Exact product M·v."""
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return tuple(sum((a * b for a, b in zip(self.row(i), v)), Fraction(0))
                     for i in range(self.rows))

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(e) for e in self.row(i)) + "]"
                         for i in range(self.rows))
        return f"ExactMatrix({self.rows}x{self.cols}: [{body}])"


def integer_row(row):
    """Scale a row of rationals by the lcm of its denominators."""
    den = 1
    for x in row:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = lcm(den, x.denominator)
    if den == 1:
        return [int(x) for x in row]
    return [int(x * den) for x in row]


def echelon_rows(rows, ncols):
    """Fraction-free echelon form of rational rows: ``(integer_rows, pivots)``."""
    work = [integer_row(r) for r in rows if any(r)]
    if not work:
        return [], []
    out, pivots = _echelon(work, ncols)
    return [list(r) for r in out[:len(pivots)]], list(pivots)


def rank_of_rows(rows, ncols):
    return len(echelon_rows(rows, ncols)[1])


def nullspace_of_rows(rows, ncols):
    ech, pivots = echelon_rows(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for k in range(len(pivots) - 1, -1, -1):
            row = ech[k]
            pc = pivots[k]
            s = sum((row[j] * v[j] for j in range(pc + 1, ncols) if row[j] and v[j]), Fraction(0))
            v[pc] = -s / row[pc]
        basis.append(tuple(v))
    return basis


def mat_rank(m):
    return rank_of_rows(m.row_list(), m.cols)


def mat_nullspace(m):
    """Basis of {v : M·v = 0}; one vector per non-pivot column."""
    return nullspace_of_rows(m.row_list(), m.cols)
