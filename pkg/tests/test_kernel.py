from fractions import Fraction as F
import random

import pytest
from hypothesis import given, settings, strategies as st

from hilbpts import kernel
from hilbpts.kernel import (ExactMatrix, echelon_rows, mat_nullspace, mat_rank,
                            nullspace_of_rows, rank_of_rows)
from hilbpts.kernel import _kernels_py


def test_identity_rank(backend):
    assert mat_rank(ExactMatrix.identity(3)) == 3


def test_zero_rank(backend):
    assert mat_rank(ExactMatrix(2, 2)) == 0


def test_dependent_rows(backend):
    assert mat_rank(ExactMatrix.from_rows([[1, 2], [2, 4]])) == 1


def test_nullspace_identity_empty(backend):
    assert mat_nullspace(ExactMatrix.identity(2)) == []


def test_nullspace_single_row(backend):
    (v,) = mat_nullspace(ExactMatrix.from_rows([[1, 1]]))
    assert v[0] == -v[1] != 0


def test_nullspace_zero_matrix(backend):
    null = mat_nullspace(ExactMatrix(2, 2))
    assert len(null) == 2
    assert mat_rank(ExactMatrix.from_rows([list(v) for v in null])) == 2


def test_entries_are_canonical():
    m = ExactMatrix(1, 2, [F(2, 4), -F(3, 6)])
    assert m[0, 0] == F(1, 2) and m[0, 1].denominator == 2 and m[0, 1] < 0


def test_wrong_entry_count():
    with pytest.raises(ValueError):
        ExactMatrix(2, 2, [1, 2, 3])


def test_rational_rows(backend):
    rows = [[F(1, 2), F(1, 3)], [F(3, 2), 1]]
    assert rank_of_rows(rows, 2) == 1
    (v,) = nullspace_of_rows(rows, 2)
    assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


def test_big_entries_fall_back_to_objects(backend):
    big = 2 ** 80
    rows = [[big, 1, 0], [1, big, 1], [big + 1, big + 1, 1]]
    assert rank_of_rows(rows, 3) == 2
    for v in nullspace_of_rows(rows, 3):
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


def test_int64_overflow_mid_elimination(backend):
    # entries fit in int64 but the Bareiss products do not
    a = 3 * 10 ** 9
    rows = [[a, a + 1, 7, 1], [a - 1, a, 5, 2], [a + 3, 11, a, 3]]
    assert rank_of_rows(rows, 4) == 3


@pytest.mark.skipif(not kernel.compiled_available(), reason="extension not built")
def test_backends_agree_on_random_matrices():
    from hilbpts.kernel import _kernels
    rng = random.Random(7)
    for _ in range(200):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        rows = [[rng.randint(-5, 5) if rng.random() < 0.6 else 0 for _ in range(c)] for _ in range(r)]
        a = _kernels_py.echelon([list(x) for x in rows], c)
        b = _kernels.echelon([list(x) for x in rows], c)
        assert list(a[1]) == list(b[1])
        n = len(a[1])
        assert [list(x) for x in a[0][:n]] == [list(x) for x in b[0][:n]]


def test_use_backend_rejects_unknown():
    with pytest.raises(ValueError):
        kernel.use_backend("gpu")


def test_echelon_drops_zero_rows(backend):
    ech, piv = echelon_rows([[0, 0], [0, 3]], 2)
    assert piv == [1] and len(ech) == 1


rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@st.composite
def matrices(draw):
    r = draw(st.integers(1, 6))
    c = draw(st.integers(1, 6))
    return [[draw(rationals) for _ in range(c)] for _ in range(r)], c


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_plus_nullity(data):
    rows, c = data
    m = ExactMatrix.from_rows(rows, c)
    null = mat_nullspace(m)
    assert mat_rank(m) + len(null) == c
    for v in null:
        assert all(x == 0 for x in m.apply(v))
    if null:
        assert mat_rank(ExactMatrix.from_rows([list(v) for v in null], c)) == len(null)


@settings(max_examples=60, deadline=None)
@given(matrices(), st.randoms(use_true_random=False), rationals.filter(bool))
def test_rank_invariant_under_row_operations(data, rnd, scale):
    rows, c = data
    r = mat_rank(ExactMatrix.from_rows(rows, c))
    shuffled = list(rows)
    rnd.shuffle(shuffled)
    shuffled[0] = [x * scale for x in shuffled[0]]
    assert mat_rank(ExactMatrix.from_rows(shuffled, c)) == r
