import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from torsion_gamma.errors import NotInAlgebra
from torsion_gamma.exact import Matrix
from torsion_gamma.lie import LieAlgebraSpec, cn_span_dimension, rank_mod_p, square_zero_decompose


@pytest.mark.parametrize("family,m,dim", [("sl", 2, 3), ("sl", 3, 8), ("sp", 1, 3), ("sp", 2, 10), ("so", 3, 3)])
def test_basis_dimension(family, m, dim):
    spec = LieAlgebraSpec(family, m, 5)
    assert spec.dimension == dim
    assert len(rank_mod_p(spec.basis.reshape(dim, -1), 5)) == dim
    for X in spec.basis:
        assert spec.contains(Matrix.from_numpy(spec.ring, X))


@pytest.mark.parametrize("family,m,ell,dim", [
    ("sl", 2, 5, 3), ("sl", 3, 5, 8), ("sp", 1, 5, 3), ("sp", 2, 3, 10), ("so", 3, 3, 0), ("so", 3, 5, 0),
])
def test_cn_span(family, m, ell, dim):
    assert cn_span_dimension(LieAlgebraSpec(family, m, ell)) == dim


def test_so3_has_no_nonzero_square_zero_elements():
    # direct check: X skew 3x3 with entries (a, b, c) has X^2 = 0 only for X = 0 mod 3
    p = 3
    for a in range(p):
        for b in range(p):
            for c in range(p):
                X = np.array([[0, a, b], [-a, 0, c], [-b, -c, 0]])
                if not np.any((X @ X) % p):
                    assert (a, b, c) == (0, 0, 0)


def test_sl2_decomposition_example():
    spec = LieAlgebraSpec("sl", 2, 5)
    R = spec.ring
    X = Matrix.from_rows(R, [[1, 1], [0, 4]])
    terms = square_zero_decompose(X, spec)
    assert terms == [
        Matrix.from_rows(R, [[1, 1], [4, 4]]),
        Matrix.from_rows(R, [[0, 0], [0, 0]]),
        Matrix.from_rows(R, [[0, 0], [1, 0]]),
    ]


def test_zero_decomposes_to_nothing():
    spec = LieAlgebraSpec("sp", 2, 5)
    assert square_zero_decompose(Matrix.zeros(spec.ring, 4, 4), spec) == []


def test_decompose_rejects_outside():
    spec = LieAlgebraSpec("sl", 2, 5)
    with pytest.raises(NotInAlgebra):
        square_zero_decompose(Matrix.from_rows(spec.ring, [[1, 0], [0, 1]]), spec)
    with pytest.raises(NotInAlgebra):
        square_zero_decompose(Matrix.zeros(spec.ring, 3, 3), LieAlgebraSpec("so", 3, 5))


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([("sl", 2, 5), ("sl", 3, 3), ("sl", 4, 5), ("sp", 1, 5),
                                               ("sp", 2, 5), ("sp", 3, 3), ("sp", 2, 2), ("sl", 3, 2)]))
def test_decomposition_postconditions(seed, case):
    rng = random.Random(seed)
    spec = LieAlgebraSpec(*case)
    p = spec.ell
    coeffs = np.array([rng.randrange(p) for _ in range(spec.dimension)], dtype=np.int64)
    X = Matrix.from_numpy(spec.ring, np.tensordot(coeffs, spec.basis, axes=1) % p)
    terms = square_zero_decompose(X, spec)
    total = Matrix.zeros(spec.ring, spec.size, spec.size)
    for T in terms:
        assert spec.contains(T)
        assert (T @ T).is_zero()
        total = total + T
    assert total == X
