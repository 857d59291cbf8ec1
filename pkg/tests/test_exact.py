import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from torsion_gamma.errors import NonInvertible, NotPrime, UnsupportedDegree
from torsion_gamma.exact import (
    BigRational,
    FiniteField,
    Matrix,
    ModRing,
    ff_make,
    howell_basis,
    howell_form,
    mat_inverse,
    row_span,
    smith_form,
    solve_affine,
)
from torsion_gamma.exact.matrix import determinant, pad_rows
from torsion_gamma.exact.rings import smallest_irreducible

RINGS = [ModRing(ell, n) for ell in (2, 3, 5) for n in (1, 2, 3)]
FIELDS = [ff_make(ell, f) for ell in (2, 3, 5) for f in (1, 2, 3)]


def ring_and_elems(rings, k):
    return st.sampled_from(rings).flatmap(
        lambda R: st.tuples(st.just(R), *[st.integers(0, R.size - 1) for _ in range(k)])
    )


# rings

@given(ring_and_elems(RINGS + FIELDS, 3))
def test_ring_axioms(args):
    R, a, b, c = args
    assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
    assert R.add(R.add(a, b), c) == R.add(a, R.add(b, c))
    assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    assert R.mul(a, b) == R.mul(b, a)
    assert R.add(a, R.neg(a)) == R.zero
    assert R.mul(a, R.one) == a


@given(ring_and_elems(RINGS + FIELDS, 1))
def test_unit_inverse(args):
    R, a = args
    if R.is_unit(a):
        assert R.mul(a, R.inv(a)) == R.one
    else:
        with pytest.raises(NonInvertible):
            R.inv(a)


def test_modring_units_match_gcd():
    for R in RINGS:
        for a in R.elements():
            assert R.is_unit(a) == (math.gcd(a, R.modulus) == 1)


def test_construction_errors():
    with pytest.raises(NotPrime):
        ModRing(4, 1)
    with pytest.raises(NotPrime):
        ff_make(6, 1)
    with pytest.raises(UnsupportedDegree):
        ff_make(2, 5)
    with pytest.raises(UnsupportedDegree):
        ModRing(2, 7)


def test_prime_field():
    F = ff_make(3, 1)
    assert F.size == 3 and len(list(F.elements())) == 3


def test_gf4_modulus():
    # x^2 + x + 1 is the only irreducible monic quadratic over F_2
    assert smallest_irreducible(2, 2) == (1, 1, 1)
    F = ff_make(2, 2)
    assert F.size == 4


def _poly_has_root(poly, p):
    return any(sum(c * x**k for k, c in enumerate(poly)) % p == 0 for x in range(p))


@pytest.mark.parametrize("p,f", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (2, 4), (3, 4)])
def test_modulus_is_smallest_irreducible(p, f):
    # oracle: irreducible means no factor of degree <= f/2, checked by
    # multiplying out all monic pairs of complementary degree
    def irreducible(poly):
        if f <= 3:
            return not _poly_has_root(poly, p)
        products = set()
        for d in range(1, f // 2 + 1):
            for a in itertools.product(range(p), repeat=d):
                for b in itertools.product(range(p), repeat=f - d):
                    A, B = list(a) + [1], list(b) + [1]
                    prod = [0] * (f + 1)
                    for i, x in enumerate(A):
                        for j, y in enumerate(B):
                            prod[i + j] = (prod[i + j] + x * y) % p
                    products.add(tuple(prod))
        return tuple(poly) not in products

    mod = smallest_irreducible(p, f)
    assert len(mod) == f + 1 and mod[-1] == 1
    assert irreducible(mod)
    # every lexicographically smaller candidate (constant term most significant) is reducible
    for low in itertools.product(range(p), repeat=f):
        cand = tuple(low) + (1,)
        if cand == mod:
            break
        assert not irreducible(cand)


@pytest.mark.parametrize("p,f", [(3, 2), (2, 3), (5, 2), (2, 4)])
def test_multiplicative_group_cyclic(p, f):
    F = ff_make(p, f)
    q = p**f

    def order(x):
        k, y = 1, x
        while y != F.one:
            y = F.mul(y, x)
            k += 1
        return k

    orders = [order(x) for x in F.elements() if x != F.zero]
    assert len(orders) == q - 1
    assert max(orders) == q - 1


@given(st.integers(-10**30, 10**30), st.integers(1, 10**30), st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_bigrational_canonical(a, b, c, d):
    x, y = BigRational(a, b), BigRational(c, d)
    for z in (x + y, x - y, x * y):
        assert z.denominator > 0
        assert math.gcd(abs(z.numerator), z.denominator) == 1
    assert BigRational(0, 5) == BigRational(0, 1) and BigRational(0, 5).denominator == 1


# matrices

def test_inverse_examples():
    F5 = ff_make(5, 1)
    M = Matrix.from_rows(F5, [[2, 0], [0, 3]])
    assert mat_inverse(M) == Matrix.from_rows(F5, [[3, 0], [0, 2]])
    I = Matrix.identity(ModRing(3, 2), 3)
    assert mat_inverse(I) == I
    with pytest.raises(NonInvertible):
        mat_inverse(Matrix.from_rows(ModRing(3, 2), [[3, 0], [0, 3]]))


def _random_matrix(rng, R, rows, cols):
    return Matrix.from_rows(R, [[int(x) for x in rng.integers(0, R.size, cols)] for _ in range(rows)], cols)


@settings(max_examples=60)
@given(st.integers(0, 10**6), st.sampled_from([ModRing(3, 2), ModRing(2, 3), ModRing(5, 1), ff_make(2, 2)]),
       st.integers(1, 4))
def test_inverse_roundtrip(seed, R, n):
    rng = np.random.default_rng(seed)
    M = _random_matrix(rng, R, n, n)
    if R.is_unit(determinant(M)):
        assert M @ mat_inverse(M) == Matrix.identity(R, n)
    else:
        with pytest.raises(NonInvertible):
            mat_inverse(M)


def _det_oracle(R, rows):
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = (-1) ** inv
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total % R.modulus


@settings(max_examples=60)
@given(st.integers(0, 10**6), st.sampled_from([ModRing(3, 2), ModRing(2, 3), ModRing(7, 1)]), st.integers(1, 6))
def test_determinant_matches_leibniz(seed, R, n):
    rng = np.random.default_rng(seed)
    M = _random_matrix(rng, R, n, n)
    assert determinant(M) == _det_oracle(R, M.to_rows())


def test_howell_examples():
    R = ModRing(3, 2)
    I = Matrix.identity(R, 2)
    H, U = howell_form(I)
    assert H == I and U == I
    M = Matrix.from_rows(R, [[3, 0], [0, 1]])
    H, U = howell_form(M)
    assert row_span(H) == row_span(M)
    assert H == Matrix.from_rows(R, [[3, 0], [0, 1]])
    R8 = ModRing(2, 3)
    M = Matrix.from_rows(R8, [[2, 4]])
    B = howell_basis(M)
    assert B.to_rows()[0][0] == 2
    assert row_span(B) == {((2 * a) % 8, (4 * a) % 8) for a in range(8)}


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_howell_span_and_idempotence(seed):
    rng = np.random.default_rng(seed)
    R = ModRing(3, 2)
    M = _random_matrix(rng, R, 2, 4)
    H, U = howell_form(M)
    assert row_span(H) == row_span(M)
    assert U @ pad_rows(M, H.rows) == H
    assert R.is_unit(determinant(U))
    assert howell_form(H)[0] == H


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([ModRing(3, 2), ModRing(2, 3), ModRing(2, 2)]))
def test_howell_depends_only_on_span(seed, R):
    rng = np.random.default_rng(seed)
    M = _random_matrix(rng, R, 3, 3)
    # mix rows by a random invertible matrix and append a redundant row
    while True:
        T = _random_matrix(rng, R, 3, 3)
        if R.is_unit(determinant(T)):
            break
    N = T @ M
    rows = N.to_rows()
    rows.append([R.add(a, b) for a, b in zip(rows[0], rows[1])])
    N2 = Matrix.from_rows(R, rows, 3)
    assert howell_basis(M) == howell_basis(N2)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([ModRing(3, 2), ModRing(2, 3), ModRing(5, 2)]),
       st.integers(1, 4), st.integers(1, 4))
def test_smith_form(seed, R, rows, cols):
    rng = np.random.default_rng(seed)
    M = _random_matrix(rng, R, rows, cols)
    U, D, V = smith_form(M)
    assert U @ M @ V == D
    assert R.is_unit(determinant(U)) and R.is_unit(determinant(V))
    diag = [D[i, i] for i in range(min(rows, cols))]
    vals = [R.valuation(d) for d in diag]
    assert vals == sorted(vals)
    for i in range(rows):
        for j in range(cols):
            if i != j:
                assert D[i, j] == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_solve_affine_matches_enumeration(seed):
    rng = np.random.default_rng(seed)
    R = ModRing(2, 2)
    A = _random_matrix(rng, R, 2, 3)
    b = [int(x) for x in rng.integers(0, 4, 2)]
    brute = sorted(
        x for x in itertools.product(range(4), repeat=3)
        if all(sum(A[i, j] * x[j] for j in range(3)) % 4 == b[i] for i in range(2))
    )
    sol = solve_affine(A, b)
    if not brute:
        assert sol is None
    else:
        assert [tuple(int(v) for v in row) for row in sol.as_array()] == brute
        assert sol.count == len(brute)
