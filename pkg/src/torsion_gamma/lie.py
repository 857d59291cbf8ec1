"""The Lie algebras sl_m, sp_2m and so_m over F_l and the square-zero
(CN) property: the algebra is spanned by matrices X with X^2 = 0."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DimensionMismatch, NotInAlgebra, TooLarge
from .exact.matrix import Matrix
from .exact.rings import ModRing, is_prime
from .groups import ENUMERATION_LIMIT, symplectic_J

LIE_FAMILIES = ("sl", "sp", "so")


@dataclass(frozen=True)
class LieAlgebraSpec:
    """family sl (m x m, trace zero), sp (2m x 2m, JX symmetric) or so
    (m x m, skew) over F_ell."""

    family: str
    m: int
    ell: int

    def __post_init__(self):
        if self.family not in LIE_FAMILIES:
            raise ValueError(f"family must be one of {LIE_FAMILIES}")
        if self.m < 1:
            raise DimensionMismatch("m must be positive")
        if not is_prime(self.ell):
            raise ValueError(f"{self.ell} is not prime")
        if self.family == "so" and self.ell == 2:
            raise ValueError("so_m is not modeled in characteristic 2")

    @property
    def size(self) -> int:
        return 2 * self.m if self.family == "sp" else self.m

    @property
    def ring(self) -> ModRing:
        return ModRing(self.ell, 1)

    @cached_property
    def basis(self) -> np.ndarray:
        """Basis of the algebra as an array (dim, size, size)."""
        n = self.size
        out = []

        def unit(entries):
            X = np.zeros((n, n), dtype=np.int64)
            for (i, j), v in entries.items():
                X[i, j] = v % self.ell
            return X

        if self.family == "sl":
            for i in range(n):
                for j in range(n):
                    if i != j:
                        out.append(unit({(i, j): 1}))
            for i in range(n - 1):
                out.append(unit({(i, i): 1, (i + 1, i + 1): -1}))
        elif self.family == "so":
            for i in range(n):
                for j in range(i + 1, n):
                    out.append(unit({(i, j): 1, (j, i): -1}))
        else:
            m = self.m
            for i in range(m):
                for j in range(m):
                    out.append(unit({(i, j): 1, (m + j, m + i): -1}))
            for i in range(m):
                for j in range(i, m):
                    out.append(unit({(i, m + j): 1, (j, m + i): 1}))
            for i in range(m):
                for j in range(i, m):
                    out.append(unit({(m + i, j): 1, (m + j, i): 1}))
        return np.array(out, dtype=np.int64).reshape(len(out), n, n)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def contains(self, X: Matrix) -> bool:
        if X.shape != (self.size, self.size):
            return False
        a = X.to_numpy() % self.ell
        if self.family == "sl":
            return int(np.trace(a)) % self.ell == 0
        if self.family == "so":
            return bool(np.all((a + a.T) % self.ell == 0))
        J = symplectic_J(ModRing(self.ell, 1), self.m).to_numpy()
        JX = (J @ a) % self.ell
        return bool(np.all(JX == JX.T))


def rank_mod_p(rows: np.ndarray, p: int) -> np.ndarray:
    """Row-reduced echelon rows (nonzero only) of an integer matrix mod p."""
    a = np.array(rows, dtype=np.int64) % p
    if a.size == 0:
        return a.reshape(0, a.shape[1] if a.ndim == 2 else 0)
    r = 0
    for c in range(a.shape[1]):
        if r == a.shape[0]:
            break
        nz = np.nonzero(a[r:, c])[0]
        if len(nz) == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        factors = a[:, c].copy()
        factors[r] = 0
        a = (a - factors[:, None] * a[r][None, :]) % p
        r += 1
    return a[:r]


def cn_span_dimension(spec: LieAlgebraSpec, chunk: int = 200_000) -> int:
    """Dimension of the span of the square-zero elements of the algebra."""
    p = spec.ell
    B = spec.basis
    D = len(B)
    total = p**D
    if total > ENUMERATION_LIMIT:
        raise TooLarge(f"{spec.family}_{spec.size} over F_{p} has {total} elements")
    n = spec.size
    flatB = B.reshape(D, -1)
    powers = p ** np.arange(D - 1, -1, -1, dtype=np.int64)
    span = np.zeros((0, n * n), dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        coeffs = (idx[:, None] // powers[None, :]) % p
        X = (coeffs @ flatB) % p
        Xm = X.reshape(-1, n, n)
        sq = np.matmul(Xm, Xm) % p
        zero = ~np.any(sq.reshape(len(sq), -1), axis=1)
        cand = X[zero]
        if len(cand):
            span = rank_mod_p(np.concatenate([span, cand]), p)
        if len(span) == D:
            break
    return len(span)


def _sl2_terms(R, a, b, c) -> list[list[list[int]]]:
    """[[a, b], [c, -a]] as a sum of three square-zero matrices."""
    return [
        [[a, 1], [R.neg(R.mul(a, a)), R.neg(a)]],
        [[0, R.sub(b, 1)], [0, 0]],
        [[0, 0], [R.add(c, R.mul(a, a)), 0]],
    ]


def _embed(n: int, block, at: tuple[int, int]) -> list[list[int]]:
    out = [[0] * n for _ in range(n)]
    i, j = at
    out[i][i], out[i][j] = block[0][0], block[0][1]
    out[j][i], out[j][j] = block[1][0], block[1][1]
    return out


def _sl_decompose(R, X: list[list[int]]) -> list[list[list[int]]]:
    n = len(X)
    if n == 1:
        return []
    if n == 2:
        return _sl2_terms(R, X[0][0], X[0][1], X[1][0])
    terms = []
    for i in range(n):
        for j in range(n):
            if i != j and X[i][j]:
                T = [[0] * n for _ in range(n)]
                T[i][j] = X[i][j]
                terms.append(T)
    # trace-zero diagonal: sum_k t_k (E_kk - E_{k+1,k+1}) with prefix sums t_k
    t = 0
    for k in range(n - 1):
        t = R.add(t, X[k][k])
        if t:
            for block in _sl2_terms(R, t, 0, 0):
                if any(any(r) for r in block):
                    terms.append(_embed(n, block, (k, k + 1)))
    return terms


def square_zero_decompose(X: Matrix, spec: LieAlgebraSpec) -> list[Matrix]:
    """Square-zero matrices in the algebra summing to X.

    For sl_2 this is the explicit three-term identity (zero terms kept).
    Larger sl_m split into single off-diagonal entries plus the identity on
    consecutive diagonal pairs.  For sp_2m, X splits into the two
    symmetric off-diagonal blocks, a multiple of the corner matrix
    [[d, d], [-d, -d]] with d = E_11 carrying the trace of the top-left
    block, and diag(U, -U^T) with U of trace zero, decomposed through sl_m.
    """
    if spec.family == "so":
        raise NotInAlgebra("so_m is not spanned by square-zero matrices")
    R = spec.ring
    if X.ring != R:
        X = Matrix(R, X.rows, X.cols, X.entries)
    if not spec.contains(X):
        raise NotInAlgebra(f"matrix is not in {spec.family}_{spec.size}")
    if X.is_zero():
        return []
    rows = X.to_rows()
    if spec.family == "sl":
        return [Matrix.from_rows(R, T, spec.size) for T in _sl_decompose(R, rows)]
    m = spec.m
    n = 2 * m
    A = [r[:m] for r in rows[:m]]
    Bm = [r[m:] for r in rows[:m]]
    C = [r[:m] for r in rows[m:]]
    tr = 0
    for i in range(m):
        tr = R.add(tr, A[i][i])
    out: list[list[list[int]]] = []
    B2 = [r[:] for r in Bm]
    C2 = [r[:] for r in C]
    U = [r[:] for r in A]
    if tr:
        B2[0][0] = R.sub(B2[0][0], tr)
        C2[0][0] = R.add(C2[0][0], tr)
        U[0][0] = R.sub(U[0][0], tr)
        corner = [[0] * n for _ in range(n)]
        corner[0][0] = corner[0][m] = tr
        corner[m][0] = corner[m][m] = R.neg(tr)
        out.append(corner)
    if any(any(r) for r in B2):
        T = [[0] * n for _ in range(n)]
        for i in range(m):
            T[i][m:] = B2[i]
        out.append(T)
    if any(any(r) for r in C2):
        T = [[0] * n for _ in range(n)]
        for i in range(m):
            T[m + i][:m] = C2[i]
        out.append(T)
    for S in _sl_decompose(R, U):
        if not any(any(r) for r in S):
            continue
        T = [[0] * n for _ in range(n)]
        for i in range(m):
            for j in range(m):
                T[i][j] = S[i][j]
                T[m + j][m + i] = R.neg(S[i][j])
        out.append(T)
    return [Matrix.from_rows(R, T, n) for T in out]
