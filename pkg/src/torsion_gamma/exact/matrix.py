"""Dense matrices over chain rings and their normal forms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from ..errors import DimensionMismatch, NonInvertible


class Matrix:
    """Immutable dense matrix over a ModRing or FiniteField."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring, rows: int, cols: int, entries: Iterable[int]):
        entries = tuple(ring.normalize(x) for x in entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise DimensionMismatch(f"{len(entries)} entries for a {rows}x{cols} matrix")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, key, value):
        raise AttributeError("Matrix is immutable")

    # constructors
    @classmethod
    def from_rows(cls, ring, rows: Sequence[Sequence[int]], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(ring, len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def identity(cls, ring, n: int) -> "Matrix":
        return cls(ring, n, n, [ring.one if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, ring, rows: int, cols: int) -> "Matrix":
        return cls(ring, rows, cols, [0] * (rows * cols))

    @classmethod
    def from_numpy(cls, ring, arr) -> "Matrix":
        arr = np.asarray(arr)
        return cls(ring, arr.shape[0], arr.shape[1], (int(x) for x in arr.ravel()))

    # access
    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def to_numpy(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.rows, self.cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.ring == other.ring
            and self.shape == other.shape
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.ring, self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"Matrix({self.ring!r}, {self.to_rows()})"

    # arithmetic
    def _check_same(self, other: "Matrix"):
        if self.ring != other.ring or self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        R = self.ring
        return Matrix(R, self.rows, self.cols, (R.add(a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        R = self.ring
        return Matrix(R, self.rows, self.cols, (R.sub(a, b) for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        R = self.ring
        return Matrix(R, self.rows, self.cols, (R.neg(a) for a in self.entries))

    def scale(self, c: int) -> "Matrix":
        R = self.ring
        return Matrix(R, self.rows, self.cols, (R.mul(c, a) for a in self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ring != other.ring or self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        R = self.ring
        out = []
        ocols = [other.col(j) for j in range(other.cols)]
        for i in range(self.rows):
            r = self.row(i)
            for c in ocols:
                acc = 0
                for a, b in zip(r, c):
                    if a and b:
                        acc = R.add(acc, R.mul(a, b))
                out.append(acc)
        return Matrix(R, self.rows, other.cols, out)

    def transpose(self) -> "Matrix":
        return Matrix(self.ring, self.cols, self.rows, (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def is_zero(self) -> bool:
        return not any(self.entries)

    def det(self):
        return determinant(self)

    def inverse(self) -> "Matrix":
        return mat_inverse(self)


def block_diag_scalar(ring, g: int, a, b) -> Matrix:
    """diag(a I_g, b I_g)."""
    return Matrix(ring, 2 * g, 2 * g, [
        (a if i < g else b) if i == j else 0 for i in range(2 * g) for j in range(2 * g)
    ])


# row helpers on mutable lists
def _row_axpy(R, dst: list, src: list, c):
    """dst += c * src in place."""
    if c == 0:
        return
    for k, x in enumerate(src):
        if x:
            dst[k] = R.add(dst[k], R.mul(c, x))


def _row_scale(R, row: list, c):
    for k, x in enumerate(row):
        if x:
            row[k] = R.mul(c, x)


def _cofactor_det(R, a: list[list[int]]):
    n = len(a)
    if n == 0:
        return R.one
    if n == 1:
        return a[0][0]
    total = 0
    for j in range(n):
        if a[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in a[1:]]
        term = R.mul(a[0][j], _cofactor_det(R, minor))
        total = R.add(total, term) if j % 2 == 0 else R.sub(total, term)
    return total


def determinant(M: Matrix):
    """Determinant: cofactor expansion up to size 4, elimination above.

    The elimination pivots on a minimal-valuation entry of each column, so
    every subtraction uses an exact quotient and the determinant is tracked
    without division by zero divisors.
    """
    if M.rows != M.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    R = M.ring
    a = M.to_rows()
    n = M.rows
    if n <= 4:
        return _cofactor_det(R, a)
    det = R.one
    for c in range(n):
        piv = min(range(c, n), key=lambda i: (R.valuation(a[i][c]), i))
        v = R.valuation(a[piv][c])
        if v >= R.depth:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = R.neg(det)
        u_inv = R.inv(R.unit_part(a[c][c]))
        for i in range(c + 1, n):
            if a[i][c]:
                t = R.mul(R.divide_pi(a[i][c], v), u_inv)
                _row_axpy(R, a[i], a[c], R.neg(t))
        det = R.mul(det, a[c][c])
    return det


def mat_inverse(M: Matrix) -> Matrix:
    """Inverse by Gauss-Jordan elimination with unit pivots."""
    if M.rows != M.cols:
        raise DimensionMismatch("inverse of a non-square matrix")
    R = M.ring
    n = M.rows
    a = M.to_rows()
    inv = Matrix.identity(R, n).to_rows()
    for c in range(n):
        piv = next((i for i in range(c, n) if R.is_unit(a[i][c])), None)
        if piv is None:
            raise NonInvertible("determinant is not a unit")
        a[c], a[piv] = a[piv], a[c]
        inv[c], inv[piv] = inv[piv], inv[c]
        u = R.inv(a[c][c])
        _row_scale(R, a[c], u)
        _row_scale(R, inv[c], u)
        for i in range(n):
            if i != c and a[i][c]:
                t = R.neg(a[i][c])
                _row_axpy(R, a[i], a[c], t)
                _row_axpy(R, inv[i], inv[c], t)
    return Matrix.from_rows(R, inv, n)


def _howell_rows(M: Matrix) -> list[list[int]]:
    """Nonzero rows of the Howell form of M, top to bottom."""
    R = M.ring
    n = R.depth
    width = M.cols
    # one spare zero row per column: each pivot inserts at most one
    # annihilator row, so a free slot always exists below the pivot
    a = M.to_rows() + [[0] * width for _ in range(width)]
    pivots: list[tuple[int, int, int]] = []  # (row, col, valuation)
    r = 0
    for c in range(width):
        piv = min(range(r, len(a)), key=lambda i: (R.valuation(a[i][c]), i))
        v = R.valuation(a[piv][c])
        if v >= n:
            continue
        a[r], a[piv] = a[piv], a[r]
        _row_scale(R, a[r], R.inv(R.unit_part(a[r][c])))
        for i in range(r + 1, len(a)):
            if a[i][c]:
                _row_axpy(R, a[i], a[r], R.neg(R.divide_pi(a[i][c], v)))
        if v > 0:
            ann = [R.mul(R.pi_power(n - v), x) for x in a[r]]
            if any(ann):
                slot = next(i for i in range(r + 1, len(a)) if not any(a[i]))
                a[slot] = ann
        pivots.append((r, c, v))
        r += 1
    for p, c, v in pivots:
        for i in range(p):
            q, _ = R.reduce_mod_pi(a[i][c], v)
            if q:
                _row_axpy(R, a[i], a[p], R.neg(q))
    return a[:r]


def howell_form(M: Matrix) -> tuple[Matrix, Matrix]:
    """Howell normal form H and an invertible U with U @ M' = H.

    H has max(rows, cols) rows; M' is M padded with zero rows to that size
    (so M' = M whenever M has at least as many rows as columns).  The
    padding is needed because a span such as {(3a, a)} over Z/9 has a
    two-row Howell form.  Pivots are powers l^v, rows are sorted by pivot
    column, zero rows come last and entries above a pivot are reduced
    modulo it.  H depends only on the row span of M.
    """
    R = M.ring
    p = max(M.rows, M.cols)
    rows = _howell_rows(M)
    H = Matrix.from_rows(R, rows + [[0] * M.cols for _ in range(p - len(rows))], M.cols)
    Mp = pad_rows(M, p)
    # G = U1 M' lists an invariant-factor basis g_1..g_mu followed by zeros
    U1, D, V1 = smith_form(Mp)
    G = U1 @ Mp
    mu = sum(1 for v in smith_valuations(D) if v < R.depth)
    gens = Matrix.from_rows(R, [G.row(i) for i in range(mu)], M.cols)
    # rows of H in terms of the g_i
    A = []
    for i in range(p):
        sol = solve_affine(gens.transpose(), H.row(i)) if mu else None
        A.append(list(sol.particular) if sol is not None else [0] * mu)
    # complete A (p x mu) to an invertible matrix: its reduction mod the
    # maximal ideal has rank mu, so some mu rows form a unit minor
    chosen: list[int] = []
    for i in range(p):
        trial = Matrix.from_rows(R, [A[j] for j in chosen + [i]], mu)
        _, Dt, _ = smith_form(trial)
        if all(v == 0 for v in smith_valuations(Dt)) and len(smith_valuations(Dt)) == len(chosen) + 1:
            chosen.append(i)
        if len(chosen) == mu:
            break
    others = [i for i in range(p) if i not in chosen]
    U2 = [A[i] + [R.one if others[j] == i else 0 for j in range(p - mu)] for i in range(p)]
    U = Matrix.from_rows(R, U2, p) @ U1
    return H, U


def howell_basis(M: Matrix) -> Matrix:
    """Nonzero rows of the Howell form: a canonical key for the row span."""
    H, _ = howell_form(M)
    rows = [r for r in H.to_rows() if any(r)]
    return Matrix.from_rows(M.ring, rows, M.cols)


def pad_rows(M: Matrix, rows: int) -> Matrix:
    """M with zero rows appended up to the given count."""
    if rows <= M.rows:
        return M
    return Matrix(M.ring, rows, M.cols, M.entries + (0,) * ((rows - M.rows) * M.cols))


def smith_form(M: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Smith form (U, D, V): U @ M @ V = D, U and V invertible.

    D is diagonal with entries l^{v_1}, l^{v_2}, ... of nondecreasing
    valuation, followed by zeros.
    """
    R = M.ring
    n = R.depth
    a = M.to_rows()
    k, m = M.rows, M.cols
    u = Matrix.identity(R, k).to_rows()
    # V is kept transposed so column operations become row operations
    vt = Matrix.identity(R, m).to_rows()
    for t in range(min(k, m)):
        best = None
        for i in range(t, k):
            for j in range(t, m):
                if a[i][j]:
                    val = R.valuation(a[i][j])
                    if best is None or val < best[0]:
                        best = (val, i, j)
                        if val == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        v, i, j = best
        a[t], a[i] = a[i], a[t]
        u[t], u[i] = u[i], u[t]
        if j != t:
            for row in a:
                row[t], row[j] = row[j], row[t]
            vt[t], vt[j] = vt[j], vt[t]
        s = R.inv(R.unit_part(a[t][t]))
        _row_scale(R, a[t], s)
        _row_scale(R, u[t], s)
        for i2 in range(t + 1, k):
            if a[i2][t]:
                c = R.neg(R.divide_pi(a[i2][t], v))
                _row_axpy(R, a[i2], a[t], c)
                _row_axpy(R, u[i2], u[t], c)
        for j2 in range(t + 1, m):
            if a[t][j2]:
                c = R.neg(R.divide_pi(a[t][j2], v))
                for row in a:
                    if row[t]:
                        row[j2] = R.add(row[j2], R.mul(c, row[t]))
                _row_axpy(R, vt[j2], vt[t], c)
    D = Matrix.from_rows(R, a, m)
    return Matrix.from_rows(R, u, k), D, Matrix.from_rows(R, vt, m).transpose()


def smith_valuations(D: Matrix) -> list[int]:
    """Valuations of the diagonal of a Smith form (depth for zero entries)."""
    R = D.ring
    return [R.valuation(D[i, i]) for i in range(min(D.rows, D.cols))]


@dataclass(frozen=True)
class AffineSolution:
    """All x = particular + sum_j t_j * direction_j with t_j in reps_j."""

    ring: object
    particular: tuple
    directions: tuple  # tuple of (vector tuple, reps list)

    @property
    def count(self) -> int:
        c = 1
        for _, reps in self.directions:
            c *= len(reps)
        return c

    def __iter__(self) -> Iterator[tuple]:
        R = self.ring
        dirs = [d for d, _ in self.directions]
        for ts in itertools.product(*(reps for _, reps in self.directions)):
            x = list(self.particular)
            for t, d in zip(ts, dirs):
                if t:
                    for k, y in enumerate(d):
                        if y:
                            x[k] = R.add(x[k], R.mul(t, y))
            yield tuple(x)

    def as_array(self) -> np.ndarray:
        """All solutions as an int64 array, sorted lexicographically."""
        R = self.ring
        sols = np.array([self.particular], dtype=np.int64)
        for d, reps in self.directions:
            if len(reps) == 1:
                continue
            t = np.array(reps, dtype=np.int64)
            step = R.vmul(t[:, None], np.array(d, dtype=np.int64)[None, :])
            sols = R.vadd(sols[:, None, :], step[None, :, :]).reshape(-1, len(d))
        if sols.shape[0] > 1:
            order = np.lexsort(sols.T[::-1])
            sols = sols[order]
        return sols


def solve_affine(A: Matrix, b: Sequence[int]) -> AffineSolution | None:
    """Every solution x of A x = b (column convention), or None if there are none."""
    R = A.ring
    n = R.depth
    if len(b) != A.rows:
        raise DimensionMismatch("right-hand side length does not match rows")
    U, D, V = smith_form(A)
    c = [0] * A.rows
    for i in range(A.rows):
        acc = 0
        for j in range(A.rows):
            if U[i, j] and b[j]:
                acc = R.add(acc, R.mul(U[i, j], R.normalize(b[j])))
        c[i] = acc
    vals = smith_valuations(D)
    y = [0] * A.cols
    dirs = []
    for i in range(A.cols):
        v = vals[i] if i < len(vals) else n
        if i < A.rows and v < n:
            if R.valuation(c[i]) < v:
                return None
            y[i] = R.divide_pi(c[i], v)
            if v > 0:
                dirs.append((tuple(R.mul(R.pi_power(n - v), x) for x in V.col(i)), R.residue_reps(v)))
        else:
            if i < A.rows and c[i]:
                return None
            dirs.append((V.col(i), R.residue_reps(n)))
    for i in range(A.cols, A.rows):
        if c[i]:
            return None
    particular = []
    for r in range(A.cols):
        acc = 0
        for j in range(A.cols):
            if V[r, j] and y[j]:
                acc = R.add(acc, R.mul(V[r, j], y[j]))
        particular.append(acc)
    return AffineSolution(R, tuple(particular), tuple(dirs))


def vec_mat(R, x: Sequence[int], M: Matrix) -> tuple:
    """Row vector times matrix."""
    out = []
    for j in range(M.cols):
        acc = 0
        for i, xi in enumerate(x):
            if xi and M[i, j]:
                acc = R.add(acc, R.mul(xi, M[i, j]))
        out.append(acc)
    return tuple(out)


def dot(R, x: Sequence[int], y: Sequence[int]):
    acc = 0
    for a, b in zip(x, y):
        if a and b:
            acc = R.add(acc, R.mul(a, b))
    return acc


def row_span(M: Matrix) -> set[tuple]:
    """Exhaustive set of all linear combinations of the rows (small cases only)."""
    R = M.ring
    span = {tuple([0] * M.cols)}
    for r in M.to_rows():
        new = set()
        for t in R.elements():
            tv = tuple(R.mul(t, x) for x in r)
            for s in span:
                new.add(tuple(R.add(a, b) for a, b in zip(s, tv)))
        span = new
    return span
