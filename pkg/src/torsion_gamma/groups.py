"""Sp, GSp and SL over small finite rings.

Brute-force enumeration is the oracle for every index statement here, so
the enumerators are vectorized: the first rows of a matrix are chosen by
backtracking and the last row, which is cut out by linear equations, is
produced as a whole block of solutions.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidFiltration,
    InvariantViolation,
    NonUnitMultiplier,
    NotSimilitude,
    TooLarge,
    UnsupportedSize,
)
from .exact.matrix import Matrix, _cofactor_det, solve_affine, vec_mat
from .exact.rings import FiniteField, ModRing, is_prime

ENUMERATION_LIMIT = 10**7
FAMILIES = ("Sp", "GSp", "SL")


def symplectic_J(ring, g: int) -> Matrix:
    rows = [[0] * (2 * g) for _ in range(2 * g)]
    for i in range(g):
        rows[i][g + i] = 1
        rows[g + i][i] = ring.neg(1)
    return Matrix.from_rows(ring, rows, 2 * g)


@dataclass(frozen=True)
class GroupSpec:
    family: str
    g: int
    ring: object

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if self.g < 1:
            raise DimensionMismatch("g must be positive")
        if not isinstance(self.ring, (ModRing, FiniteField)):
            raise TypeError("ring must be a ModRing or FiniteField")

    @property
    def size(self) -> int:
        """Matrix size: 2g for Sp and GSp, g for SL."""
        return self.g if self.family == "SL" else 2 * self.g

    @cached_property
    def J(self) -> Matrix:
        return symplectic_J(self.ring, self.g)


# orders

def _sp_field_order(g: int, q: int) -> int:
    out = q ** (g * g)
    for i in range(1, g + 1):
        out *= q ** (2 * i) - 1
    return out


def _sl_field_order(m: int, q: int) -> int:
    out = q ** (m * (m - 1) // 2)
    for i in range(2, m + 1):
        out *= q**i - 1
    return out


def _prime_power(q: int) -> tuple[int, int] | None:
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                return None
            f, r = 0, q
            while r % p == 0:
                r //= p
                f += 1
            return (p, f) if r == 1 else None
    return None


def sp_order(g: int, q: int) -> int:
    """|Sp_{2g}(F_q)| = q^{g^2} prod_{i<=g} (q^{2i} - 1)."""
    if not (1 <= g <= 3 and 2 <= q <= 9) or _prime_power(q) is None:
        raise UnsupportedSize(f"sp_order needs g <= 3 and a prime power q <= 9, got g={g}, q={q}")
    return _sp_field_order(g, q)


def group_order(spec: GroupSpec) -> int:
    """Cardinality from closed formulas (the kernel of reduction mod l is a
    group of order l^{(n-1) dim})."""
    R = spec.ring
    if isinstance(R, FiniteField):
        q, lift = R.size, 1
        units = q - 1
    else:
        q, lift = R.ell, R.ell ** (R.n - 1)
        units = R.ell ** (R.n - 1) * (R.ell - 1)
    if spec.family == "SL":
        m = spec.g
        return _sl_field_order(m, q) * lift ** (m * m - 1)
    g = spec.g
    sp = _sp_field_order(g, q) * lift ** (2 * g * g + g)
    return sp if spec.family == "Sp" else sp * units


# membership

def multiplier(M: Matrix, g: int):
    """The scalar c with M^T J M = c J."""
    if M.shape != (2 * g, 2 * g):
        raise DimensionMismatch(f"expected a {2 * g}x{2 * g} matrix")
    J = symplectic_J(M.ring, g)
    P = M.transpose() @ J @ M
    c = P[0, g]
    if P != J.scale(c):
        raise NotSimilitude("M^T J M is not a multiple of J")
    return c


def is_in_group(M: Matrix, spec: GroupSpec) -> bool:
    if M.ring != spec.ring or M.shape != (spec.size, spec.size):
        raise DimensionMismatch(f"expected a {spec.size}x{spec.size} matrix over {spec.ring!r}")
    if spec.family == "SL":
        return M.det() == spec.ring.one
    if spec.family == "Sp":
        return M.transpose() @ spec.J @ M == spec.J
    try:
        c = multiplier(M, spec.g)
    except NotSimilitude:
        return False
    return spec.ring.is_unit(c)


# P_{r,s}

@dataclass(frozen=True)
class PrsSpec:
    r: int
    s: int
    g: int

    def __post_init__(self):
        if not (0 <= self.s <= self.r <= self.g):
            raise InvalidFiltration(f"need 0 <= s <= r <= g, got r={self.r}, s={self.s}, g={self.g}")

    @property
    def fixed_indices(self) -> list[int]:
        """0-based indices of the basis vectors fixed by P_{r,s}."""
        return list(range(self.r)) + [self.g + i for i in range(self.s)]


def prs_codim(p: PrsSpec) -> int:
    """Codimension of P_{r,s} in Sp_{2g}."""
    r, s, g = p.r, p.s, p.g
    return 2 * s * g + 2 * r * g - r * s - r * (r - 1) // 2 - s * (s - 1) // 2


def prs_codim_sum_form(p: PrsSpec) -> Fraction:
    """The same codimension written through r + s only."""
    t = p.r + p.s
    return (2 * p.g + Fraction(1, 2) - Fraction(t, 2)) * t


def prs_membership(M: Matrix, p: PrsSpec) -> bool:
    """M e_i = e_i for the basis vectors fixed by P_{r,s}."""
    if M.shape != (2 * p.g, 2 * p.g):
        raise DimensionMismatch("size mismatch")
    for i in p.fixed_indices:
        col = M.col(i)
        if any(c != (M.ring.one if k == i else 0) for k, c in enumerate(col)):
            return False
    return True


# enumeration

def _check_guard(spec: GroupSpec) -> int:
    count = group_order(spec)
    if count > ENUMERATION_LIMIT:
        raise TooLarge(f"{spec.family}_{spec.size} over {spec.ring!r} has {count} elements")
    return count


def _sorted_rows(arr: np.ndarray) -> np.ndarray:
    """Sort a stack of matrices lexicographically on row-major entries."""
    flat = arr.reshape(arr.shape[0], -1)
    order = np.lexsort(flat.T[::-1])
    return arr[order]


def _sp_array(ring, g: int) -> np.ndarray:
    d = 2 * g
    J = symplectic_J(ring, g)
    Jrows = J.to_rows()
    blocks: list[np.ndarray] = []
    all_vectors = _all_vectors(ring, d)

    def extend(prefix: list[tuple]):
        i = len(prefix)
        if i == 0:
            candidates = all_vectors
        else:
            A = Matrix.from_rows(ring, [vec_mat(ring, r, J) for r in prefix], d)
            sol = solve_affine(A, [Jrows[k][i] for k in range(i)])
            if sol is None:
                return
            candidates = sol.as_array()
        if i == d - 1:
            head = np.array(prefix, dtype=np.int64)
            block = np.empty((len(candidates), d, d), dtype=np.int64)
            block[:, :-1, :] = head
            block[:, -1, :] = candidates
            blocks.append(block)
            return
        for row in candidates:
            extend(prefix + [tuple(int(x) for x in row)])

    extend([])
    return np.concatenate(blocks) if blocks else np.zeros((0, d, d), dtype=np.int64)


def _all_vectors(ring, d: int) -> np.ndarray:
    q = ring.size
    idx = np.arange(q**d, dtype=np.int64)
    powers = q ** np.arange(d - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % q


def _sl_array(ring, m: int) -> np.ndarray:
    if m == 1:
        return np.array([[[ring.one]]], dtype=np.int64)
    blocks = []
    vecs = _all_vectors(ring, m)
    for head in itertools.product(range(len(vecs)), repeat=m - 1):
        prefix = [list(int(x) for x in vecs[k]) for k in head]
        cof = []
        for j in range(m):
            minor = [row[:j] + row[j + 1:] for row in prefix]
            c = _cofactor_det(ring, minor)
            cof.append(c if (m - 1 + j) % 2 == 0 else ring.neg(c))
        sol = solve_affine(Matrix.from_rows(ring, [cof], m), [ring.one])
        if sol is None:
            continue
        last = sol.as_array()
        block = np.empty((len(last), m, m), dtype=np.int64)
        block[:, :-1, :] = np.array(prefix, dtype=np.int64)
        block[:, -1, :] = last
        blocks.append(block)
    return np.concatenate(blocks)


def enumerate_array(spec: GroupSpec) -> np.ndarray:
    """All group elements as an (N, d, d) int64 array in lexicographic order."""
    _check_guard(spec)
    R = spec.ring
    if spec.family == "SL":
        return _sl_array(R, spec.g)
    sp = _sp_array(R, spec.g)
    if spec.family == "Sp":
        return sp
    g = spec.g
    parts = []
    for a in R.elements():
        if not R.is_unit(a) or a == 0:
            continue
        scaled = sp.copy()
        scaled[:, g:, :] = R.vmul(np.int64(a), scaled[:, g:, :])
        parts.append(scaled)
    return _sorted_rows(np.concatenate(parts))


def enumerate_group(spec: GroupSpec) -> Iterator[Matrix]:
    """Every element exactly once, lexicographic on row-major entries."""
    R = spec.ring
    for M in enumerate_array(spec):
        yield Matrix.from_numpy(R, M)


# congruence chains

@dataclass(frozen=True)
class CongruenceChain:
    """Constraints (P_{r_i,s_i}, m_i) with m_1 < ... < m_t and P_1 inside ... inside P_t."""

    ambient: GroupSpec
    constraints: tuple

    def __post_init__(self):
        cons = tuple((p, int(m)) for p, m in self.constraints)
        object.__setattr__(self, "constraints", cons)
        if self.ambient.family != "Sp" or not isinstance(self.ambient.ring, ModRing):
            raise DimensionMismatch("congruence chains live in Sp over Z/l^n")
        levels = [m for _, m in cons]
        if any(m < 1 for m in levels) or any(a >= b for a, b in zip(levels, levels[1:])):
            raise InvalidFiltration(f"levels must be positive and strictly increasing: {levels}")
        if levels and levels[-1] > self.ambient.ring.n:
            raise InvalidFiltration("top level exceeds the ambient precision")
        for (p, _), (q, _) in zip(cons, cons[1:]):
            if not (p.r >= q.r and p.s >= q.s):
                raise InvalidFiltration("constraint groups must increase with the level")
        for p, _ in cons:
            if p.g != self.ambient.g:
                raise DimensionMismatch("constraint and ambient disagree on g")


def predicted_exponent(chain: CongruenceChain) -> int:
    total, prev = 0, 0
    for p, m in chain.constraints:
        total += prs_codim(p) * (m - prev)
        prev = m
    return total


def constraint_mask(arr: np.ndarray, chain: CongruenceChain) -> np.ndarray:
    """Boolean mask of elements satisfying every constraint of the chain."""
    ell = chain.ambient.ring.ell
    d = arr.shape[1]
    mask = np.ones(arr.shape[0], dtype=bool)
    for p, m in chain.constraints:
        mod = ell**m
        for i in p.fixed_indices:
            target = np.zeros(d, dtype=np.int64)
            target[i] = 1
            col = arr[:, :, i] % mod
            mask &= np.all(col == target[None, :], axis=1)
    return mask


def congruence_index(chain: CongruenceChain) -> tuple[int, int]:
    """(exact index of the constrained subgroup, predicted exponent)."""
    arr = enumerate_array(chain.ambient)
    kept = int(constraint_mask(arr, chain).sum())
    return arr.shape[0] // kept, predicted_exponent(chain)


def parse_chain(text: str, g: int) -> list[tuple[PrsSpec, int]]:
    """Parse 'P(1,1)@1,P(1,0)@2' into constraint pairs."""
    out = []
    for r, s, m in re.findall(r"P\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*@\s*(\d+)", text):
        out.append((PrsSpec(int(r), int(s), g), int(m)))
    if not out:
        raise InvalidFiltration(f"no constraints found in {text!r}")
    return out


# D_0 factorization

def d0_factorize(M: Matrix, g: int):
    """(alpha, S) with M = diag(I_g, alpha I_g) S and S symplectic."""
    R = M.ring
    alpha = multiplier(M, g)
    if not R.is_unit(alpha):
        raise NonUnitMultiplier(f"multiplier {alpha} is not a unit")
    inv = R.inv(alpha)
    rows = M.to_rows()
    S = Matrix.from_rows(R, rows[:g] + [[R.mul(inv, x) for x in r] for r in rows[g:]], 2 * g)
    return alpha, S


def d0_matrix(ring, g: int, alpha) -> Matrix:
    return Matrix(ring, 2 * g, 2 * g, [
        (ring.one if i < g else alpha) if i == j else 0 for i in range(2 * g) for j in range(2 * g)
    ])


# closure and lifting

def _codes(arr: np.ndarray, q: int) -> np.ndarray:
    flat = arr.reshape(arr.shape[0], -1)
    width = flat.shape[1]
    if q**width >= 2**63:
        raise TooLarge("matrix encoding does not fit in 64 bits")
    powers = q ** np.arange(width - 1, -1, -1, dtype=np.int64)
    return flat @ powers


def closure_size(ring, gens: np.ndarray, limit: int = ENUMERATION_LIMIT) -> int:
    """Order of the group generated by invertible matrices, by breadth-first closure."""
    q = ring.size
    gens = np.asarray(gens, dtype=np.int64)
    codes = _codes(gens, q)
    codes, first = np.unique(codes, return_index=True)
    frontier = gens[first]
    known = codes
    gens = frontier
    chunk = max(1, 2_000_000 // max(1, len(gens)))
    while len(frontier):
        found = []
        for start in range(0, len(frontier), chunk):
            block = frontier[start:start + chunk]
            prod = ring.vmatmul(block[:, None, :, :], gens[None, :, :, :]).reshape(-1, *gens.shape[1:])
            c = _codes(prod, q)
            c, idx = np.unique(c, return_index=True)
            fresh = ~np.isin(c, known, assume_unique=True)
            found.append((c[fresh], prod[idx[fresh]]))
        if not found:
            break
        new_codes = np.concatenate([c for c, _ in found])
        new_elems = np.concatenate([e for _, e in found])
        new_codes, idx = np.unique(new_codes, return_index=True)
        frontier = new_elems[idx]
        known = np.union1d(known, new_codes)
        if len(known) > limit:
            raise TooLarge("closure exceeds the enumeration limit")
    return len(known)


@dataclass(frozen=True)
class LiftReport:
    generates_full: bool
    lemma_applies: bool
    surjective_mod_ell: bool
    closure_order: int
    group_order: int
    lifts: tuple


def canonical_lifts(spec: GroupSpec, gens_mod_ell: Sequence[Matrix]) -> list[np.ndarray]:
    """Lexicographically smallest lift in G(Z/l^n) of each generator.

    This is the entrywise residue lift whenever that lift already lies in G.
    """
    arr = enumerate_array(spec)
    ell = spec.ring.ell
    red = _codes(arr % ell, ell)
    out = []
    for M in gens_mod_ell:
        target = np.array(M.to_rows() if isinstance(M, Matrix) else M, dtype=np.int64) % ell
        hit = np.nonzero(red == _codes(target[None], ell)[0])[0]
        if len(hit) == 0:
            raise InvariantViolation("generator does not reduce into the group")
        out.append(arr[hit[0]])
    return out


def lift_check_report(spec: GroupSpec, gens_mod_ell: Sequence[Matrix]) -> LiftReport:
    if spec.family not in ("Sp", "SL") or not isinstance(spec.ring, ModRing):
        raise DimensionMismatch("lift_check needs Sp or SL over Z/l^n")
    R = spec.ring
    ell = R.ell
    base = GroupSpec(spec.family, spec.g, ModRing(ell, 1))
    gens = np.array([np.array(M.to_rows() if isinstance(M, Matrix) else M, dtype=np.int64) % ell
                     for M in gens_mod_ell])
    surj = closure_size(base.ring, gens) == group_order(base)
    lifts = canonical_lifts(spec, gens_mod_ell)
    total = group_order(spec)
    got = closure_size(R, np.array(lifts))
    return LiftReport(
        generates_full=got == total,
        lemma_applies=ell >= 5 and surj,
        surjective_mod_ell=surj,
        closure_order=got,
        group_order=total,
        lifts=tuple(Matrix.from_numpy(R, L) for L in lifts),
    )


def lift_check(spec: GroupSpec, gens_mod_ell: Sequence[Matrix]) -> tuple[bool, bool]:
    """(closure of canonical lifts is all of G(Z/l^n), l >= 5 and the
    generators surject onto G(F_l))."""
    rep = lift_check_report(spec, gens_mod_ell)
    return rep.generates_full, rep.lemma_applies
