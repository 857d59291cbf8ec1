"""The standard symplectic module (Z/l^n)^{2h} and its finite subgroups.

Vectors are tuples of canonical residues.  The form is x^T J y with
J = [[0, I_h], [-I_h, 0]].

An element v of (Z/l^n)^{2h} stands for the torsion point l^{-n} v.  A
point of order l^j is l^{n-j} v' and the pairing at level j of two such
points is v'^T J w' mod l^j.  Total isotropy, m1 and m are all defined
through these level pairings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import DimensionMismatch, NotIsotropic, NotPrimitive
from .exact.matrix import Matrix, howell_basis, mat_inverse, smith_form, smith_valuations, solve_affine, vec_mat
from .exact.rings import ModRing

Vector = tuple


@dataclass(frozen=True)
class SymplecticSpace:
    """Free module of rank 2h over Z/l^n with the canonical form J."""

    h: int
    ring: ModRing

    def __post_init__(self):
        if self.h < 1:
            raise DimensionMismatch("half-rank h must be positive")

    @property
    def rank(self) -> int:
        return 2 * self.h

    @property
    def ell(self) -> int:
        return self.ring.ell

    @property
    def n(self) -> int:
        return self.ring.n

    @cached_property
    def J(self) -> Matrix:
        h = self.h
        rows = [[0] * (2 * h) for _ in range(2 * h)]
        for i in range(h):
            rows[i][h + i] = 1
            rows[h + i][i] = self.ring.neg(1)
        return Matrix.from_rows(self.ring, rows)

    def basis_vector(self, i: int) -> Vector:
        """e_i for 0 <= i < 2h (0-based)."""
        return tuple(1 if k == i else 0 for k in range(self.rank))

    def vector(self, coords: Sequence[int]) -> Vector:
        if len(coords) != self.rank:
            raise DimensionMismatch(f"expected {self.rank} coordinates, got {len(coords)}")
        return tuple(self.ring.normalize(c) for c in coords)

    def elements(self):
        return itertools.product(self.ring.elements(), repeat=self.rank)


def _form(h: int, x: Sequence[int], y: Sequence[int]) -> int:
    """x^T J y over the integers (unreduced)."""
    return sum(x[i] * y[h + i] - x[h + i] * y[i] for i in range(h))


def pairing(space: SymplecticSpace, x: Sequence[int], y: Sequence[int]) -> int:
    """x^T J y in Z/l^n."""
    if len(x) != space.rank or len(y) != space.rank:
        raise DimensionMismatch(f"vectors must have length {space.rank}")
    return _form(space.h, x, y) % space.ring.modulus


def order_exponent(space: SymplecticSpace, v: Sequence[int]) -> int:
    """k such that v has order l^k."""
    R = space.ring
    return R.n - min(R.valuation(c) for c in v) if any(c % R.modulus for c in v) else 0


def level_pairing(space: SymplecticSpace, x: Sequence[int], y: Sequence[int], j: int) -> int:
    """Pairing at level j of two points of order dividing l^j, in Z/l^j."""
    R = space.ring
    if j == 0:
        return 0
    shift = R.ell ** (R.n - j)
    xs = [c // shift for c in x]
    ys = [c // shift for c in y]
    if any(c % shift for c in x) or any(c % shift for c in y):
        raise ValueError(f"points are not killed by l^{j}")
    return _form(space.h, xs, ys) % R.ell**j


def _value_order(ell: int, value: int, j: int) -> int:
    """k with value of order l^k in Z/l^j."""
    value %= ell**j
    if value == 0:
        return 0
    v = 0
    while value % ell == 0:
        value //= ell
        v += 1
    return j - v


@dataclass(frozen=True)
class GroupStructure:
    orders: tuple  # weakly decreasing exponents

    @property
    def exponent(self) -> int:
        return self.orders[0] if self.orders else 0

    def log_order(self) -> int:
        return sum(self.orders)


@dataclass(frozen=True, eq=False)
class TorsionSubgroup:
    """Subgroup of a SymplecticSpace generated by the given vectors."""

    space: SymplecticSpace
    generators: tuple = field(default_factory=tuple)

    def __post_init__(self):
        gens = tuple(self.space.vector(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)

    def _matrix(self) -> Matrix:
        rows = list(self.generators) or [tuple([0] * self.space.rank)]
        return Matrix.from_rows(self.space.ring, rows, self.space.rank)

    @cached_property
    def howell(self) -> Matrix:
        """Canonical basis (nonzero Howell rows); equal spans give equal keys."""
        return howell_basis(self._matrix())

    def __eq__(self, other):
        return isinstance(other, TorsionSubgroup) and self.space == other.space and self.howell == other.howell

    def __hash__(self):
        return hash((self.space, self.howell))

    @cached_property
    def invariant_basis(self) -> tuple:
        """Pairs (k_i, u_i): H is the direct sum of the cyclic groups of order
        l^{k_i} generated by l^{n-k_i} u_i, with u_i part of a basis of the
        ambient free module.  Sorted by k_i descending."""
        R = self.space.ring
        M = self._matrix()
        _, D, V = smith_form(M)
        W = mat_inverse(V)
        out = []
        for i, v in enumerate(smith_valuations(D)):
            if v < R.n:
                out.append((R.n - v, W.row(i)))
        out.sort(key=lambda kv: -kv[0])
        return tuple(out)

    def invariant_generators(self) -> list[Vector]:
        R = self.space.ring
        return [tuple(R.mul(R.ell ** (R.n - k), c) for c in u) for k, u in self.invariant_basis]

    def contains(self, v: Sequence[int]) -> bool:
        v = self.space.vector(v)
        M = self._matrix()
        return solve_affine(M.transpose(), v) is not None

    def contains_subgroup(self, other: "TorsionSubgroup") -> bool:
        return all(self.contains(g) for g in other.generators)

    def scaled(self, k: int) -> "TorsionSubgroup":
        """Image under multiplication by l^k."""
        R = self.space.ring
        c = R.ell**k
        return TorsionSubgroup(self.space, tuple(tuple(R.mul(c, x) for x in g) for g in self.generators))

    def torsion_layer(self, j: int) -> list[Vector]:
        """Generators of H[l^j], the elements killed by l^j."""
        R = self.space.ring
        out = []
        for k, u in self.invariant_basis:
            s = R.ell ** (R.n - min(k, j))
            out.append(tuple(R.mul(s, c) for c in u))
        return out

    def elements(self) -> set:
        """Exhaustive element set (small groups only)."""
        R = self.space.ring
        elems = {tuple([0] * self.space.rank)}
        for g in self.generators:
            k = order_exponent(self.space, g)
            multiples = [tuple(R.mul(t, c) for c in g) for t in range(R.ell**k)]
            elems = {tuple(R.add(a, b) for a, b in zip(e, m)) for e in elems for m in multiples}
        return elems

    @property
    def order(self) -> int:
        return self.space.ell ** sum(k for k, _ in self.invariant_basis)


def full_torsion(space: SymplecticSpace) -> TorsionSubgroup:
    return TorsionSubgroup(space, tuple(space.basis_vector(i) for i in range(space.rank)))


def group_structure(H: TorsionSubgroup) -> GroupStructure:
    return GroupStructure(tuple(k for k, _ in H.invariant_basis))


def _max_level_order(H: TorsionSubgroup, j: int) -> int:
    """Largest order exponent of a level-j pairing value on H[l^j]."""
    gens = H.torsion_layer(j)
    best = 0
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            val = level_pairing(H.space, gens[a], gens[b], j)
            best = max(best, _value_order(H.space.ell, val, j))
    return best


def m1_invariant(H: TorsionSubgroup) -> int:
    """Largest k such that two points of H of equal order pair to a value of order l^k."""
    e = group_structure(H).exponent
    return max((_max_level_order(H, j) for j in range(1, e + 1)), default=0)


def m_invariant(H: TorsionSubgroup) -> int:
    """Largest k such that two points of H of order l^k pair to a value of order l^k."""
    e = group_structure(H).exponent
    best = 0
    for k in range(1, e + 1):
        if _max_level_order(H, k) == k:
            best = k
    return best


def is_totally_isotropic(H: TorsionSubgroup) -> bool:
    """Every level pairing vanishes on H (equivalently m1(H) = 0)."""
    return m1_invariant(H) == 0


def scaled_isotropy_check(H: TorsionSubgroup) -> bool:
    return is_totally_isotropic(H.scaled(m1_invariant(H)))


def m1_bruteforce(H: TorsionSubgroup) -> tuple[int, int]:
    """(m1, m) by quantifying over all pairs of elements of H."""
    space = H.space
    by_order: dict[int, list] = {}
    for v in H.elements():
        by_order.setdefault(order_exponent(space, v), []).append(v)
    m1 = m = 0
    for j, pts in by_order.items():
        if j == 0:
            continue
        for x in pts:
            for y in pts:
                k = _value_order(space.ell, level_pairing(space, x, y, j), j)
                m1 = max(m1, k)
                if k == j:
                    m = max(m, j)
    return m1, m


def _check_isotropic_primitive(space: SymplecticSpace, vecs: Sequence[Vector]):
    R = space.ring
    for a in range(len(vecs)):
        for b in range(a + 1, len(vecs)):
            if pairing(space, vecs[a], vecs[b]):
                raise NotIsotropic(f"vectors {a} and {b} pair to {pairing(space, vecs[a], vecs[b])}")
    if vecs:
        red = Matrix.from_rows(ModRing(R.ell, 1), [[c % R.ell for c in v] for v in vecs], space.rank)
        _, D, _ = smith_form(red)
        if sum(1 for v in smith_valuations(D) if v == 0) < len(vecs):
            raise NotPrimitive("inputs are dependent modulo l")


def _solve_pairings(space: SymplecticSpace, against: Sequence[Vector], targets: Sequence[int]) -> Vector:
    """Some z with a^T J z = t for each (a, t)."""
    R = space.ring
    if not against:
        return tuple([0] * space.rank)
    rows = [list(vec_mat(R, a, space.J)) for a in against]
    sol = solve_affine(Matrix.from_rows(R, rows, space.rank), list(targets))
    if sol is None:
        raise NotPrimitive("pairing system has no solution")
    return sol.particular


def _kernel_vector(space: SymplecticSpace, against: Sequence[Vector]) -> Vector:
    """A primitive z orthogonal to every vector in against (a free kernel direction)."""
    R = space.ring
    if not against:
        return space.basis_vector(0)
    rows = [list(vec_mat(R, a, space.J)) for a in against]
    sol = solve_affine(Matrix.from_rows(R, rows, space.rank), [0] * len(rows))
    for d, reps in sol.directions:
        if len(reps) == R.size and any(c % R.ell for c in d):
            return tuple(d)
    raise NotPrimitive("no free orthogonal direction left")


def complete_symplectic_basis(space: SymplecticSpace, isotropic: Sequence[Sequence[int]]) -> list[Vector]:
    """Extend r isotropic primitive vectors to a basis with Gram matrix J.

    The inputs occupy positions 1..r; position h+i holds the partner of
    position i.
    """
    xs = [space.vector(v) for v in isotropic]
    h = space.h
    if len(xs) > h:
        raise NotIsotropic(f"{len(xs)} vectors cannot span an isotropic submodule of rank <= {h}")
    _check_isotropic_primitive(space, xs)
    fs: list[Vector] = []
    for i in range(h):
        if i >= len(xs):
            xs.append(_kernel_vector(space, xs + fs))
        targets = [1 if m == i else 0 for m in range(len(xs))] + [0] * len(fs)
        fs.append(_solve_pairings(space, xs + fs, targets))
    return xs + fs


def gram_matrix(space: SymplecticSpace, vecs: Sequence[Vector]) -> Matrix:
    return Matrix.from_rows(space.ring, [[pairing(space, a, b) for b in vecs] for a in vecs], len(vecs))


@dataclass(frozen=True)
class HullResult:
    hull: TorsionSubgroup
    basis: tuple  # generators l^{n-k_i} w_i of the hull
    primitive_lifts: tuple  # w_i: basis of a free totally isotropic submodule
    orders: tuple  # k_i


def isotropic_hull(H: TorsionSubgroup) -> tuple[TorsionSubgroup, list[Vector]]:
    """Totally isotropic H_ti containing H with the same exponent, and the
    scaled basis of a free totally isotropic module projecting onto it."""
    res = isotropic_hull_full(H)
    return res.hull, list(res.basis)


def isotropic_hull_full(H: TorsionSubgroup) -> HullResult:
    if not is_totally_isotropic(H):
        raise NotIsotropic("subgroup is not totally isotropic")
    space = H.space
    R = space.ring
    n = R.n
    ws: list[Vector] = []
    ks: list[int] = []
    for k, u in H.invariant_basis:
        # u^T J w_p vanishes mod l^k for every earlier (higher order) w_p;
        # shift u by l^k z so that it vanishes exactly, which does not move
        # the scaled generator l^{n-k} u
        cs = [pairing(space, u, w) for w in ws]
        if any(cs):
            quot = [R.neg(c // R.ell**k) for c in cs]
            z = _solve_pairings(space, ws, [R.neg(q) for q in quot])
            # z satisfies w_p^T J z = -quot_p, so z^T J w_p = quot_p
            u = tuple(R.add(a, R.mul(R.ell**k, b)) for a, b in zip(u, z))
        ws.append(u)
        ks.append(k)
    basis = tuple(tuple(R.mul(R.ell ** (n - k), c) for c in w) for k, w in zip(ks, ws))
    hull = TorsionSubgroup(space, basis)
    return HullResult(hull, basis, tuple(ws), tuple(ks))
