"""Optimal torsion-growth exponents from endomorphism data.

All values are exact Fractions.  A factor A_i^{n_i} is described by its
Albert type (d = 1 for type I, 2 for type II), the degree e of the totally
real center, the relative dimension h and the multiplicity n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import BoundViolation, EmptySubset, InvalidFiltration, InvariantViolation, ShapeMismatch, TooLarge, TooManyFactors
from .exact.rings import distinct_prime_factors
from .groups import PrsSpec, prs_codim

MAX_FACTORS = 20
BOX_LIMIT = 10**7


@dataclass(frozen=True)
class IsotypicFactor:
    albert_type: str
    e: int
    h: int
    multiplicity: int = 1

    def __post_init__(self):
        if self.albert_type not in ("I", "II"):
            raise ValueError(f"Albert type must be 'I' or 'II', got {self.albert_type!r}")
        for name in ("e", "h", "multiplicity"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be a positive integer")

    @property
    def d(self) -> int:
        return 1 if self.albert_type == "I" else 2

    @property
    def dim(self) -> int:
        """Dimension of A_i^{n_i}."""
        return self.multiplicity * self.d * self.h * self.e

    @property
    def mt_contribution(self) -> int:
        return self.e * (2 * self.h * self.h + self.h)


@dataclass(frozen=True)
class VarietyData:
    factors: tuple

    def __post_init__(self):
        facs = tuple(self.factors)
        if not facs:
            raise ValueError("a variety needs at least one factor")
        object.__setattr__(self, "factors", facs)


def split_profile(e: int) -> tuple:
    """The totally split profile [(1, 1)] * e."""
    return tuple((1, 1) for _ in range(e))


@dataclass(frozen=True)
class SplittingProfile:
    """Per factor, the (ramification, residue degree) pairs of the places."""

    places: tuple

    def __post_init__(self):
        object.__setattr__(self, "places", tuple(tuple((int(a), int(b)) for a, b in p) for p in self.places))

    def validate(self, data: VarietyData):
        if len(self.places) != len(data.factors):
            raise InvariantViolation("profile must list places for every factor")
        for k, (pl, fac) in enumerate(zip(self.places, data.factors)):
            if not pl or any(a < 1 or b < 1 for a, b in pl):
                raise InvariantViolation(f"factor {k + 1}: ramification and residue degrees must be >= 1")
            if sum(a * b for a, b in pl) != fac.e:
                raise InvariantViolation(f"factor {k + 1}: sum of e*f is {sum(a * b for a, b in pl)}, expected {fac.e}")

    @classmethod
    def split(cls, data: VarietyData) -> "SplittingProfile":
        return cls(tuple(split_profile(f.e) for f in data.factors))


def all_profiles(e: int) -> list[tuple]:
    """Every multiset of (ramification, residue degree) pairs with sum e*f = e."""
    pairs = [(a, b) for a in range(1, e + 1) for b in range(1, e + 1) if a * b <= e]
    out = []

    def rec(rest: int, start: int, acc: list):
        if rest == 0:
            out.append(tuple(acc))
            return
        for k in range(start, len(pairs)):
            a, b = pairs[k]
            if a * b <= rest:
                rec(rest - a * b, k, acc + [pairs[k]])

    rec(e, 0, [])
    return out


# closed forms

def gamma_simple(albert_type: str, e: int, h: int) -> Fraction:
    """2dhe / (1 + 2eh^2 + he)."""
    d = 1 if albert_type == "I" else 2
    if albert_type not in ("I", "II") or e < 1 or h < 1:
        raise ValueError("need type I or II and e, h >= 1")
    return Fraction(2 * d * h * e, 1 + 2 * e * h * h + h * e)


def mt_dimension(data: VarietyData, subset: Sequence[int] | None = None) -> int:
    """1 + sum over the subset (0-based indices) of e(2h^2 + h)."""
    idx = range(len(data.factors)) if subset is None else list(subset)
    if not idx:
        raise EmptySubset("subset must be nonempty")
    return 1 + sum(data.factors[i].mt_contribution for i in idx)


def masser_bound(data: VarietyData) -> int:
    """dim A = sum n d h e."""
    return sum(f.dim for f in data.factors)


@dataclass(frozen=True)
class GammaReport:
    gamma: Fraction
    achieving_subset: tuple  # 1-based factor indices
    per_subset_table: dict = field(hash=False)  # tuple of 1-based indices -> Fraction
    mt_dimension: int


def _subsets(k: int):
    """Nonempty subsets of range(k), by size then lexicographic."""
    for size in range(1, k + 1):
        yield from itertools.combinations(range(k), size)


def gamma_product(data: VarietyData) -> GammaReport:
    """Maximize 2 dim A_I / dim MT(A_I) over nonempty subsets I."""
    k = len(data.factors)
    if k > MAX_FACTORS:
        raise TooManyFactors(f"{k} factors exceed the cap of {MAX_FACTORS}")
    table = {}
    best = None
    for sub in _subsets(k):
        val = Fraction(2 * sum(data.factors[i].dim for i in sub), mt_dimension(data, sub))
        key = tuple(i + 1 for i in sub)
        table[key] = val
        if best is None or val > best[0]:
            best = (val, key, sub)
    return GammaReport(best[0], best[1], table, mt_dimension(data, best[2]))


# the psi optimization

@dataclass(frozen=True)
class PsiAssignment:
    """r, s per place-factor pair: values[i][k] = (r, s) for factor i, place k."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(tuple((int(r), int(s)) for r, s in f) for f in self.values))

    @property
    def delta(self) -> int:
        return int(any(s > 0 for f in self.values for _, s in f))


def _check_assignment(data: VarietyData, profile: SplittingProfile, assign: PsiAssignment):
    profile.validate(data)
    if len(assign.values) != len(data.factors):
        raise BoundViolation("assignment must cover every factor")
    for fac, pl, vals in zip(data.factors, profile.places, assign.values):
        if len(vals) != len(pl):
            raise BoundViolation("assignment must cover every place of the profile")
        for r, s in vals:
            if not (0 <= s <= r <= fac.h):
                raise BoundViolation(f"need 0 <= s <= r <= h={fac.h}, got r={r}, s={s}")


def psi_parts(data: VarietyData, profile: SplittingProfile, assign: PsiAssignment) -> tuple[int, int]:
    """(numerator, denominator) before reduction."""
    _check_assignment(data, profile, assign)
    num = 0
    den = assign.delta
    for fac, pl, vals in zip(data.factors, profile.places, assign.values):
        for (ram, f), (r, s) in zip(pl, vals):
            ef = ram * f
            num += fac.multiplicity * fac.d * ef * (r + s)
            den += ef * prs_codim(PrsSpec(r, s, fac.h))
    return num, den


def psi_value(data: VarietyData, profile: SplittingProfile, assign: PsiAssignment) -> Fraction:
    num, den = psi_parts(data, profile, assign)
    return Fraction(0) if num == 0 else Fraction(num, den)


def _pairs_desc(h: int) -> list[tuple[int, int]]:
    """All (r, s) with 0 <= s <= r <= h, lexicographically descending."""
    return [(r, s) for r in range(h, -1, -1) for s in range(r, -1, -1)]


def psi_bruteforce(data: VarietyData, profile: SplittingProfile | None = None) -> tuple[Fraction, PsiAssignment]:
    """Exhaustive maximum of psi over the box 0 <= s <= r <= h.

    Candidates are visited in descending lexicographic order and only a
    strict improvement replaces the incumbent, so r = s = h everywhere wins
    every tie it takes part in.
    """
    if profile is None:
        profile = SplittingProfile.split(data)
    profile.validate(data)
    slots = []
    for fac, pl in zip(data.factors, profile.places):
        for (ram, f) in pl:
            slots.append((fac, ram * f))
    size = 1
    for fac, _ in slots:
        size *= (fac.h + 1) * (fac.h + 2) // 2
    if size > BOX_LIMIT:
        raise TooLarge(f"search box has {size} points")
    best_val, best = None, None
    for combo in itertools.product(*(_pairs_desc(fac.h) for fac, _ in slots)):
        num = den = 0
        delta = 0
        for (fac, ef), (r, s) in zip(slots, combo):
            num += fac.multiplicity * fac.d * ef * (r + s)
            den += ef * prs_codim(PrsSpec(r, s, fac.h))
            if s:
                delta = 1
        val = Fraction(0) if num == 0 else Fraction(num, den + delta)
        if best_val is None or val > best_val:
            best_val, best = val, combo
    values, k = [], 0
    for pl in profile.places:
        values.append(tuple(best[k:k + len(pl)]))
        k += len(pl)
    return best_val, PsiAssignment(tuple(values))


# filtered subgroups

@dataclass(frozen=True)
class FilteredSubgroupData:
    """chains[i][k] lists (level, r, s) for factor i at place k.

    Read in increasing level: at level L the subgroup has r + s generators of
    order at least l^L spread as r "e" vectors and s "f" vectors.  r and s
    decrease weakly and r + s decreases strictly as the level grows.
    """

    chains: tuple

    def __post_init__(self):
        object.__setattr__(self, "chains", tuple(
            tuple(tuple(sorted((int(L), int(r), int(s)) for L, r, s in ch)) for ch in f) for f in self.chains
        ))

    def validate(self, data: VarietyData, profile: SplittingProfile):
        if len(self.chains) != len(data.factors):
            raise InvalidFiltration("one list of chains per factor is required")
        for fac, pl, chs in zip(data.factors, profile.places, self.chains):
            if len(chs) != len(pl):
                raise InvalidFiltration("one chain per place is required")
            for ch in chs:
                if len(ch) > 2 * fac.h:
                    raise InvalidFiltration("a chain has at most 2h levels")
                prev = None
                for L, r, s in ch:
                    if L < 1:
                        raise InvalidFiltration("levels must be positive")
                    if not (0 <= s <= r <= fac.h) or r + s == 0:
                        raise InvalidFiltration(f"bad (r, s) = ({r}, {s}) for h = {fac.h}")
                    if prev is not None:
                        pL, pr, ps = prev
                        if L == pL:
                            raise InvalidFiltration("levels must be distinct")
                        if r > pr or s > ps or r + s >= pr + ps:
                            raise InvalidFiltration("(r, s) must shrink as the level grows")
                    prev = (L, r, s)


def chain_multiplicities(chain: Sequence[tuple[int, int, int]]) -> list[tuple[int, int]]:
    """(level, a) pairs: a generators of order exactly l^level."""
    out = []
    for k, (L, r, s) in enumerate(chain):
        nxt = chain[k + 1][1] + chain[k + 1][2] if k + 1 < len(chain) else 0
        out.append((L, r + s - nxt))
    return out


def chain_delta(chain: Sequence[tuple[int, int, int]]) -> int:
    """Largest level carrying a pair e_k, f_k (some s >= 1), else 0."""
    return max((L for L, _, s in chain if s >= 1), default=0)


def filtered_exponents(data: VarietyData, profile: SplittingProfile, fs: FilteredSubgroupData) -> tuple[int, int]:
    """(log_l |H|, exponent of the degree bound) for a filtered subgroup.

    The degree exponent adds the codimension steps of each chain weighted
    by e f, plus the cyclotomic contribution of the single (lexicographically
    first) place-factor pair with the largest one.
    """
    profile.validate(data)
    fs.validate(data, profile)
    card = 0
    degree = 0
    best_delta = 0
    for fac, pl, chs in zip(data.factors, profile.places, fs.chains):
        for (ram, f), ch in zip(pl, chs):
            ef = ram * f
            for L, a in chain_multiplicities(ch):
                card += fac.multiplicity * fac.d * ef * L * a
            prev = 0
            for L, r, s in ch:
                degree += ef * prs_codim(PrsSpec(r, s, fac.h)) * (L - prev)
                prev = L
            best_delta = max(best_delta, chain_delta(ch))
    return card, degree + best_delta


def delta_owner(data: VarietyData, profile: SplittingProfile, fs: FilteredSubgroupData) -> tuple[int, int] | None:
    """(factor, place) indices, 0-based, that carry the cyclotomic term."""
    best, owner = 0, None
    for i, chs in enumerate(fs.chains):
        for k, ch in enumerate(chs):
            d = chain_delta(ch)
            if d > best:
                best, owner = d, (i, k)
    return owner


# sup over ordered integer vectors against max over prefixes

def _ordered_rows(t: int, B: int):
    """Weakly decreasing tuples of length t in [0, B]."""
    return [c for c in itertools.combinations_with_replacement(range(B, -1, -1), t)]


def sup_equals_max_check(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], B: int,
                         allow_empty_rows: bool = True) -> tuple[Fraction, Fraction]:
    """(lhs, rhs) for the ratio sum a m / sum b m.

    lhs maximizes over integer rows m_i1 >= ... >= m_it >= 0 in [0, B];
    rhs maximizes over prefix indicator vectors.  With allow_empty_rows a
    row may be entirely zero (prefix length 0) as long as some row is not;
    without it every row needs m_i1 != 0 and prefix length >= 1.  Only the
    first reading makes the two sides equal for several rows.
    """
    if len(a) != len(b) or any(len(x) != len(y) for x, y in zip(a, b)) or not a:
        raise ShapeMismatch("a and b must have the same ragged shape")
    if any(len(x) == 0 for x in a):
        raise ShapeMismatch("rows must be nonempty")
    if any(v <= 0 for row in list(a) + list(b) for v in row):
        raise ShapeMismatch("entries must be positive")
    if not 1 <= B <= 6:
        raise ShapeMismatch("bound B must lie in 1..6")
    rows = []
    for x in a:
        opts = _ordered_rows(len(x), B)
        if not allow_empty_rows:
            opts = [o for o in opts if o[0] != 0]
        rows.append(opts)
    count = 1
    for r in rows:
        count *= len(r)
    if count > BOX_LIMIT:
        raise TooLarge(f"{count} vectors to scan")
    lhs = None
    for ms in itertools.product(*rows):
        num = sum(ai * mi for ra, mr in zip(a, ms) for ai, mi in zip(ra, mr))
        den = sum(bi * mi for rb, mr in zip(b, ms) for bi, mi in zip(rb, mr))
        if den == 0:
            continue
        v = Fraction(num, den)
        if lhs is None or v > lhs:
            lhs = v
    lo = 0 if allow_empty_rows else 1
    rhs = None
    for hs in itertools.product(*(range(lo, len(x) + 1) for x in a)):
        if not any(hs):
            continue
        num = sum(sum(ra[:k]) for ra, k in zip(a, hs))
        den = sum(sum(rb[:k]) for rb, k in zip(b, hs))
        v = Fraction(num, den)
        if rhs is None or v > rhs:
            rhs = v
    return lhs, rhs


# the exceptional set

def sigma_contains(g: int) -> bool:
    """2g = (2a)^k or 2g = C(2k, k) for some odd k >= 3 and a >= 1."""
    if g < 1:
        return False
    n = 2 * g
    k = 3
    while 2**k <= n or comb(2 * k, k) <= n:
        if comb(2 * k, k) == n:
            return True
        c = _integer_root(n, k)
        if c % 2 == 0 and c**k == n:
            return True
        k += 2
    return False


def _integer_root(n: int, k: int) -> int:
    """Largest c with c^k <= n."""
    lo, hi = 0, 1
    while hi**k <= n:
        hi *= 2
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid
    return lo


def sigma_members(limit: int) -> list[int]:
    """Members of the exceptional set up to limit, by direct generation."""
    if limit > 10**8:
        raise TooLarge("sigma listing is capped at 10^8")
    out = set()
    k = 3
    while 2**k <= 2 * limit or comb(2 * k, k) <= 2 * limit:
        a = 1
        while (2 * a) ** k <= 2 * limit:
            out.add((2 * a) ** k // 2)
            a += 1
        if comb(2 * k, k) <= 2 * limit:
            out.add(comb(2 * k, k) // 2)
        k += 2
    return sorted(out)


def mt_hypothesis_check(factor: IsotypicFactor, has_toric_place: bool) -> set[int]:
    """Which of the three sufficient conditions for the Mumford-Tate
    hypothesis hold (the third is a caller-supplied fact)."""
    out = set()
    if factor.h % 2 == 1 or factor.h == 2:
        out.add(1)
    if factor.e == 1 and not sigma_contains(factor.h):
        out.add(2)
    if has_toric_place:
        out.add(3)
    return out


def omega(n: int) -> int:
    return len(distinct_prime_factors(n)) if n > 1 else 0


def torsion_degree_lower_bound(n: int, h: int, c1) -> Fraction:
    """c1^omega(n) n^{2h}."""
    if n < 1:
        raise ValueError("n must be positive")
    c1 = Fraction(c1)
    if c1 <= 0:
        raise ValueError("c1 must be positive")
    return c1 ** omega(n) * Fraction(n) ** (2 * h)
