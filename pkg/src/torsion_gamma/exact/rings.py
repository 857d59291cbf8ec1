"""Finite chain rings: Z/l^n and small finite fields.

Both ring types expose the same small interface so that the matrix
algorithms (Howell and Smith forms, linear solving) can be written once.
Every element is a plain Python int in canonical form.  A chain ring has a
uniformizer ``pi`` (the prime l for Z/l^n, zero for a field) and a depth
(n for Z/l^n, 1 for a field); every element is pi^v times a unit.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cached_property

import numpy as np

from ..errors import NonInvertible, NotPrime, UnsupportedDegree

# Exact rationals: the stdlib Fraction already keeps lowest terms with a
# positive denominator and canonical zero 0/1.
BigRational = Fraction

MAX_EXPONENT = 6
MAX_DEGREE = 4
# fields up to this size use precomputed operation tables
TABLE_LIMIT = 4096


def is_prime(p: int) -> bool:
    """Trial division primality test."""
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def distinct_prime_factors(n: int) -> list[int]:
    """Distinct primes dividing n, by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class ModRing:
    """The ring Z/l^n with elements in [0, l^n)."""

    def __init__(self, ell: int, n: int = 1):
        if not is_prime(ell):
            raise NotPrime(f"{ell} is not prime")
        if not 1 <= n <= MAX_EXPONENT:
            raise UnsupportedDegree(f"exponent n={n} outside 1..{MAX_EXPONENT}")
        self.ell = ell
        self.n = n
        self.modulus = ell**n
        self.size = self.modulus

    # identity and display
    def __eq__(self, other):
        return isinstance(other, ModRing) and (self.ell, self.n) == (other.ell, other.n)

    def __hash__(self):
        return hash(("ModRing", self.ell, self.n))

    def __repr__(self):
        return f"ModRing({self.ell}, {self.n})"

    @property
    def depth(self) -> int:
        return self.n

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1 % self.modulus

    def elements(self) -> range:
        return range(self.modulus)

    def normalize(self, x: int) -> int:
        return int(x) % self.modulus

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.modulus

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.modulus

    def neg(self, a: int) -> int:
        return (-a) % self.modulus

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.modulus

    def from_int(self, k: int) -> int:
        return k % self.modulus

    def valuation(self, x: int) -> int:
        """l-adic valuation, capped at n (so zero has valuation n)."""
        x %= self.modulus
        if x == 0:
            return self.n
        v = 0
        while x % self.ell == 0:
            x //= self.ell
            v += 1
        return v

    def is_unit(self, x: int) -> bool:
        return x % self.ell != 0

    def inv(self, x: int) -> int:
        if not self.is_unit(x):
            raise NonInvertible(f"{x} is not a unit mod {self.modulus}")
        return pow(int(x), -1, self.modulus)

    def pi_power(self, k: int) -> int:
        """l^k as a ring element (zero once k >= n)."""
        return self.ell**k % self.modulus if k < self.n else 0

    def unit_part(self, x: int) -> int:
        """A unit u with x = l^v u, where v is the valuation of x."""
        v = self.valuation(x)
        if v >= self.n:
            return 1
        return (x % self.modulus) // self.ell**v

    def divide_pi(self, x: int, v: int) -> int:
        """Some y with l^v y = x; x must have valuation >= v."""
        return (x % self.modulus) // self.ell**v

    def reduce_mod_pi(self, x: int, v: int) -> tuple[int, int]:
        """Split x = q l^v + rem with rem a canonical residue mod l^v."""
        p = self.ell**v
        x %= self.modulus
        return x // p, x % p

    def residue_reps(self, k: int) -> list[int]:
        """Representatives of R / l^k R."""
        return list(range(self.ell ** min(k, self.n)))

    def residue_field_map(self, x: int) -> int:
        return x % self.ell

    # vectorized arithmetic on numpy int64 arrays
    def vadd(self, a, b):
        return (a + b) % self.modulus

    def vsub(self, a, b):
        return (a - b) % self.modulus

    def vmul(self, a, b):
        return (a * b) % self.modulus

    def vmatmul(self, a, b):
        """Batched matrix product of int64 arrays, reduced."""
        return np.matmul(a, b) % self.modulus


def _poly_mulmod(a: tuple, b: tuple, mod: tuple, p: int) -> tuple:
    """Product of coefficient tuples (constant term first) modulo a monic mod."""
    f = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, f - 1, -1):
        c = prod[k]
        if c:
            for j in range(f + 1):
                prod[k - f + j] = (prod[k - f + j] - c * mod[j]) % p
    out = prod[:f] + [0] * (f - len(prod[:f]))
    return tuple(out)


def _is_irreducible(poly: tuple, p: int) -> bool:
    """Irreducibility over F_p for degree <= 4 by trial division by monic polys."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = tuple(low) + (1,)
            if _poly_rem(poly, divisor, p) == (0,) * d:
                return False
    return True


def _poly_rem(a: tuple, b: tuple, p: int) -> tuple:
    """Remainder of a by monic b over F_p, padded to len(b) - 1."""
    r = list(a)
    db = len(b) - 1
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c:
            for j in range(db + 1):
                r[k - db + j] = (r[k - db + j] - c * b[j]) % p
    out = r[:db] + [0] * (db - len(r[:db]))
    return tuple(out)


def smallest_irreducible(p: int, f: int) -> tuple:
    """Lexicographically smallest monic irreducible of degree f over F_p.

    Coefficients are listed from the constant term up and compared in that
    order.
    """
    for low in itertools.product(range(p), repeat=f):
        # product() varies the last slot fastest, so the constant term is
        # the most significant key.
        poly = tuple(low) + (1,)
        if f == 1 or _is_irreducible(poly, p):
            return poly
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    """F_{p^f} realized as F_p[x]/(modulus), elements encoded as ints.

    The element sum c_i x^i is encoded as sum c_i p^i.
    """

    def __init__(self, ell: int, f: int = 1):
        if not is_prime(ell):
            raise NotPrime(f"{ell} is not prime")
        if not 1 <= f <= MAX_DEGREE:
            raise UnsupportedDegree(f"degree f={f} outside 1..{MAX_DEGREE}")
        self.ell = ell
        self.f = f
        self.modulus_poly = smallest_irreducible(ell, f)
        self.size = ell**f

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.ell, self.f) == (other.ell, other.f)

    def __hash__(self):
        return hash(("FiniteField", self.ell, self.f))

    def __repr__(self):
        return f"FiniteField({self.ell}, {self.f})"

    @property
    def depth(self) -> int:
        return 1

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def elements(self) -> range:
        return range(self.size)

    def to_poly(self, x: int) -> tuple:
        out = []
        for _ in range(self.f):
            x, c = divmod(x, self.ell)
            out.append(c)
        return tuple(out)

    def from_poly(self, coeffs) -> int:
        x = 0
        for c in reversed(list(coeffs)):
            x = x * self.ell + c % self.ell
        return x

    @cached_property
    def _add_table(self) -> np.ndarray:
        q = self.size
        polys = [self.to_poly(x) for x in range(q)]
        t = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                t[a, b] = self.from_poly(x + y for x, y in zip(polys[a], polys[b]))
        return t

    @cached_property
    def _mul_table(self) -> np.ndarray:
        q = self.size
        polys = [self.to_poly(x) for x in range(q)]
        t = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                v = self.from_poly(_poly_mulmod(polys[a], polys[b], self.modulus_poly, self.ell))
                t[a, b] = t[b, a] = v
        return t

    @cached_property
    def _neg_table(self) -> np.ndarray:
        return np.array(
            [self.from_poly(-c for c in self.to_poly(x)) for x in range(self.size)],
            dtype=np.int64,
        )

    @cached_property
    def _inv_table(self) -> dict:
        mt = self._mul_table
        out = {}
        for a in range(1, self.size):
            out[a] = int(np.nonzero(mt[a] == 1)[0][0])
        return out

    def normalize(self, x: int) -> int:
        x = int(x)
        if not 0 <= x < self.size:
            raise ValueError(f"{x} does not encode an element of F_{self.size}")
        return x

    def _small(self) -> bool:
        return self.size <= TABLE_LIMIT

    def add(self, a, b):
        if self._small():
            return int(self._add_table[a, b])
        return self.from_poly(x + y for x, y in zip(self.to_poly(a), self.to_poly(b)))

    def neg(self, a):
        if self._small():
            return int(self._neg_table[a])
        return self.from_poly(-c for c in self.to_poly(a))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self._small():
            return int(self._mul_table[a, b])
        return self.from_poly(
            _poly_mulmod(self.to_poly(a), self.to_poly(b), self.modulus_poly, self.ell)
        )

    def from_int(self, k: int) -> int:
        return k % self.ell

    def valuation(self, x: int) -> int:
        return 1 if x == 0 else 0

    def is_unit(self, x: int) -> bool:
        return x != 0

    def inv(self, x: int) -> int:
        if x == 0:
            raise NonInvertible("zero is not invertible")
        if self._small():
            return self._inv_table[x]
        # x^(q-2) by square and multiply
        result, base, e = 1, x, self.size - 2
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def pi_power(self, k: int) -> int:
        return 1 if k == 0 else 0

    def unit_part(self, x: int) -> int:
        return x if x else 1

    def divide_pi(self, x: int, v: int) -> int:
        return x

    def reduce_mod_pi(self, x: int, v: int) -> tuple[int, int]:
        return (x, 0) if v == 0 else (0, x)

    def residue_reps(self, k: int) -> list[int]:
        return [0] if k == 0 else list(range(self.size))

    def residue_field_map(self, x: int) -> int:
        return x

    def vadd(self, a, b):
        return self._add_table[a, b]

    def vsub(self, a, b):
        return self._add_table[a, self._neg_table[b]]

    def vmul(self, a, b):
        return self._mul_table[a, b]

    def vmatmul(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        prod = self._mul_table[a[..., :, :, None], b[..., None, :, :]]
        out = prod[..., 0, :]
        for k in range(1, prod.shape[-2]):
            out = self._add_table[out, prod[..., k, :]]
        return out


def ff_make(ell: int, f: int) -> FiniteField:
    """Build F_{ell^f} with the canonical modulus."""
    return FiniteField(ell, f)
