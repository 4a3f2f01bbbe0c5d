"""Dirichlet characters modulo an odd prime, Gauss sums and related sums."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .numerics import compensated_sum, compensated_sum_complex, cos_rational, unit_root


class NotPrimeError(ValueError):
    pass


class EvenModulusError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_odd_prime(p) -> int:
    if isinstance(p, bool) or int(p) != p:
        raise NotPrimeError(f"{p!r} is not an integer")
    p = int(p)
    if p % 2 == 0:
        raise EvenModulusError(f"modulus {p} is even")
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    return p


def _prime_factors(n: int) -> list[int]:
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


def primitive_root(p: int) -> int:
    """Smallest positive primitive root modulo the odd prime ``p``."""
    p = check_odd_prime(p)
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in factors):
            return g
    raise AssertionError("unreachable for prime p")


def modular_inverse(a: int, m: int) -> int:
    """x in [1, m-1] with a*x = 1 mod m."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    if math.gcd(a, m) != 1:
        raise ValueError(f"{a} is not invertible modulo {m}")
    return pow(a, -1, m)


@dataclass(frozen=True, eq=False)
class DirichletCharacter:
    """chi_j(g^k) = e(jk/(p-1)) for the canonical primitive root g.

    ``values[a]`` holds chi(a) for a = 0..p-1, with values[0] = 0.
    """

    modulus: int
    index: int
    values: np.ndarray = field(repr=False)
    log_table: np.ndarray = field(repr=False)

    @property
    def parity(self) -> int:
        return int(round(self.values[self.modulus - 1].real))

    @property
    def is_principal(self) -> bool:
        return self.index == 0

    @property
    def is_even(self) -> bool:
        return self.parity == 1

    @property
    def is_real(self) -> bool:
        return (2 * self.index) % (self.modulus - 1) == 0

    def __call__(self, a: int) -> complex:
        return complex(self.values[int(a) % self.modulus])

    def conj(self) -> "DirichletCharacter":
        return character(self.modulus, (self.modulus - 1 - self.index) % (self.modulus - 1))

    def __eq__(self, other):
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return (self.modulus, self.index) == (other.modulus, other.index)

    def __hash__(self):
        return hash((self.modulus, self.index))


@dataclass(frozen=True)
class CharacterFamily:
    modulus: int
    generator: int
    characters: tuple

    def __len__(self):
        return len(self.characters)

    def __iter__(self):
        return iter(self.characters)

    def __getitem__(self, j):
        return self.characters[j]

    def even(self, include_principal: bool = False) -> list[DirichletCharacter]:
        return [c for c in self.characters if c.is_even and (include_principal or not c.is_principal)]

    def odd(self) -> list[DirichletCharacter]:
        return [c for c in self.characters if not c.is_even]

    def table(self) -> np.ndarray:
        """(p-1, p) array of character values, row j is chi_j."""
        return np.stack([c.values for c in self.characters])


@lru_cache(maxsize=None)
def _discrete_log(p: int) -> tuple[int, np.ndarray]:
    g = primitive_root(p)
    log = np.full(p, -1, dtype=np.int64)
    x = 1
    for k in range(p - 1):
        log[x] = k
        x = x * g % p
    log.setflags(write=False)
    return g, log


@lru_cache(maxsize=None)
def character(p: int, j: int) -> DirichletCharacter:
    p = check_odd_prime(p)
    if not 0 <= j < p - 1:
        raise ValueError(f"character index {j} outside [0, {p - 2}]")
    _, log = _discrete_log(p)
    vals = np.zeros(p, dtype=complex)
    for a in range(1, p):
        vals[a] = unit_root(j * int(log[a]), p - 1)
    vals.setflags(write=False)
    return DirichletCharacter(p, j, vals, log)


@lru_cache(maxsize=None)
def enumerate_characters(p: int) -> CharacterFamily:
    """All p-1 characters modulo the odd prime ``p``, indexed by j."""
    p = check_odd_prime(p)
    g, _ = _discrete_log(p)
    return CharacterFamily(p, g, tuple(character(p, j) for j in range(p - 1)))


def gauss_sum(chi: DirichletCharacter) -> complex:
    """tau(chi) = sum over a mod p of e(a/p) chi(a)."""
    p = chi.modulus
    terms = [unit_root(a, p) * chi.values[a] for a in range(1, p)]
    return compensated_sum_complex(terms)


def cosine_twisted_sum(chi: DirichletCharacter) -> complex:
    """Sum over nonzero r mod p of cos(2 pi r/p) * conj(chi(r))."""
    p = chi.modulus
    terms = [cos_rational(r, p) * np.conj(chi.values[r]) for r in range(1, p)]
    return compensated_sum_complex(terms)


def orthogonality_residual(p: int) -> float:
    """max over nonzero a, b of |sum_chi chi(a) conj(chi(b)) - (p-1)[a = b]|."""
    fam = enumerate_characters(p)
    V = fam.table()[:, 1:]
    gram = V.T @ np.conj(V)
    return float(np.max(np.abs(gram - (p - 1) * np.eye(p - 1))))


def residue_sum_cos(p: int, q: int) -> float:
    """Sum over nonzero r mod p of cos(2 pi r q/p); equals -1 when p does not divide q."""
    return compensated_sum([cos_rational(r * q, p) for r in range(1, p)])
