"""Fast invariant suite behind ``twisted-moment selftest``."""

from __future__ import annotations

import contextlib
import math
import random
from dataclasses import dataclass
from typing import Callable
from unittest import mock

import numpy as np

from . import characters, lfunctions, numerics
from .moments import ReciprocityInstance


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    bound: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.value) and self.value <= self.bound)

    def as_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "bound": self.bound, "passed": self.passed}


def _gamma_reflection() -> float:
    rng = np.random.default_rng(7)
    z = rng.uniform(0.01, 0.99, 100) + 1j * rng.uniform(-50, 50, 100)
    lhs = numerics.complex_gamma(z) * numerics.complex_gamma(1 - z) * np.sin(np.pi * z) / np.pi
    return float(np.max(np.abs(lhs - 1)))


def _gamma_duplication() -> float:
    rng = np.random.default_rng(8)
    z = rng.uniform(0.01, 0.99, 100) + 1j * rng.uniform(-50, 50, 100)
    g = numerics.complex_gamma
    lhs = g(z) * g(z + 0.5)
    rhs = 2.0 ** (1 - 2 * z) * math.sqrt(math.pi) * g(2 * z)
    return float(np.max(np.abs(lhs / rhs - 1)))


def _digamma() -> float:
    eg = numerics.EULER_GAMMA
    return max(abs(numerics.digamma(1.0) + eg),
               abs(numerics.digamma(0.5) + eg + 2 * math.log(2)),
               abs(numerics.digamma(2.0) - 1 + eg))


def _gauss_sum() -> float:
    worst = 0.0
    for p in (3, 5, 7, 13, 29):
        fam = characters.enumerate_characters(p)
        worst = max(worst, abs(characters.gauss_sum(fam[0]) + 1))
        for chi in fam.characters[1:]:
            worst = max(worst, abs(abs(characters.gauss_sum(chi)) ** 2 - p))
    # quadratic character mod 5 has tau = +sqrt(5)
    worst = max(worst, abs(characters.gauss_sum(characters.enumerate_characters(5)[2]) - math.sqrt(5)))
    return worst


def _cosine_twisted() -> float:
    worst = 0.0
    for p in (3, 5, 7, 11, 13):
        for chi in characters.enumerate_characters(p):
            c = characters.cosine_twisted_sum(chi)
            if chi.is_principal:
                target = -1.0
            elif chi.is_even:
                target = characters.gauss_sum(chi.conj())
            else:
                target = 0.0
            worst = max(worst, abs(c - target))
    return worst


def _multiplicativity() -> float:
    rng = random.Random(3)
    worst = 0.0
    for p in (5, 13, 31):
        for chi in characters.enumerate_characters(p):
            for _ in range(50):
                a, b = rng.randrange(1, p), rng.randrange(1, p)
                worst = max(worst, abs(chi(a) * chi(b) - chi(a * b)))
    return worst


def _zeta_values() -> float:
    z2 = abs(lfunctions.riemann_zeta(2.0) - math.pi**2 / 6)
    zh = abs(lfunctions.riemann_zeta(0.5) - (-1.4603545088095868))
    quad3 = characters.enumerate_characters(3)[1]
    l1 = abs(lfunctions.dirichlet_l(1.0, quad3) - math.pi / (3 * math.sqrt(3)))
    return max(z2, zh, l1)


def _zeta_fe() -> float:
    ts = np.linspace(-60, 60, 50)
    return max(lfunctions.zeta_fe_residual(float(t)) for t in ts)


def _dirichlet_fe() -> float:
    ts = np.linspace(-40, 40, 17)
    worst = 0.0
    for p in (5, 13):
        for chi in characters.enumerate_characters(p).even():
            worst = max(worst, max(lfunctions.dirichlet_fe_residual(float(t), chi) for t in ts))
    return worst


def _additive_reciprocity() -> float:
    from .oracles import additive_reciprocity_check
    rng = random.Random(11)
    primes = [p for p in range(3, 102) if characters.is_prime(p)]
    worst = 0.0
    for _ in range(500):
        p, q = rng.sample(primes, 2)
        worst = max(worst, additive_reciprocity_check(rng.randint(1, 10**6), rng.randint(1, 10**6), p, q))
    return worst


def _character_split() -> float:
    from .oracles import character_split_check
    return character_split_check(ReciprocityInstance(5, 7, 20.0), 400)


def _residue() -> float:
    from .oracles import residue_main_term_check
    return residue_main_term_check(ReciprocityInstance(3, 5, 40.0))[2]


def _mellin() -> float:
    from .oracles import mellin_pair_check
    return mellin_pair_check()


def _decomposition() -> float:
    from .oracles import decomposition_check
    return decomposition_check(ReciprocityInstance(3, 5, 20.0)).decomposition_residual


def _window_transform() -> float:
    worst = 0.0
    for T in (5.0, 25.0):
        for xi in (-0.7, 0.0, 0.3):
            quad = numerics.gaussian_window_transform_quad(xi, T).value
            worst = max(worst, abs(quad - numerics.gaussian_window_transform(xi, T)))
            quad_w = numerics.gaussian_window_transform_quad(xi, T, weighted=True).value
            worst = max(worst, abs(quad_w - numerics.gaussian_window_transform_weighted(xi, T)))
    return worst


CHECKS: tuple[tuple[str, Callable[[], float], float], ...] = (
    ("gamma_reflection", _gamma_reflection, 1e-10),
    ("gamma_duplication", _gamma_duplication, 1e-10),
    ("digamma_values", _digamma, 1e-13),
    ("gaussian_window_transforms", _window_transform, 1e-9),
    ("gauss_sum", _gauss_sum, 1e-12),
    ("cosine_twisted_sum", _cosine_twisted, 1e-12),
    ("character_multiplicativity", _multiplicativity, 1e-14),
    ("orthogonality_p101", lambda: characters.orthogonality_residual(101), 1e-11),
    ("zeta_and_l_values", _zeta_values, 1e-10),
    ("zeta_functional_equation", _zeta_fe, 1e-9),
    ("dirichlet_functional_equation", _dirichlet_fe, 1e-9),
    ("additive_reciprocity", _additive_reciprocity, 1e-14),
    ("character_split", _character_split, 1e-10),
    ("residue_main_term", _residue, 1e-8),
    ("mellin_pairs", _mellin, 1e-8),
    ("decomposition_3_5_20", _decomposition, 1e-6),
)

FAULTS = ("gauss_sum_sign",)


@contextlib.contextmanager
def _injected(fault: str | None):
    if fault is None:
        yield
        return
    if fault == "gauss_sum_sign":
        original = characters.gauss_sum
        with mock.patch.object(characters, "gauss_sum", lambda chi: -original(chi)):
            yield
        return
    raise ValueError(f"unknown fault {fault!r}; known: {FAULTS}")


def selftest(fault: str | None = None) -> list[Check]:
    """Run every check; ``fault`` injects a known defect to exercise the harness."""
    out = []
    with _injected(fault):
        for name, fn, bound in CHECKS:
            try:
                value = float(fn())
            except Exception:  # a crash counts as a failed check
                value = float("inf")
            out.append(Check(name, value, bound))
    return out
