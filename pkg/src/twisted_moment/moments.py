"""The three sides of the reciprocity relation and its corollary.

For distinct odd primes p, q and T > 1 the relation compares

    lhs  = integral of (p/q)^{it} |zeta(1/2+it)|^2 exp(-t^2/T^2) dt
    main = sqrt(pi/(pq)) T (log(T/(2 pi pq)) + 2 gamma + psi(1/2)/2)
    dual = (T/2pi)^{1/2} p^{1/2}/(p-1) sum over even primitive chi mod p of
           chi(q) integral of Gamma((1-2it)/4) (T/2q)^{it} |L(1/2+it, chi)|^2 dt

and the residual lhs - main - dual is expected to stay of size
sqrt(q/p) + sqrt(p/q) up to slowly growing factors.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np

from .characters import check_odd_prime, enumerate_characters
from .lfunctions import dirichlet_l_many, riemann_zeta
from .numerics import (DEFAULT_PLAN, EULER_GAMMA, QuadraturePlan, QuadratureResult,
                       complex_gamma, digamma, integrate_panels)


@dataclass(frozen=True)
class ReciprocityInstance:
    p: int
    q: int
    T: float

    def __post_init__(self):
        check_odd_prime(self.p)
        check_odd_prime(self.q)
        if self.p == self.q:
            raise ValueError("p and q must be distinct")
        if not self.T > 1:
            raise ValueError("T must exceed 1")
        object.__setattr__(self, "p", int(self.p))
        object.__setattr__(self, "q", int(self.q))
        object.__setattr__(self, "T", float(self.T))

    def swapped(self) -> "ReciprocityInstance":
        return ReciprocityInstance(self.q, self.p, self.T)

    @property
    def log_ratio(self) -> float:
        # log p - log q is exactly antisymmetric under p <-> q
        return math.log(self.p) - math.log(self.q)


@dataclass(frozen=True)
class MomentReport:
    p: int
    q: int
    T: float
    lhs: float
    main: float
    dual: float
    dual_imag_residual: float
    residual: float
    bound_scale: float
    normalized_residual: float
    quadrature_error_estimate: float

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class CorollaryReport:
    p: int
    q: int
    T: float
    d_pq: float
    d_qp: float
    difference: float
    bound_scale: float
    normalized_difference: float
    quadrature_error_estimate: float

    def as_dict(self) -> dict:
        return asdict(self)


# ---------------------------------------------------------------------------
# zeta on the critical line


@lru_cache(maxsize=16)
def _zeta_on_line(t_bytes: bytes, em_start: int, bernoulli_terms: int) -> np.ndarray:
    t = np.frombuffer(t_bytes, dtype=float)
    z = riemann_zeta(0.5 + 1j * t, em_start=em_start, bernoulli_terms=bernoulli_terms)
    z.setflags(write=False)
    return z


def zeta_on_line(t: np.ndarray, plan: QuadraturePlan = DEFAULT_PLAN) -> np.ndarray:
    """zeta(1/2 + it) on a node array; memoized per node array (values unaffected)."""
    t = np.ascontiguousarray(t, dtype=float)
    return _zeta_on_line(t.tobytes(), plan.em_start, plan.em_bernoulli_terms)


def pole_proximity(t: float) -> float:
    """Resolution demand from the poles at t = +-i/2 (zeta at s = 1, Gamma((1-2it)/4))."""
    return 3.0 / math.hypot(t, 0.5)


def lhs_frequency(log_ratio: float):
    """Oscillation rate of the lhs integrand: the twist plus zeta's local rotation."""
    twist = abs(log_ratio)

    def nu(t):
        return (twist + max(0.0, math.log((abs(t) + 2.0) / (2.0 * math.pi)))
                + pole_proximity(t))

    return nu


# ---------------------------------------------------------------------------
# the three sides


def lhs_quadrature(inst: ReciprocityInstance, plan: QuadraturePlan = DEFAULT_PLAN) -> QuadratureResult:
    T = inst.T
    delta = inst.log_ratio

    def integrand(t):
        z = zeta_on_line(t, plan)
        return 2.0 * np.cos(t * delta) * (z.real**2 + z.imag**2) * np.exp(-(t / T) ** 2)

    return integrate_panels(integrand, 0.0, plan.lhs_cutoff_factor * T, plan,
                            lhs_frequency(delta))


def lhs_moment(inst: ReciprocityInstance, plan: QuadraturePlan = DEFAULT_PLAN) -> float:
    """Twisted second moment of zeta with the Gaussian window exp(-t^2/T^2).

    Evaluated as 2 * integral over [0, cutoff] of cos(t log(p/q)) |zeta|^2
    exp(-t^2/T^2), so the value is real and symmetric in p, q by construction.
    """
    return float(lhs_quadrature(inst, plan).value)


def lhs_envelope(inst: ReciprocityInstance, plan: QuadraturePlan = DEFAULT_PLAN) -> float:
    """2 * integral over [0, cutoff] of |zeta(1/2+it)|^2 exp(-t^2/T^2); bounds |lhs|."""
    T = inst.T

    def integrand(t):
        z = zeta_on_line(t, plan)
        return 2.0 * (z.real**2 + z.imag**2) * np.exp(-(t / T) ** 2)

    return float(integrate_panels(integrand, 0.0, plan.lhs_cutoff_factor * T, plan,
                                  lhs_frequency(inst.log_ratio)).value)


def main_term(inst: ReciprocityInstance) -> float:
    """sqrt(pi/(pq)) T (log(T/(2 pi pq)) + 2 gamma + psi(1/2)/2)."""
    pq = inst.p * inst.q
    return (math.sqrt(math.pi / pq) * inst.T
            * (math.log(inst.T / (2 * math.pi * pq)) + 2 * EULER_GAMMA + 0.5 * digamma(0.5)))


def _dual_frequency(T: float, q: int, p: int):
    twist = abs(math.log(T / (2 * q)))

    def nu(t):
        a = abs(t) + 2.0
        # gamma phase rotation plus |L|^2 oscillation
        return (twist + 0.5 * math.log(a / 2.0) + max(0.0, math.log(a * p / (2 * math.pi)))
                + pole_proximity(t))

    return nu


def character_moment_terms(p: int, q: int, T: float, plan: QuadraturePlan = DEFAULT_PLAN):
    """Per-character integrals of Gamma((1-2it)/4) (T/2q)^{it} |L(1/2+it, chi)|^2.

    Returns (characters, complex integrals, error estimate) over the even
    non-principal characters modulo p.
    """
    fam = enumerate_characters(p)
    chars = fam.even()
    if not chars:
        return [], np.zeros(0, dtype=complex), 0.0
    log_twist = math.log(T / (2 * q))

    def integrand(t):
        L = dirichlet_l_many(0.5 + 1j * t, chars, plan)
        weight = complex_gamma(0.25 - 0.5j * t) * np.exp(1j * t * log_twist)
        return weight[:, None] * (L.real**2 + L.imag**2)

    res = integrate_panels(integrand, -plan.dual_cutoff, plan.dual_cutoff, plan,
                           _dual_frequency(T, q, p))
    return chars, np.atleast_1d(res.value), res.error


def _character_moment(p: int, q: int, T: float, plan: QuadraturePlan):
    chars, integrals, err = character_moment_terms(p, q, T, plan)
    if not chars:
        return 0j, 0.0
    coeffs = np.array([chi(q) for chi in chars])
    scale = math.sqrt(p) / (p - 1)
    total = scale * complex(np.sum(coeffs * integrals))
    return total, scale * len(chars) * err


def character_moment(p: int, q: int, T: float, plan: QuadraturePlan = DEFAULT_PLAN) -> complex:
    """p^{1/2}/(p-1) * sum over even primitive chi mod p of chi(q) * integral (no T prefactor)."""
    check_odd_prime(p)
    check_odd_prime(q)
    return _character_moment(p, q, T, plan)[0]


def dual_moment(inst: ReciprocityInstance, plan: QuadraturePlan = DEFAULT_PLAN) -> tuple[float, float]:
    """(real part of the dual moment, |imaginary part| as a realness diagnostic)."""
    value, _ = _dual(inst, plan)
    return value.real, abs(value.imag)


def _dual(inst: ReciprocityInstance, plan: QuadraturePlan):
    d, err = _character_moment(inst.p, inst.q, inst.T, plan)
    pref = math.sqrt(inst.T / (2 * math.pi))
    return pref * d, pref * err


def bound_scale(inst: ReciprocityInstance) -> float:
    return math.sqrt(inst.q / inst.p) + math.sqrt(inst.p / inst.q)


def verify_theorem(inst: ReciprocityInstance, plan: QuadraturePlan = DEFAULT_PLAN) -> MomentReport:
    lhs_res = lhs_quadrature(inst, plan)
    lhs = float(lhs_res.value)
    main = main_term(inst)
    dual_c, dual_err = _dual(inst, plan)
    dual = dual_c.real
    residual = lhs - main - dual
    scale = bound_scale(inst)
    return MomentReport(
        p=inst.p, q=inst.q, T=inst.T,
        lhs=lhs, main=main, dual=dual, dual_imag_residual=abs(dual_c.imag),
        residual=residual, bound_scale=scale, normalized_residual=residual / scale,
        quadrature_error_estimate=lhs_res.error + dual_err,
    )


def corollary_bound_scale(p: int, q: int, T: float) -> float:
    return math.sqrt(q / (p * T)) + math.sqrt(p / (q * T))


def verify_corollary(p: int, q: int, T: float, plan: QuadraturePlan = DEFAULT_PLAN) -> CorollaryReport:
    """D(p, q) - D(q, p), which carries no main term."""
    inst = ReciprocityInstance(p, q, T)
    d_pq, e1 = _character_moment(inst.p, inst.q, inst.T, plan)
    d_qp, e2 = _character_moment(inst.q, inst.p, inst.T, plan)
    diff = d_pq.real - d_qp.real
    scale = corollary_bound_scale(inst.p, inst.q, inst.T)
    return CorollaryReport(
        p=inst.p, q=inst.q, T=inst.T, d_pq=d_pq.real, d_qp=d_qp.real,
        difference=diff, bound_scale=scale, normalized_difference=diff / scale,
        quadrature_error_estimate=e1 + e2,
    )
