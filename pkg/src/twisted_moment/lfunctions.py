"""Hurwitz zeta, Riemann zeta and Dirichlet L-functions by Euler-Maclaurin summation.

All evaluators take arrays of complex ``s`` and return arrays of the same
shape.  The summation length at a point with imaginary part ``t`` is
``N = max(em_start, ceil(1.3 |t|))`` followed by ``em_bernoulli_terms``
Bernoulli corrections, which is far inside the convergence region of the
remainder.
"""

from __future__ import annotations

import math

import numpy as np

from .characters import DirichletCharacter, check_odd_prime
from .numerics import (DEFAULT_PLAN, DomainError, PoleError, QuadraturePlan,
                       bernoulli_numbers, complex_gamma, compensated_sum_complex,
                       unit_root)

_CHUNK_ELEMENTS = 1 << 21


def _em_lengths(s: np.ndarray, em_start: int) -> np.ndarray:
    return np.maximum(em_start, np.ceil(1.3 * np.abs(s.imag))).astype(np.int64)


def hurwitz_zeta(s, a: float = 1.0, *, em_start: int = DEFAULT_PLAN.em_start,
                 bernoulli_terms: int = DEFAULT_PLAN.em_bernoulli_terms,
                 length_scale: int = 1):
    """zeta(s, a) = sum over n >= 0 of (n + a)^{-s}, analytically continued.

    ``length_scale`` multiplies the summation length; it exists for
    self-consistency checks.
    """
    if not 0 < a <= 1:
        raise DomainError("Hurwitz parameter must lie in (0, 1]")
    s_arr = np.asarray(s, dtype=complex)
    scalar = s_arr.ndim == 0
    s_flat = np.atleast_1d(s_arr).ravel()
    if np.any(s_flat == 1):
        raise PoleError("zeta(s, a) has a pole at s = 1")

    N = _em_lengths(s_flat, em_start) * length_scale
    out = np.empty_like(s_flat)

    order = np.argsort(N, kind="stable")
    n_max = int(N.max())
    log_n = np.log(np.arange(n_max, dtype=float) + a)
    start = 0
    while start < len(order):
        # grow the chunk while rows * max length stays bounded
        stop = start + 1
        while stop < len(order) and (stop - start + 1) * N[order[stop]] <= _CHUNK_ELEMENTS:
            stop += 1
        idx = order[start:stop]
        width = int(N[idx].max())
        terms = np.exp(-s_flat[idx, None] * log_n[None, :width])
        terms[np.arange(width)[None, :] >= N[idx, None]] = 0
        out[idx] = terms.sum(axis=1)
        start = stop

    # Euler-Maclaurin tail starting at N
    x = N + a
    log_x = np.log(x)
    x_ms = np.exp(-s_flat * log_x)
    out += x * x_ms / (s_flat - 1) + 0.5 * x_ms
    rising = s_flat.copy()  # s (s+1) ... (s+2k-2)
    inv_x2 = 1.0 / (x * x)
    power = x_ms / x  # x^{-s-1}
    for k, b2k in enumerate(bernoulli_numbers(bernoulli_terms), start=1):
        out += float(b2k) / math.factorial(2 * k) * rising * power
        rising = rising * (s_flat + 2 * k - 1) * (s_flat + 2 * k)
        power = power * inv_x2

    out = out.reshape(np.shape(s_arr)) if not scalar else out
    return complex(out[0]) if scalar else out


def _plan_kwargs(plan: QuadraturePlan) -> dict:
    return {"em_start": plan.em_start, "bernoulli_terms": plan.em_bernoulli_terms}


def riemann_zeta(s, plan: QuadraturePlan = DEFAULT_PLAN, **kw):
    return hurwitz_zeta(s, 1.0, **{**_plan_kwargs(plan), **kw})


def dirichlet_l_many(s, chars, plan: QuadraturePlan = DEFAULT_PLAN, **kw) -> np.ndarray:
    """L(s, chi) for several characters of one modulus; shape (len(s), len(chars)).

    Uses L(s, chi) = p^{-s} sum over a of chi(a) zeta(s, a/p), so the p-1
    Hurwitz evaluations are shared by all characters.
    """
    chars = list(chars)
    p = chars[0].modulus
    if any(c.modulus != p for c in chars):
        raise ValueError("all characters must share the modulus")
    s_flat = np.atleast_1d(np.asarray(s, dtype=complex)).ravel()
    if np.any(s_flat == 1) and any(c.is_principal for c in chars):
        raise PoleError("L(s, principal) has a pole at s = 1")
    s_eval = np.where(s_flat == 1, 2.0, s_flat)  # non-principal L is entire
    hz = np.stack([hurwitz_zeta(s_eval, a / p, **{**_plan_kwargs(plan), **kw})
                   for a in range(1, p)], axis=1)
    table = np.stack([c.values[1:] for c in chars], axis=1)
    out = np.exp(-s_eval * math.log(p))[:, None] * (hz @ table)
    at_one = s_flat == 1
    if np.any(at_one):
        # the limit at s = 1 for non-principal characters: -p^{-1} sum chi(a) psi(a/p)
        from scipy.special import digamma as _psi
        psi = np.array([_psi(a / p) for a in range(1, p)])
        out[at_one] = -(psi @ table) / p
    return out


def dirichlet_l(s, chi: DirichletCharacter, plan: QuadraturePlan = DEFAULT_PLAN, **kw):
    """L(s, chi) = p^{-s} sum_{a=1}^{p-1} chi(a) zeta(s, a/p)."""
    s_arr = np.asarray(s, dtype=complex)
    out = dirichlet_l_many(s_arr, [chi], plan, **kw)[:, 0]
    return complex(out[0]) if s_arr.ndim == 0 else out.reshape(s_arr.shape)


# ---------------------------------------------------------------------------
# functional equation diagnostics


def zeta_gamma_ratio_factor(t, s: complex = 0.0) -> np.ndarray:
    """pi^{-s-it} Gamma(1/4 + s/2 + it/2) / Gamma(1/4 - s/2 - it/2)."""
    t = np.asarray(t, dtype=float)
    u = s + 1j * t
    return np.exp(-u * math.log(math.pi)) * complex_gamma(0.25 + u / 2) / complex_gamma(0.25 - u / 2)


def zeta_cosine_factor(t, s: complex = 0.0) -> np.ndarray:
    """2 (2 pi)^{-1/2-s-it} cos(pi(1/4 + s/2 + it/2)) Gamma(1/2 + s + it)."""
    t = np.asarray(t, dtype=float)
    u = s + 1j * t
    return (2.0 * np.exp(-(0.5 + u) * math.log(2 * math.pi))
            * np.cos(np.pi * (0.25 + u / 2)) * complex_gamma(0.5 + u))


def zeta_fe_residual(t: float, form: str = "both", plan: QuadraturePlan = DEFAULT_PLAN) -> float:
    """|zeta(1/2 - it) - factor(t) zeta(1/2 + it)| for the gamma-ratio and cosine forms."""
    zp = riemann_zeta(0.5 + 1j * t, plan)
    zm = riemann_zeta(0.5 - 1j * t, plan)
    residuals = []
    if form in ("ratio", "both"):
        residuals.append(abs(zm - complex(zeta_gamma_ratio_factor(t)) * zp))
    if form in ("cosine", "both"):
        residuals.append(abs(zm - complex(zeta_cosine_factor(t)) * zp))
    if not residuals:
        raise ValueError(f"unknown form {form!r}")
    return max(residuals)


def _root_gauss_sum(chi: DirichletCharacter) -> complex:
    # independent of characters.gauss_sum: vectorized over residues
    p = chi.modulus
    phases = np.array([unit_root(a, p) for a in range(1, p)])
    return compensated_sum_complex(phases * chi.values[1:])


def dirichlet_fe_phase(t, p: int) -> np.ndarray:
    """(p/pi)^{-it} Gamma((1-2it)/4) / Gamma((1+2it)/4), of unit modulus."""
    t = np.asarray(t, dtype=float)
    return (np.exp(-1j * t * math.log(p / math.pi))
            * complex_gamma(0.25 - 0.5j * t) / complex_gamma(0.25 + 0.5j * t))


def dirichlet_fe_residual(t: float, chi: DirichletCharacter,
                          plan: QuadraturePlan = DEFAULT_PLAN) -> float:
    """|tau(conj chi) L(1/2+it, chi)^2 - sqrt(p) phase(t) |L(1/2+it, chi)|^2| for even chi."""
    check_odd_prime(chi.modulus)
    if not chi.is_even or chi.is_principal:
        raise ValueError("the functional equation check needs an even non-principal character")
    p = chi.modulus
    L = dirichlet_l(0.5 + 1j * t, chi, plan)
    lhs = _root_gauss_sum(chi.conj()) * L * L
    rhs = math.sqrt(p) * complex(dirichlet_fe_phase(t, p)) * abs(L) ** 2
    return abs(lhs - rhs)
