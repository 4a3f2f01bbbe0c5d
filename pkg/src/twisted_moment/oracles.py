"""Independent numerical checks of each intermediate identity in the reciprocity proof.

Notation.  F(s) is the shifted moment

    F(s) = integral of (p/q)^{it} zeta(1/2-s-it) (zeta(1/2+s+it) - (s-1/2+it)^{-1}) w(t) dt

with w(t) = exp(-t^2/T^2).  After the functional equation, a Mellin
expansion of cos * Gamma and the Gaussian Fourier transform, F(0) splits
as F1(0) + F2(0) + F3(0), each an absolutely convergent sum over nm (or n)
of y-integrals.  F2(0) is then approximated by a cosine sum, which the
character split and a Mellin inversion turn into the main term plus the
dual moment.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .characters import enumerate_characters, modular_inverse
from .lfunctions import hurwitz_zeta
from .moments import ReciprocityInstance, lhs_frequency, main_term, zeta_on_line
from .numerics import (DEFAULT_PLAN, SQRT_PI, QuadraturePlan, QuadratureResult,
                       compensated_sum, compensated_sum_complex, complex_gamma,
                       cos_rational, integrate_panels, unit_root)


class TruncationWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class IntermediateLedger:
    p: int
    q: int
    T: float
    f0_direct: complex
    pole_correction: complex
    f1_0: float
    f2_0_exact: float
    f2_0_cos_sum: float
    f3_0: float
    decomposition_residual: float
    approx_gap: float
    decomposition_error_estimate: float
    error_estimates: dict

    def as_dict(self) -> dict:
        d = asdict(self)
        for key in ("f0_direct", "pole_correction"):
            z = d.pop(key)
            d[key + "_re"] = z.real
            d[key + "_im"] = z.imag
        return d


# ---------------------------------------------------------------------------
# F(0) on the critical line


def _two_sided(inst: ReciprocityInstance, plan: QuadraturePlan, kernel) -> QuadratureResult:
    """Integrate kernel(t, zeta(1/2+it), zeta(1/2-it)) (p/q)^{it} w(t) over |t| <= cutoff.

    The negative half is evaluated at negative nodes, not by conjugation, so
    the imaginary part of the result is a genuine numerical residual.
    """
    T = inst.T
    cutoff = plan.lhs_cutoff_factor * T
    nu = lhs_frequency(inst.log_ratio)

    def half(sign):
        def integrand(u):
            t = sign * u
            zp = zeta_on_line(t, plan)
            zm = zeta_on_line(-t, plan)
            return kernel(t, zp, zm) * np.exp(1j * t * inst.log_ratio - (t / T) ** 2)
        return integrate_panels(integrand, 0.0, cutoff, plan, nu)

    pos, neg = half(1.0), half(-1.0)
    return QuadratureResult(complex(pos.value) + complex(neg.value), pos.error + neg.error,
                            pos.n_nodes + neg.n_nodes)


def _pole_kernel(t, zp, zm):
    return zm / (-0.5 + 1j * t)


def _f0_kernel(t, zp, zm):
    return zm * (zp - 1.0 / (-0.5 + 1j * t))


def pole_correction(inst: ReciprocityInstance, plan: QuadraturePlan = DEFAULT_PLAN) -> complex:
    """Integral of (p/q)^{it} zeta(1/2-it) (-1/2+it)^{-1} w(t) dt."""
    return complex(_two_sided(inst, plan, _pole_kernel).value)


def f_at_zero_direct(inst: ReciprocityInstance, plan: QuadraturePlan = DEFAULT_PLAN) -> complex:
    """F(0) by direct quadrature; equals lhs_moment - pole_correction."""
    return complex(_two_sided(inst, plan, _f0_kernel).value)


# ---------------------------------------------------------------------------
# y-integrals after the Fourier step


def _y_frequency(A: float, T: float):
    def nu(y):
        return 2.0 * A / T * math.exp(2.0 * y / T) + abs(y) + 1.0
    return nu


def sine_profile(A: float, T: float, plan: QuadraturePlan = DEFAULT_PLAN,
                 linear: bool = False, complex_form: bool = False) -> QuadratureResult:
    """Integral over |y| <= y_max of exp(-y/T) sin(A e^{2y/T}) exp(-y^2), times y if ``linear``.

    With ``complex_form`` the sine is taken as Im e(A e^{2y/T} / (2 pi)).
    """
    def integrand(y):
        phase = A * np.exp(2.0 * y / T)
        osc = np.exp(1j * phase).imag if complex_form else np.sin(phase)
        g = np.exp(-y / T - y * y) * osc
        return y * g if linear else g

    return integrate_panels(integrand, -plan.y_max, plan.y_max, plan, _y_frequency(A, T))


def nm_cutoff(inst: ReciprocityInstance, plan: QuadraturePlan = DEFAULT_PLAN) -> int:
    """Truncation X for the nm-sums: multiplier * T p / q."""
    return max(1, math.ceil(plan.sum_cutoff_multiplier * inst.T * inst.p / inst.q))


def divisor_counts(X: int) -> np.ndarray:
    """d(k) for k = 0..X (d(0) = 0); multiplicity of k as a product nm."""
    d = np.zeros(X + 1, dtype=np.int64)
    for i in range(1, X + 1):
        d[i::i] += 1
    return d


@dataclass(frozen=True)
class SumResult:
    value: float
    error: float
    tail_estimate: float
    terms: int


def _profile_sum(inst: ReciprocityInstance, plan: QuadraturePlan, weights: np.ndarray,
                 linear: bool, complex_form: bool = False) -> SumResult:
    """Sum over k of weights[k]/k * profile(2 pi k q/p)."""
    X = len(weights) - 1
    terms, errs = [], []
    for k in range(1, X + 1):
        if weights[k] == 0:
            continue
        A = 2.0 * math.pi * k * inst.q / inst.p
        r = sine_profile(A, inst.T, plan, linear=linear, complex_form=complex_form)
        terms.append(weights[k] / k * float(r.value))
        errs.append(weights[k] / k * r.error)
    tail = float(sum(abs(x) for x in terms[-max(1, len(terms) // 10):]))
    return SumResult(compensated_sum(terms), compensated_sum(errs), tail, len(terms))


def _check_tail(name: str, res: SumResult, scale: float, plan: QuadraturePlan):
    if scale * res.tail_estimate > plan.target_abs_tol:
        warnings.warn(f"{name}: truncated sum tail estimate {scale * res.tail_estimate:.3g} "
                      "exceeds tolerance", TruncationWarning, stacklevel=3)


def _f1(inst, plan) -> SumResult:
    X = nm_cutoff(inst, plan)
    res = _profile_sum(inst, plan, divisor_counts(X), linear=False)
    scale = math.sqrt(inst.p / inst.q) / SQRT_PI
    _check_tail("F1(0)", res, scale, plan)
    return SumResult(scale * res.value, scale * res.error, scale * res.tail_estimate, res.terms)


def f1_at_zero(inst: ReciprocityInstance, plan: QuadraturePlan = DEFAULT_PLAN) -> float:
    """F1(0) = pi^{-1/2} (p/q)^{1/2} sum over nm of (nm)^{-1} * sine profile at 2 pi nm q/p."""
    return _f1(inst, plan).value


def _f3(inst, plan) -> SumResult:
    X = nm_cutoff(inst, plan)
    ones = np.ones(X + 1, dtype=np.int64)
    ones[0] = 0
    res = _profile_sum(inst, plan, ones, linear=False)
    scale = 2.0 * math.sqrt(inst.p / inst.q) / SQRT_PI
    _check_tail("F3(0)", res, scale, plan)
    return SumResult(scale * res.value, scale * res.error, scale * res.tail_estimate, res.terms)


def f3_at_zero(inst: ReciprocityInstance, plan: QuadraturePlan = DEFAULT_PLAN) -> float:
    """F3(0) = 2 pi^{-1/2} (p/q)^{1/2} sum over n of n^{-1} * sine profile at 2 pi n q/p."""
    return _f3(inst, plan).value


def _f2(inst, plan, complex_form: bool) -> SumResult:
    X = nm_cutoff(inst, plan)
    res = _profile_sum(inst, plan, divisor_counts(X), linear=True, complex_form=complex_form)
    scale = 2.0 * inst.T * math.sqrt(inst.p / inst.q) / SQRT_PI
    _check_tail("F2(0)", res, scale, plan)
    return SumResult(scale * res.value, scale * res.error, scale * res.tail_estimate, res.terms)


def f2_at_zero_exact(inst: ReciprocityInstance, plan: QuadraturePlan = DEFAULT_PLAN) -> float:
    """F2(0) = Im (2T/sqrt(pi)) (p/q)^{1/2} sum (nm)^{-1} integral e((nmq/p) e^{2y/T}) y e^{-y^2-y/T} dy."""
    return _f2(inst, plan, complex_form=True).value


def f2_at_zero_sine_form(inst: ReciprocityInstance, plan: QuadraturePlan = DEFAULT_PLAN) -> float:
    """The same quantity before rewriting the sine as the imaginary part of e(.)."""
    return _f2(inst, plan, complex_form=False).value


def cos_sum_weight(k, inst: ReciprocityInstance) -> np.ndarray:
    """exp(-(2 pi k q/(p T))^2)."""
    k = np.asarray(k, dtype=float)
    return np.exp(-(2.0 * math.pi * k * inst.q / (inst.p * inst.T)) ** 2)


def cos_sum_cutoff(inst: ReciprocityInstance, plan: QuadraturePlan = DEFAULT_PLAN) -> int:
    # Gaussian weight below 1e-16 beyond this point
    gauss = math.ceil(math.sqrt(37.0) * inst.p * inst.T / (2 * math.pi * inst.q))
    return max(nm_cutoff(inst, plan), gauss)


def f2_at_zero_cos_sum(inst: ReciprocityInstance, plan: QuadraturePlan = DEFAULT_PLAN) -> float:
    """4 pi (q/p)^{1/2} sum over nm of cos(2 pi nm q/p) exp(-(2 pi nm q/(pT))^2)."""
    X = cos_sum_cutoff(inst, plan)
    d = divisor_counts(X)
    k = np.arange(1, X + 1)
    w = cos_sum_weight(k, inst)
    terms = [d[j] * cos_rational(j * inst.q, inst.p) * w[j - 1] for j in range(1, X + 1)]
    return 4.0 * math.pi * math.sqrt(inst.q / inst.p) * compensated_sum(terms)


def decomposition_check(inst: ReciprocityInstance, plan: QuadraturePlan = DEFAULT_PLAN) -> IntermediateLedger:
    """Fill the ledger of intermediate values and cross-check F(0) = F1(0) + F2(0) + F3(0)."""
    f0 = _two_sided(inst, plan, _f0_kernel)
    pc = _two_sided(inst, plan, _pole_kernel)
    f1 = _f1(inst, plan)
    f2 = _f2(inst, plan, complex_form=True)
    f3 = _f3(inst, plan)
    cos_sum = f2_at_zero_cos_sum(inst, plan)
    f0v = complex(f0.value)
    total = compensated_sum([f1.value, f2.value, f3.value])
    residual = abs(f0v - total)
    errors = {"f0_direct": f0.error, "pole_correction": pc.error, "f1_0": f1.error,
              "f2_0_exact": f2.error, "f3_0": f3.error,
              "f1_tail": f1.tail_estimate, "f2_tail": f2.tail_estimate, "f3_tail": f3.tail_estimate}
    return IntermediateLedger(
        p=inst.p, q=inst.q, T=inst.T,
        f0_direct=f0v, pole_correction=complex(pc.value),
        f1_0=f1.value, f2_0_exact=f2.value, f2_0_cos_sum=cos_sum, f3_0=f3.value,
        decomposition_residual=residual,
        approx_gap=abs(f2.value - cos_sum),
        decomposition_error_estimate=f0.error + f1.error + f2.error + f3.error,
        error_estimates=errors,
    )


# ---------------------------------------------------------------------------
# exact arithmetic identities


def additive_reciprocity_check(n: int, m: int, p: int, q: int) -> float:
    """|e(nm pbar/q) - e(-nm qbar/p) e(nm/(pq))| with exactly reduced rational phases."""
    if p == q:
        raise ValueError("p and q must be distinct")
    k = n * m
    pbar = modular_inverse(p, q)
    qbar = modular_inverse(q, p)
    left = Fraction(k * pbar % q, q)
    right = (Fraction(-k * qbar, p) + Fraction(k, p * q)) % 1
    return abs(unit_root(left.numerator, left.denominator)
               - unit_root(right.numerator, right.denominator))


def _pair_sum(inst: ReciprocityInstance, X: int, coeff) -> float:
    """Sum over n, m >= 1 with nm <= X of coeff(nm) * weight(nm), in (n, m) order."""
    terms = []
    for n in range(1, X + 1):
        for m in range(1, X // n + 1):
            k = n * m
            terms.append(coeff(k) * float(cos_sum_weight(k, inst)))
    return compensated_sum(terms)


def character_split_check(inst: ReciprocityInstance, X: int, substitute: bool = True) -> float:
    """Difference between the truncated cosine sum and its residue-class/character reassembly.

    The nm = 0 mod p part is written as (n = p n') + (m = p m') - (nm = p^2 n' m');
    the rest uses orthogonality of characters mod p after r -> r qbar, which
    turns cos(2 pi r q/p) into cos(2 pi r/p) and brings out chi(q).  With
    ``substitute=False`` the factor chi(q) is dropped, which must break the identity.
    """
    p, q = inst.p, inst.q
    direct = _pair_sum(inst, X, lambda k: cos_rational(k * q, p))
    reassembled = split_reassembly(inst, X, substitute)
    return abs(direct - reassembled)


def split_reassembly(inst: ReciprocityInstance, X: int, substitute: bool = True) -> float:
    p, q = inst.p, inst.q
    # n = p n'
    terms = []
    for n1 in range(1, X // p + 1):
        for m in range(1, X // (p * n1) + 1):
            terms.append(float(cos_sum_weight(p * n1 * m, inst)))
    # m = p m'
    for n in range(1, X // p + 1):
        for m1 in range(1, X // (p * n) + 1):
            terms.append(float(cos_sum_weight(p * n * m1, inst)))
    # nm = p^2 n' m'
    for n1 in range(1, X // (p * p) + 1):
        for m1 in range(1, X // (p * p * n1) + 1):
            terms.append(-float(cos_sum_weight(p * p * n1 * m1, inst)))
    zero_part = compensated_sum(terms)

    fam = enumerate_characters(p)
    char_sums = []
    for chi in fam:
        # sum over nm <= X of chi(nm) w(nm)
        s = []
        for n in range(1, X + 1):
            for m in range(1, X // n + 1):
                k = n * m
                if k % p:
                    s.append(chi.values[k % p] * complex(cos_sum_weight(k, inst)))
        char_sums.append(compensated_sum_complex(s))

    outer = []
    for r in range(1, p):
        c = cos_rational(r, p)
        for chi, cs in zip(fam, char_sums):
            twist = chi(q) if substitute else 1.0
            outer.append(c * np.conj(chi.values[r]) * twist * cs)
    nonzero_part = compensated_sum_complex(outer) / (p - 1)
    return zero_part + nonzero_part.real


# ---------------------------------------------------------------------------
# contour and Mellin checks


def _main_integrand(w: np.ndarray, inst: ReciprocityInstance, plan: QuadraturePlan) -> np.ndarray:
    p, q, T = inst.p, inst.q, inst.T
    H = (2.0 * np.exp(-w * math.log(q)) - np.exp(-w * math.log(p * q))
         - np.exp(w * math.log(p / q)) * (1.0 - np.exp(-w * math.log(p))) ** 2 / (p - 1))
    z = hurwitz_zeta(w, 1.0, em_start=plan.em_start, bernoulli_terms=plan.em_bernoulli_terms)
    return (2.0 * math.pi * complex_gamma(w / 2) * np.exp(w * math.log(T / (2 * math.pi)))
            * H * z * z)


def residue_main_term_check(inst: ReciprocityInstance, radius: float = 0.25, points: int = 128,
                            plan: QuadraturePlan = DEFAULT_PLAN) -> tuple[float, float, float]:
    """(contour value, closed-form main term, |difference|) for the double pole at w = 1."""
    if not 0 < radius < 1:
        raise ValueError("radius must lie in (0, 1) to enclose only w = 1")
    theta = 2.0 * math.pi * np.arange(points) / points
    dw = radius * np.exp(1j * theta)
    vals = _main_integrand(1.0 + dw, inst, plan) * dw
    contour = math.sqrt(inst.q / inst.p) * compensated_sum_complex(vals).real / points
    closed = main_term(inst)
    return contour, closed, abs(contour - closed)


def _sin_head(a: complex, upper: float = math.pi / 2, terms: int = 40) -> complex:
    """Integral over [0, upper] of x^a sin x dx by termwise integration of the Taylor series."""
    total = 0j
    for k in range(terms):
        e = a + 2 * k + 2
        total += (-1) ** k / math.factorial(2 * k + 1) * upper**e / e
    return complex(total)


def _cos_tail(b: complex, X: float, terms: int = 12) -> tuple[complex, float]:
    """Integral over [X, inf) of x^b cos x dx by the asymptotic integration-by-parts series."""
    # I = i X^b e^{iX} (1 + (ib)/X + (ib)(i(b-1))/X^2 + ...); cos part is Re for real b
    acc = 0j
    term = 1 + 0j
    last = 0.0
    for k in range(terms):
        acc += term
        last = abs(term)
        term = term * 1j * (b - k) / X
    e_plus = 1j * np.exp(b * math.log(X)) * np.exp(1j * X) * acc
    # same series for e^{-ix}: conjugate direction
    acc_m = 0j
    term = 1 + 0j
    for k in range(terms):
        acc_m += term
        term = term * (-1j) * (b - k) / X
    e_minus = -1j * np.exp(b * math.log(X)) * np.exp(-1j * X) * acc_m
    return complex(0.5 * (e_plus + e_minus)), float(last * abs(np.exp(b.real * math.log(X))))


def cosine_mellin_split(s: complex, plan: QuadraturePlan = DEFAULT_PLAN,
                        X: float = 200.5 * math.pi) -> tuple[complex, float]:
    """Integral of x^{-1/2+s} cos x over (0, inf) via the split at x = pi/2.

    Integration by parts gives -(s-1/2) [ integral_0^{pi/2} x^{s-3/2} sin x dx
    + (s-3/2) integral_{pi/2}^inf x^{s-5/2} cos x dx ].  Returns (value, tail estimate).
    """
    s = complex(s)
    head = _sin_head(s - 1.5)
    b = s - 2.5

    def integrand(x):
        return np.exp(b * np.log(x)) * np.cos(x)

    body = integrate_panels(integrand, math.pi / 2, X, plan, lambda x: 1.0)
    tail, tail_err = _cos_tail(b, X)
    value = -(s - 0.5) * (head + (s - 1.5) * (complex(body.value) + tail))
    return value, tail_err + body.error


def gaussian_mellin(w: complex, scale: float = 1.0, plan: QuadraturePlan = DEFAULT_PLAN) -> complex:
    """Integral over (0, inf) of exp(-(scale x)^2) x^{w-1} dx by quadrature in log x."""
    w = complex(w)

    def integrand(u):
        x = np.exp(u)
        return np.exp(-(scale * x) ** 2 + w * u)

    lo = -60.0 / max(w.real, 0.5) - math.log(scale)
    hi = math.log(8.0 / scale)
    res = integrate_panels(integrand, lo, hi, plan, lambda u: abs(w.imag) + 2 * math.exp(2 * u) * scale**2)
    return complex(res.value)


def mellin_pair_check(s_samples=(0.0, 0.25, -0.2 + 1.5j, 0.3 - 4j),
                      w_samples=(2.0, 2 + 1j, 2 - 3.5j), scales=(1.0, 0.05),
                      plan: QuadraturePlan = DEFAULT_PLAN) -> float:
    """Max residual of the two Mellin pairs used in the proof.

    cos pair:      integral x^{-1/2+s} cos x dx = cos(pi(1/4 + s/2)) Gamma(1/2 + s)
    Gaussian pair: integral exp(-(ax)^2) x^{w-1} dx = Gamma(w/2) a^{-w} / 2
    """
    worst = 0.0
    for s in s_samples:
        if not -0.5 < complex(s).real < 0.5:
            raise ValueError("cosine Mellin pair needs |Re s| < 1/2")
        value, tail = cosine_mellin_split(s, plan)
        if tail > 1e-8:
            warnings.warn(f"conditional-convergence tail {tail:.3g} at s={s}", TruncationWarning,
                          stacklevel=2)
        exact = np.cos(np.pi * (0.25 + s / 2)) * complex_gamma(0.5 + s)
        worst = max(worst, abs(value - exact))
    for w in w_samples:
        for a in scales:
            exact = 0.5 * complex_gamma(complex(w) / 2) * a ** (-complex(w))
            worst = max(worst, abs(gaussian_mellin(w, a, plan) - exact) / max(1.0, abs(exact)))
    return worst
