import math
import random

import mpmath
import numpy as np
import pytest
from scipy.integrate import quad
from hypothesis import given, settings
from hypothesis import strategies as st

from twisted_moment import oracles as orc
from twisted_moment.moments import ReciprocityInstance, lhs_moment, main_term
from twisted_moment.numerics import DEFAULT_PLAN

I35 = ReciprocityInstance(3, 5, 20)
I53 = ReciprocityInstance(5, 3, 20)
I57 = ReciprocityInstance(5, 7, 20)


def test_f0_real_and_split():
    f0 = orc.f_at_zero_direct(I53)
    assert abs(f0.imag) <= 1e-9
    pc = orc.pole_correction(I53)
    assert abs(f0 - lhs_moment(I53) + pc) < 1e-8


def test_pole_correction_real_and_bounded():
    for inst in (I35, I53):
        pc = orc.pole_correction(inst)
        assert abs(pc.imag) < 1e-9 and abs(pc.real) <= 10


def test_pole_correction_not_swap_invariant():
    # zeta(1/2-it)/(-1/2+it) is not even in t, so reversing the twist moves the value
    assert abs(orc.pole_correction(I35).real - orc.pole_correction(I53).real) > 1.0


def test_pole_correction_against_mpmath():
    inst = ReciprocityInstance(3, 5, 2.5)
    delta = math.log(3 / 5)

    def f(t):
        z = mpmath.zeta(mpmath.mpc(0.5, -t)) / mpmath.mpc(-0.5, t) * mpmath.expj(t * delta)
        return 2 * float(z.real) * math.exp(-(t / inst.T) ** 2)

    ref, _ = quad(f, 0, 7 * inst.T, limit=200, epsabs=1e-13, epsrel=1e-13)
    assert abs(orc.pole_correction(inst) - ref) < 1e-9


def test_f2_complex_form_equals_sine_form():
    assert abs(orc.f2_at_zero_exact(I57) - orc.f2_at_zero_sine_form(I57)) < 1e-10


def test_f3_is_f1_machinery_with_unit_weights():
    # m = 1 restriction of the nm family: same sine profile, weight 1 instead of d(k)
    A = 2 * math.pi * 3 * I57.q / I57.p
    r = orc.sine_profile(A, I57.T)
    assert np.isfinite(r.value) and r.error < 1e-9
    d = orc.divisor_counts(12)
    assert list(d[1:13]) == [1, 2, 2, 3, 2, 4, 2, 4, 3, 4, 2, 6]


@pytest.mark.parametrize("name", ["sum_cutoff_multiplier", "y_max", "panel_width"])
def test_proof_terms_stable_under_doubling(name):
    plan = DEFAULT_PLAN.doubled(name)
    for fn in (orc.f1_at_zero, orc.f3_at_zero, orc.f2_at_zero_exact):
        assert abs(fn(I57, plan) - fn(I57)) <= 1e-8


def test_cos_sum_vanishes_for_tiny_T():
    inst = ReciprocityInstance(3, 101, 1.01)
    assert abs(orc.f2_at_zero_cos_sum(inst)) < 1e-300
    assert orc.cos_sum_weight(1, inst) == 0.0


def test_cos_sum_equals_character_reassembly():
    X = orc.cos_sum_cutoff(I57)
    reassembled = 4 * math.pi * math.sqrt(I57.q / I57.p) * orc.split_reassembly(I57, X)
    assert abs(reassembled - orc.f2_at_zero_cos_sum(I57)) < 1e-10


@pytest.mark.parametrize("inst", [I35, I53, I57, ReciprocityInstance(7, 11, 40)])
def test_character_split_identity(inst):
    assert orc.character_split_check(inst, 150) <= 1e-10


@pytest.mark.parametrize("inst", [I57, ReciprocityInstance(7, 11, 40)])
def test_character_split_detects_missing_twist(inst):
    assert orc.character_split_check(inst, 150, substitute=False) > 1e-3


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 10**9), st.integers(1, 10**9),
       st.sampled_from([3, 5, 7, 11, 13, 101]), st.sampled_from([3, 5, 7, 17, 97]))
def test_additive_reciprocity(n, m, p, q):
    if p == q:
        return
    assert orc.additive_reciprocity_check(n, m, p, q) <= 1e-14


def test_additive_reciprocity_rejects_equal_moduli():
    with pytest.raises(ValueError):
        orc.additive_reciprocity_check(1, 1, 5, 5)


@pytest.mark.parametrize("radius", [0.125, 0.25, 0.5])
def test_residue_main_term(radius):
    contour, closed, diff = orc.residue_main_term_check(I57, radius=radius)
    assert closed == main_term(I57) and diff <= 1e-8


def test_residue_radius_validation():
    with pytest.raises(ValueError):
        orc.residue_main_term_check(I57, radius=1.0)


def test_mellin_pairs():
    assert orc.mellin_pair_check() <= 1e-8


@pytest.mark.parametrize("inst", [I35, I53])
def test_decomposition(inst):
    led = orc.decomposition_check(inst)
    assert led.decomposition_residual <= 1e-6
    total = math.fsum([led.f1_0, led.f2_0_exact, led.f3_0])
    assert led.decomposition_residual == abs(led.f0_direct - total)
    assert led.approx_gap == abs(led.f2_0_exact - led.f2_0_cos_sum)
    assert all(np.isfinite(v) for v in led.as_dict().values() if isinstance(v, float))


def test_ledger_terms_match_standalone_calls():
    led = orc.decomposition_check(I57)
    assert led.f1_0 == orc.f1_at_zero(I57)
    assert led.f3_0 == orc.f3_at_zero(I57)
    assert led.f2_0_cos_sum == orc.f2_at_zero_cos_sum(I57)


def test_nm_cutoff():
    assert orc.nm_cutoff(I35) == math.ceil(2 * 20 * 3 / 5)


def test_random_tuples_reproducible():
    rng = random.Random(0)
    tuples = [(rng.randint(1, 99), rng.randint(1, 99)) for _ in range(5)]
    assert all(orc.additive_reciprocity_check(n, m, 7, 11) == 0.0 for n, m in tuples)
