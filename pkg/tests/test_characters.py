import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twisted_moment import characters as ch

ODD_PRIMES = [p for p in range(3, 102) if all(p % d for d in range(2, int(p**0.5) + 1))]


def test_is_prime_against_trial_division():
    for n in range(-5, 2000):
        expected = n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))
        assert ch.is_prime(n) == expected


@pytest.mark.parametrize("bad,exc", [(4, ch.EvenModulusError), (2, ch.EvenModulusError),
                                     (9, ch.NotPrimeError), (1, ch.NotPrimeError),
                                     (-3, ch.NotPrimeError)])
def test_check_odd_prime_rejects(bad, exc):
    with pytest.raises(exc):
        ch.check_odd_prime(bad)


@pytest.mark.parametrize("p", ODD_PRIMES)
def test_primitive_root_generates(p):
    g = ch.primitive_root(p)
    assert sorted(pow(g, k, p) for k in range(p - 1)) == list(range(1, p))
    assert all(len({pow(h, k, p) for k in range(p - 1)}) < p - 1 for h in range(2, g))


def test_known_primitive_roots():
    assert [ch.primitive_root(p) for p in (3, 5, 7, 11, 13, 17, 23, 41)] == [2, 2, 3, 2, 2, 3, 5, 6]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(ODD_PRIMES), st.integers(1, 10**9))
def test_modular_inverse(p, a):
    if a % p == 0:
        with pytest.raises(ValueError):
            ch.modular_inverse(a, p)
    else:
        assert a * ch.modular_inverse(a, p) % p == 1


@pytest.mark.parametrize("p", [3, 5, 7, 13, 31])
def test_family_structure(p):
    fam = ch.enumerate_characters(p)
    assert len(fam) == p - 1
    assert fam[0].is_principal
    assert len(fam.even()) == (p - 1) // 2 - 1
    assert len(fam.even(include_principal=True)) == (p - 1) // 2
    assert len(fam.odd()) == (p - 1) // 2
    assert all(chi(p) == 0 and chi(0) == 0 for chi in fam)
    real = [chi for chi in fam if chi.is_real]
    assert len(real) == 2
    for chi in fam:
        np.testing.assert_allclose(chi.conj().values, np.conj(chi.values), atol=1e-15)
        assert chi.conj().conj().index == chi.index


def test_parity_matches_value_at_minus_one():
    for p in (5, 7, 11):
        for chi in ch.enumerate_characters(p):
            assert chi.parity == round(chi(p - 1).real)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(ODD_PRIMES), st.integers(0, 10**6), st.integers(0, 10**6), st.data())
def test_complete_multiplicativity(p, a, b, data):
    j = data.draw(st.integers(0, p - 2))
    chi = ch.character(p, j)
    assert abs(chi(a) * chi(b) - chi(a * b)) < 1e-13


@pytest.mark.parametrize("p", [3, 5, 11, 53, 101])
def test_orthogonality(p):
    assert ch.orthogonality_residual(p) < 1e-12


@pytest.mark.parametrize("p", [5, 13, 29, 101])
def test_quadratic_gauss_sum_sign(p):
    # p = 1 mod 4: the quadratic character is even and tau = +sqrt(p)
    quad = ch.enumerate_characters(p)[(p - 1) // 2]
    assert quad.is_real and not quad.is_principal
    assert abs(ch.gauss_sum(quad) - math.sqrt(p)) < 1e-12


@pytest.mark.parametrize("p", [3, 7, 11, 103])
def test_quadratic_gauss_sum_odd_case(p):
    quad = ch.enumerate_characters(p)[(p - 1) // 2]
    assert abs(ch.gauss_sum(quad) - 1j * math.sqrt(p)) < 1e-12


def test_gauss_sum_modulus_and_principal():
    for p in (3, 7, 23, 61):
        fam = ch.enumerate_characters(p)
        assert abs(ch.gauss_sum(fam[0]) + 1) < 1e-13
        for chi in fam.characters[1:]:
            assert abs(abs(ch.gauss_sum(chi)) ** 2 - p) < 1e-12


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_cosine_twisted_sum(p):
    for chi in ch.enumerate_characters(p):
        c = ch.cosine_twisted_sum(chi)
        if chi.is_principal:
            assert abs(c + 1) < 1e-13
        elif chi.is_even:
            assert abs(c - ch.gauss_sum(chi.conj())) < 1e-12
        else:
            assert abs(c) < 1e-13


def test_residue_sum_cos():
    assert ch.residue_sum_cos(7, 3) == pytest.approx(-1.0, abs=1e-14)
    assert ch.residue_sum_cos(7, 14) == pytest.approx(6.0, abs=1e-14)
