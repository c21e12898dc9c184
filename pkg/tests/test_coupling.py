"""Coupling families and their fine-structure behavior."""

import math
from fractions import Fraction

import pytest

from pennerlab import coupling, specfun


def test_thooft_basic_scaling():
    seq = coupling.thooft(5, p=5, q=2)
    assert seq.t == 2.5
    for n in (1, 7, 100, 10**6):
        assert seq.g(n) == pytest.approx(2.5 / n, rel=1e-15)


def test_rational_t_is_reduced():
    seq = coupling.thooft(10, p=10, q=4)
    assert (seq.p, seq.q) == (5, 2)


def test_inv_g_parts_exact_structure():
    seq = coupling.thooft(5, p=5, q=2)
    for n in range(1, 200):
        m, frac = seq.inv_g_parts(n)
        assert 0.0 <= frac < 1.0
        assert m == (2 * n) // 5
        # exact: 1/g_n = 2n/5, so frac must be (2n mod 5)/5 to the bit
        assert frac == (2 * n % 5) / 5.0


def test_inv_g_parts_matches_inv_g():
    for seq in (coupling.shifted(5, alpha=0.3, p=5, q=2),
                coupling.integer_part(math.sqrt(3.0), 1.0 / 7.0)):
        for n in (1, 3, 17, 60, 400):
            m, frac = seq.inv_g_parts(n)
            assert m + frac == pytest.approx(seq.inv_g(n), rel=1e-14)
            assert 0.0 <= frac < 1.0
            assert isinstance(m, int)


def test_integer_part_g_formula():
    t, r = math.sqrt(3.0), 1.0 / 7.0
    seq = coupling.integer_part(t, r)
    for n in (1, 5, 42, 300):
        want = 1.0 / (math.floor(n / t) + 0.5 * math.exp(-n * r))
        assert seq.g(n) == pytest.approx(want, rel=1e-15)


def test_shifted_g_formula():
    seq = coupling.shifted(5, alpha=0.3, p=5, q=2)
    for n in (1, 9, 77):
        assert seq.inv_g(n) == pytest.approx(n / 2.5 + 0.3, rel=1e-14)


def test_j_of_residue_class():
    seq = coupling.shifted(5, alpha=0.3, p=5, q=2)
    for n in range(1, 30):
        assert seq.j_of(n) == (2 * n) % 5


def test_structural_log_sin_matches_direct():
    seq = coupling.integer_part(math.sqrt(3.0), 1.0 / 7.0)
    for n in (1, 10, 55):
        direct = specfun.log_abs_sin_pi(seq.inv_g(n))
        assert seq.log_abs_sin_pi_inv_g(n) == pytest.approx(direct, abs=1e-10)


def test_structural_log_sin_survives_tiny_fraction():
    # at large n the fractional part is ~e^{-nr}/2; the naive route would
    # subtract two numbers of size ~n and lose every digit
    seq = coupling.integer_part(math.sqrt(3.0), 1.0 / 7.0)
    n = 400
    m, frac = seq.inv_g_parts(n)
    want = math.log(math.sin(math.pi * frac))
    assert seq.log_abs_sin_pi_inv_g(n) == pytest.approx(want, rel=1e-13)


def test_thooft_exact_integer_reciprocal():
    seq = coupling.thooft(5, p=5, q=2)
    for n in (5, 10, 95):
        m, frac = seq.inv_g_parts(n)
        assert frac == 0.0
        assert seq.log_abs_sin_pi_inv_g(n) == -math.inf


def test_limit_l_per_family():
    fine = coupling.limit_l(coupling.integer_part(2.0, 0.25))
    assert fine.exists and fine.l == pytest.approx(math.exp(-0.25), rel=1e-15)

    fine = coupling.limit_l(coupling.shifted(5, alpha=0.3, p=5, q=2))
    assert fine.exists and fine.l == 1.0

    # alpha on the lattice k/p kills a residue class
    fine = coupling.limit_l(coupling.shifted(5, alpha=0.4, p=5, q=2))
    assert not fine.exists

    fine = coupling.limit_l(coupling.thooft(5, p=5, q=2))
    assert not fine.exists


def test_finite_l_estimate_converges():
    seq = coupling.integer_part(math.sqrt(3.0), 1.0 / 7.0)
    target = math.exp(-1.0 / 7.0)
    err_small = abs(coupling.finite_l_estimate(seq, 50) - target)
    err_large = abs(coupling.finite_l_estimate(seq, 400) - target)
    assert err_large < err_small
    assert err_large < 1e-2


def test_fraction_input_accepted():
    seq = coupling.thooft(Fraction(5, 2))
    assert (seq.p, seq.q) == (5, 2)
    assert seq.t == 2.5


def test_bad_rational_rejected():
    with pytest.raises(ValueError):
        coupling.thooft(2.5, p=5, q=0)
