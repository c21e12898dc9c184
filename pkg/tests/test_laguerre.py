"""Zero finder for the scaled polynomials whose roots are the saddle
configurations.

The frozen arrays under data/ hold the same zeros computed once in
250-digit arithmetic with an independent multiprecision root refiner;
they are the strong oracle.  Everything else cross-checks structure:
closed forms at tiny degree, exact rational coefficient arithmetic, the
companion-matrix eigenvalue route, and the defining saddle/ODE
identities.
"""

import functools
import math
import pathlib
from fractions import Fraction

import numpy as np
import pytest

from pennerlab import coupling, laguerre

DATA = pathlib.Path(__file__).parent / "data"

FLAGSHIP = coupling.integer_part(math.sqrt(3.0), 1.0 / 7.0)


@functools.lru_cache(maxsize=None)
def _zeros(n: int) -> laguerre.ZeroSet:
    return laguerre.find_zeros(laguerre.spec_for(FLAGSHIP, n))


def _truth(n: int) -> np.ndarray:
    z = np.load(DATA / f"true_roots_n{n}.npy")
    return z[np.lexsort((z.imag, z.real))]


@pytest.mark.parametrize("n", [60, 100, 128])
def test_zeros_match_multiprecision_truth(n):
    zs = _zeros(n)
    assert np.max(np.abs(zs.zeros - _truth(n))) < 1e-12


@pytest.mark.parametrize("n", [60, 100, 128])
def test_polynomial_residual_at_zeros(n):
    zs = _zeros(n)
    assert zs.residual < 1e-12


def test_zero_set_conjugate_symmetric():
    zs = _zeros(60)
    conj = np.conj(zs.zeros)
    conj = conj[np.lexsort((conj.imag, conj.real))]
    assert np.max(np.abs(zs.zeros - conj)) < 1e-12


def test_degree_two_closed_form():
    # L_2^(a)(x) = x^2/2 - (a+2)x + (a+1)(a+2)/2 has roots
    # (a+2) +- sqrt(a+2); the solver works on z = g x
    g = 0.4
    spec = laguerre.LaguerreSpec.from_alpha(2, -1.0 - 1.0 / g, g)
    s = spec.alpha + 2.0
    roots = sorted([g * (s - math.sqrt(abs(s)) * (1j if s < 0 else 1)),
                    g * (s + math.sqrt(abs(s)) * (1j if s < 0 else 1))],
                   key=lambda z: (z.real, z.imag))
    zs = laguerre.find_zeros(spec)
    for got, want in zip(zs.zeros, roots):
        assert got == pytest.approx(want, rel=1e-13, abs=1e-13)


def test_coefficients_against_exact_rationals():
    # rational alpha makes every coefficient an exact Fraction:
    # c_0 = prod_{j<=n} (alpha+j)/j, c_{k+1} = -c_k (n-k)/((k+1)(k+1+alpha))
    n, whole, frac = 6, 3, Fraction(1, 2)
    alpha = -(whole + frac)
    spec = laguerre.LaguerreSpec(n, 0.4, whole, float(frac))
    exact = [Fraction(1)]
    for j in range(1, n + 1):
        exact[0] *= (alpha + j) / j
    for k in range(n):
        exact.append(-exact[-1] * (n - k) / ((k + 1) * (k + 1 + alpha)))
    got = laguerre.coefficients(spec)
    for c, e in zip(got, exact):
        assert c.value() == pytest.approx(float(e), rel=1e-14)


def test_coefficients_match_recurrence_evaluation():
    # sum c_k x^k must agree with the classical three-term recurrence
    seq = coupling.thooft(5, p=5, q=2)
    spec = laguerre.spec_for(seq, 8)
    cs = laguerre.coefficients(spec)
    a = spec.alpha
    for x in (0.3, 1.7, -2.2):
        lk1, lk = 1.0, 1.0 + a - x  # L_0, L_1
        for k in range(1, spec.n):
            lk1, lk = lk, ((2 * k + 1 + a - x) * lk - (k + a) * lk1) / (k + 1)
        direct = sum(c.value() * x ** k for k, c in enumerate(cs))
        assert direct == pytest.approx(lk, rel=1e-10)


def test_companion_matrix_cross_route():
    # eigenvalue route vs iterative route, modest degree where plain
    # doubles still carry the coefficients
    spec = laguerre.spec_for(FLAGSHIP, 30)
    mine = laguerre.find_zeros(spec).zeros
    other = laguerre.companion_roots(spec)
    other = other[np.lexsort((other.imag, other.real))]
    assert np.max(np.abs(mine - other)) < 1e-8


def test_saddle_point_identity():
    # the zeros are a stationary configuration of the eigenvalue action
    zs = _zeros(60)
    assert laguerre.saddle_residual(zs) < 1e-9


def test_sum_of_reciprocals():
    # elementary symmetric functions force sum 1/z_i = -n exactly
    for n in (7, 60):
        zs = _zeros(n)
        s = laguerre.sum_reciprocal(zs)
        assert s.real == pytest.approx(-n, rel=1e-11)
        assert abs(s.imag) < 1e-9


def test_ode_residual_off_zeros():
    zs = _zeros(60)
    pts = np.array([0.05 + 0.3j, 2.0 + 1.0j, -1.0 + 0.2j, 6.0 + 0.1j])
    assert laguerre.ode_residual(zs, pts) < 1e-9


def test_on_interval_count_flagship():
    zs = _zeros(60)
    from pennerlab import spectral
    a, b = spectral.endpoints(math.sqrt(3.0))
    assert int(laguerre.on_interval_mask(zs.zeros, a, b).sum()) == 25


def test_zero_set_csv_is_plain_floats():
    text = _zeros(60).csv_text()
    lines = text.splitlines()
    assert lines[0] == "n,index,re,im"
    assert len(lines) == 61
    assert "np." not in text
    n, idx, re, im = lines[1].split(",")
    assert (int(n), int(idx)) == (60, 0)
    float(re), float(im)


def test_spec_for_carries_exact_split():
    spec = laguerre.spec_for(FLAGSHIP, 60)
    m, frac = FLAGSHIP.inv_g_parts(60)
    assert spec.whole == m + 1
    assert spec.frac == frac
    assert spec.alpha == pytest.approx(-1.0 - FLAGSHIP.inv_g(60), rel=1e-12)


def test_spec_validation():
    with pytest.raises(ValueError):
        laguerre.LaguerreSpec(0, 1.0, 2, 0.1)
    with pytest.raises(ValueError):
        laguerre.LaguerreSpec(3, -1.0, 2, 0.1)
    with pytest.raises(ValueError):
        laguerre.LaguerreSpec(3, 1.0, 2, 1.5)
