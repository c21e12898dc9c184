"""Acceptance gate: nine numbered criteria, each one test, each ending
in a single PASS line (pytest turns any assertion failure into the FAIL
side).  Tolerances are the contract values, not what the code happens
to achieve."""

import math
import time

import numpy as np
import pytest

from pennerlab import asympt, coupling, electro, laguerre, partition, spectral

SQRT3 = math.sqrt(3.0)
L7 = math.exp(-1.0 / 7.0)
L3 = math.exp(-1.0 / 3.0)


@pytest.fixture(scope="module")
def flagship_zeros():
    seq = coupling.integer_part(SQRT3, 1.0 / 7.0)
    t0 = time.monotonic()
    zs = laguerre.find_zeros(laguerre.spec_for(seq, 60))
    a, b = spectral.endpoints(SQRT3)
    count = int(laguerre.on_interval_mask(zs.zeros, a, b).sum())
    elapsed = time.monotonic() - t0
    return zs, a, b, count, elapsed


@pytest.fixture(scope="module")
def curve7():
    return spectral.support(SQRT3, L7)


def test_criterion_1_flagship_figure(flagship_zeros):
    zs, a, b, count, elapsed = flagship_zeros
    assert abs(a - 0.2120) < 5e-3
    assert abs(b - 4.716) < 5e-2
    assert count == 25
    assert elapsed < 30.0
    print("PASS criterion 1: n=60 endpoints and 25/60 interval zeros "
          f"in {elapsed:.1f}s")


def test_criterion_2_charge_fractions(curve7):
    cases = [(SQRT3, L7, curve7), (SQRT3, L3, None), (2.0, 1.0, None)]
    for t, l, curve in cases:
        if curve is None:
            curve = spectral.support(t, l)
        assert abs(spectral.interval_charge(t) - (1.0 - 1.0 / t)) < 1e-6
        assert abs(spectral.oval_charge(curve) - 1.0 / t) < 1e-6
    assert abs(spectral.interval_charge(SQRT3) - 0.4226) < 5e-4
    print("PASS criterion 2: charges 1-1/t and 1/t to 1e-6 on three "
          "(t, l) pairs")


def test_criterion_3_partition_cross_oracle():
    seqs = [coupling.thooft(5, p=5, q=2),
            coupling.integer_part(SQRT3, 1.0 / 7.0),
            coupling.shifted(5, alpha=0.3, p=5, q=2)]
    worst = 0.0
    for seq in seqs:
        for n in range(1, 101):
            g = seq.g(n)
            lp = partition.log_Z_product(n, g).log_abs_Z
            lb = partition.log_Z_barnes(n, g).log_abs_Z
            if math.isinf(lp) or math.isinf(lb):
                assert lp == lb
                continue
            worst = max(worst, abs(lp - lb) / max(1.0, abs(lb)))
    assert worst < 1e-8
    print(f"PASS criterion 3: product vs Barnes routes, n=1..100 on "
          f"three families, worst rel {worst:.1e}")


def test_criterion_4_free_energy_limits():
    for r in (1.0 / 7.0, 1.0 / 3.0):
        seq = coupling.integer_part(SQRT3, r)
        limit = asympt.planar_F(SQRT3, math.exp(-r))
        f100 = partition.free_energy_n(100, seq)
        f400 = partition.free_energy_n(400, seq)
        assert abs(f400 - limit) < abs(f100 - limit)
    gap = (partition.free_energy_n(400, coupling.integer_part(SQRT3, 1.0 / 3.0))
           - partition.free_energy_n(400, coupling.integer_part(SQRT3, 1.0 / 7.0)))
    want = (1.0 - 1.0 / SQRT3) * (1.0 / 3.0 - 1.0 / 7.0)
    assert abs(gap - want) < 5e-3
    u = 1.0 / SQRT3
    below = abs(partition.free_energy_n(400, coupling.integer_part(u, 1.0 / 3.0))
                - partition.free_energy_n(400, coupling.integer_part(u, 1.0 / 7.0)))
    assert below < 5e-3
    print("PASS criterion 4: F_n approaches the l-split limits above "
          "t=1 and a common limit below")


def test_criterion_5_electrostatic_constants(curve7):
    t = SQRT3
    u_closed = (2.0 - 1.0 / t) - math.log(t) - (1.0 - 1.0 / t) * math.log(t - 1.0)
    x = 0.5 * (curve7.a + curve7.b)
    assert abs(electro.potential_U(x, curve7) - u_closed) < 1e-5
    u_oval = electro.potential_U(curve7.oval[0], curve7)
    assert abs(u_oval - u_closed - (-math.log(L7))) < 1e-4
    assert abs(electro.int_V_rho(curve7)
               - electro.int_V_rho_closed(t, L7)) < 1e-5
    direct = electro.total_energy(t, L7)
    assembled = electro.energy_from_parts(
        t, L7, electro.int_V_rho(curve7), u_closed)
    assert abs(assembled - direct) < 1e-5
    assert electro.total_energy(t, 1.0) == electro.total_energy(t, 0.2) == direct
    print("PASS criterion 5: potential constants, mean-field integral "
          "and energy routes at stated tolerances")


def test_criterion_6_ledger_identity():
    rng = np.random.default_rng(2026)
    worst = 0.0
    for _ in range(20):
        t = 1.0 + rng.uniform(0.05, 4.0)
        l = rng.uniform(0.05, 1.0)
        gap = abs(asympt.planar_F(t, l) - electro.total_energy(t)
                  + (1.0 - 1.0 / t) * math.log(l))
        worst = max(worst, gap)
    assert worst < 1e-12
    print(f"PASS criterion 6: planar free energy ties to the energy, "
          f"worst gap {worst:.1e} over 20 draws")


def test_criterion_7_euler_characteristics():
    from fractions import Fraction
    assert asympt.euler_char(2, 0) == Fraction(-1, 240)
    assert asympt.euler_char(3, 0) == Fraction(1, 1008)
    assert asympt.euler_char(2, 1) == Fraction(1, 120)
    for j in range(2, 7):
        assert asympt._genus_sum(j, 0.0) == -float(asympt.euler_char(j, 0))
    print("PASS criterion 7: genus coefficients exact, ladder matches "
          "at the origin through j=6")


def test_criterion_8_expansion_truncation():
    seq = coupling.shifted(5, alpha=0.3, p=5, q=2)
    tab = asympt.expansion_coeffs(2.5, 0.3, 4, "above_one", p=5, q=2)
    ns = [32, 64, 128, 256, 512]
    resid = [abs(tab.neg_log_abs(n)
                 + partition.log_Z_barnes_seq(n, seq).log_abs_Z)
             for n in ns]
    slope = float(np.polyfit(np.log(ns), np.log(resid), 1)[0])
    assert 2.0 - 5.0 - 0.3 <= slope <= 2.0 - 5.0 + 0.3
    print(f"PASS criterion 8: K=4 truncation residual slope {slope:.2f} "
          "in [-3.3, -2.7]")


def test_criterion_9_schwinger_dyson(curve7):
    points = [-2.0 + 0.5j, -0.5 + 1.2j, 0.08 + 0.05j, 0.6 + 0.01j,
              1.0 + 2.0j, 2.5 - 1.5j, 6.0 + 0.3j, -1.0 - 1.0j,
              0.9 - 0.7j, 8.0 - 2.0j]
    worst = max(spectral.sd_identity_residual(z, curve7) for z in points)
    assert worst < 1e-6
    t, eps = curve7.t, 1e-6
    for s in (0.25, 0.5, 0.75):
        x = curve7.a + s * (curve7.b - curve7.a)
        up = complex(x, eps)
        dn = complex(x, -eps)
        y_up = (1.0 + 1.0 / up) / t - 2.0 * spectral.omega(up, curve7)
        y_dn = (1.0 + 1.0 / dn) / t - 2.0 * spectral.omega(dn, curve7)
        assert abs(y_up + y_dn) < 1e-4
    print(f"PASS criterion 9: resolvent identity {worst:.1e} at 10 "
          "points, jump antisymmetric across the cut")
