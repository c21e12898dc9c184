"""Exact finite-n partition function, two routes, and the finite-n
free energy.

Route one multiplies the norming constant and the n-1 recurrence
factors of the associated orthogonal polynomial family; route two is a
closed form in the Barnes G function.  The two are mathematically
identical, so their agreement is the module's central oracle.

Everything lives in log-magnitude space.  Accuracy at large n hinges
on never forming 1/g as a bare float: the coupling sequences keep
1/g_n = m + frac with the tiny fractional part split off exactly, and
every factor that would cancel catastrophically (the sine, the k = m
recurrence factor, the reflected Gamma and Barnes arguments) is
assembled from that split.
"""

import dataclasses
import math

from .coupling import CouplingSequence
from .specfun import (
    LogMagnitude,
    clausen2,
    log_abs_sin_pi,
    log_barnes_g_pos,
    log_gamma,
)

_LOG_2 = math.log(2.0)
_LOG_PI = math.log(math.pi)
_LOG_2PI = math.log(2.0 * math.pi)


@dataclasses.dataclass(frozen=True)
class PartitionValue:
    """log|Z_n| for one n and coupling, tagged with its route.

    log_abs_Z of -inf is the distinguished vanished value (an exact
    zero of the partition function; the free energy is then undefined).
    """

    n: int
    g: float
    log_abs_Z: float
    route: str


def log_h0(g: float) -> LogMagnitude:
    """Log magnitude of the norming constant of the weight.

    ln|h0| = ln|2 sin(pi/g)| + (1 - 1/g) ln g + ln|Gamma(1 - 1/g)|,
    as printed; integer 1/g gives the sign-0 zero.
    """
    if g <= 0.0:
        raise ValueError("g must be positive")
    x = 1.0 / g
    if x == math.floor(x):
        return LogMagnitude.from_log(0, -math.inf)
    val = _LOG_2 + log_abs_sin_pi(x) + (1.0 - x) * math.log(g) \
        + log_gamma(1.0 - x).logabs
    return LogMagnitude.from_log(1, val)


def _log_h0_smooth(g: float, x: float) -> float:
    # reflection collapses the sine against the Gamma factor:
    # |h0| = 2 pi g^(1-x) / |Gamma(x)|; algebraically identical to
    # log_h0 but free of the -inf + inf cancellation at tiny frac
    return _LOG_2PI + (1.0 - x) * math.log(g) - log_gamma(x).logabs


def _product_core(n: int, g: float, m: int, frac: float) -> float:
    # sum of (n-k) ln|k g (k g - 1)| with kg - 1 written as g (k - 1/g)
    # so the e^(-nr)-sized k = m factor survives in floats
    lg = math.log(g)
    terms = []
    for k in range(1, n):
        diff = (k - m) - frac
        if diff == 0.0:
            return -math.inf
        terms.append((n - k) * (math.log(k) + 2.0 * lg + math.log(abs(diff))))
    return math.fsum(terms)


def _barnes_neg_structural(k: int, frac: float, log_sin: float) -> float:
    # ln|G(-(k + frac))| by reflection, with ln|sin| of the fractional
    # part supplied by the caller instead of recovered from k + frac
    w = k + frac
    return log_barnes_g_pos(w + 2.0).logabs \
        + (w + 1.0) * (log_sin - _LOG_PI) \
        + clausen2(2.0 * math.pi * frac) / (2.0 * math.pi)


def _barnes_core(n: int, g: float, m: int, frac: float, log_sin: float) -> float:
    # ln|Z_n| = n(n - 1/g) ln g + n ln|2 sin(pi/g)|
    #           + ln G(n+1) + ln|G(n+1-1/g)| - ln|G(1-1/g)|
    if frac == 0.0 or log_sin == -math.inf:
        return -math.inf
    x = m + frac
    total = n * (n - x) * math.log(g) + n * (_LOG_2 + log_sin) \
        + log_barnes_g_pos(n + 1.0).logabs
    y = n + 1 - m
    if y > 0:
        total += log_barnes_g_pos(y - frac).logabs
    else:
        total += _barnes_neg_structural(-y, frac, log_sin)
    if m == 0:
        total -= log_barnes_g_pos(1.0 - frac).logabs
    else:
        total -= _barnes_neg_structural(m - 1, frac, log_sin)
    return total


def log_Z_product(n: int, g: float) -> PartitionValue:
    """Product route from a bare coupling value."""
    if n < 1:
        raise ValueError("n must be >= 1")
    h0 = log_h0(g)
    if h0.sign == 0:
        return PartitionValue(n, g, -math.inf, "product")
    x = 1.0 / g
    m = math.floor(x)
    val = n * h0.logabs + _product_core(n, g, m, x - m)
    return PartitionValue(n, g, val, "product")


def log_Z_barnes(n: int, g: float) -> PartitionValue:
    """Barnes route from a bare coupling value."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if g <= 0.0:
        raise ValueError("g must be positive")
    x = 1.0 / g
    m = math.floor(x)
    val = _barnes_core(n, g, m, x - m, log_abs_sin_pi(x))
    return PartitionValue(n, g, val, "barnes")


def _seq_parts(seq: CouplingSequence, n: int):
    g = seq.g(n)
    m, frac = seq.inv_g_parts(n)
    return g, m, frac, seq.log_abs_sin_pi_inv_g(n)


def log_Z_product_seq(n: int, seq: CouplingSequence) -> PartitionValue:
    """Product route with the coupling's exact 1/g split; required when
    the fractional part of 1/g_n sits below float resolution of 1/g_n."""
    g, m, frac, log_sin = _seq_parts(seq, n)
    if frac == 0.0 or log_sin == -math.inf:
        return PartitionValue(n, g, -math.inf, "product")
    x = m + frac
    val = n * _log_h0_smooth(g, x) + _product_core(n, g, m, frac)
    return PartitionValue(n, g, val, "product")


def log_Z_barnes_seq(n: int, seq: CouplingSequence) -> PartitionValue:
    """Barnes route with the coupling's exact 1/g split."""
    g, m, frac, log_sin = _seq_parts(seq, n)
    return PartitionValue(n, g, _barnes_core(n, g, m, frac, log_sin), "barnes")


def free_energy_n(n: int, seq: CouplingSequence) -> float:
    """-ln|Z_n|/n^2; +inf when the partition function vanishes."""
    lz = log_Z_barnes_seq(n, seq).log_abs_Z
    if lz == -math.inf:
        return math.inf
    return -lz / (n * n)


def sweep_csv(seq: CouplingSequence, n_max: int) -> str:
    """Deterministic per-n table of both routes and the free energy."""
    lines = ["n,g_n,logabsZ_product,logabsZ_barnes,F_n"]
    for n in range(1, n_max + 1):
        g = seq.g(n)
        lp = log_Z_product_seq(n, seq).log_abs_Z
        lb = log_Z_barnes_seq(n, seq).log_abs_Z
        fn = math.inf if lb == -math.inf else -lb / (n * n)
        lines.append(f"{n},{g!r},{lp!r},{lb!r},{fn!r}")
    return "\n".join(lines) + "\n"
