"""Scaled generalized-Laguerre zeros: the finite-n saddle configurations.

For a coupling value g the relevant polynomial is L_n^(alpha)(z/g) with
alpha = -1 - 1/g.  Its zeros, scaled by g, satisfy the pairwise saddle
equations and sum-rule checked by `saddle_residual` / `sum_reciprocal`,
and for large n they settle onto the two-component support traced by
the spectral module.

Zeros are found by an Aberth-Ehrlich sweep on the monic monomial
coefficients.  The coefficients are carried in double-word arithmetic
and the polynomial is evaluated with a compensated Horner scheme, which
keeps the root residuals near working precision for n up to 128 even
though the coefficient range spans many orders of magnitude.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

import numpy as np

from . import _ddmath as dd
from .coupling import CouplingSequence
from .specfun import LogMagnitude

__all__ = [
    "LaguerreSpec",
    "ZeroSet",
    "spec_for",
    "coefficients",
    "find_zeros",
    "companion_roots",
    "saddle_residual",
    "sum_reciprocal",
    "ode_residual",
    "on_interval_mask",
]

MAX_DEGREE = 128
_MAX_SWEEPS = 500
_TOL = 1e-12
_INIT_ANGLE_OFFSET = 0.37  # radians; breaks symmetry of the start circle
# relative separation below which two approximants with matching small
# corrections are treated as locked on one root; true spacings in this
# model stay above ~1e-3 through n = 128, so the margin is wide
_PAIR_SEP = 1e-4
_GOLDEN_ANGLE = 2.399963229728653  # fills the eject circle evenly

# classification band for the two-component split of a zero set
INTERVAL_BAND = 1e-2


@dataclass(frozen=True)
class LaguerreSpec:
    """Degree and parameters of one scaled Laguerre polynomial.

    The parameter alpha = -1 - 1/g is held as an exact split
    alpha = -(whole + frac) with integer `whole` and frac in [0, 1).
    The split matters: frac can sit many orders of magnitude below the
    resolution of one double at `whole` (it reaches e.g. 1e-19 against
    an integer part of 74), yet every coefficient of the polynomial
    depends on it through factors of the form k + 1 + alpha.
    """

    n: int
    scale: float   # g_n > 0
    whole: int     # -alpha = whole + frac, alpha < -1 here so whole >= 1
    frac: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("degree must be >= 1")
        if not (self.scale > 0.0):
            raise ValueError("scale must be positive")
        if not (0.0 <= self.frac < 1.0):
            raise ValueError("frac must lie in [0, 1)")

    @property
    def alpha(self) -> float:
        return -(self.whole + self.frac)

    @classmethod
    def from_alpha(cls, n: int, alpha: float, scale: float) -> "LaguerreSpec":
        whole = math.floor(-alpha)
        return cls(n, scale, whole, -alpha - whole)

    def _shifted(self, k: int):
        """k + alpha as an exact double-word pair."""
        return dd.two_sum(float(k - self.whole), -self.frac)


def spec_for(seq: CouplingSequence, n: int) -> LaguerreSpec:
    g = seq.g(n)
    m, frac = seq.inv_g_parts(n)
    return LaguerreSpec(n, g, m + 1, frac)


def coefficients(spec: LaguerreSpec) -> list[LogMagnitude]:
    """Monomial coefficients c_0..c_n of L_n^(alpha), log-magnitude form.

    c_0 = binom(n+alpha, n) as the product prod_j (alpha+j)/j, then the
    ratio recurrence c_{k+1}/c_k = -(n-k) / ((k+1)(k+1+alpha)).  The
    leading coefficient is (-1)^n / n!.
    """
    n = spec.n
    sign, logabs = 1, 0.0
    for j in range(1, n + 1):
        sh, sl = spec._shifted(j)
        fac = (sh + sl) / j
        if fac == 0.0:
            sign = 0
            break
        if fac < 0.0:
            sign = -sign
        logabs += math.log(abs(fac))
    out = [LogMagnitude.from_log(sign, logabs)]
    for k in range(n):
        sh, sl = spec._shifted(k + 1)
        ratio = -(n - k) / ((k + 1) * (sh + sl))
        out.append(out[-1] * LogMagnitude.of(ratio))
    return out


def _monic_dd(spec: LaguerreSpec):
    """Double-word coefficients of the monic scaled polynomial
    prod (z - z_i), i.e. L_n^(alpha)(z/g) normalized to lead with 1."""
    n, g = spec.n, spec.scale
    # d_0 = binom(n+alpha, n) via the product, in double-word
    h, l = 1.0, 0.0
    for j in range(1, n + 1):
        num = spec._shifted(j)
        h, l = dd.dd_mul(h, l, num[0], num[1])
        h, l = dd.dd_div(h, l, float(j), 0.0)
    his = [h]
    los = [l]
    for k in range(n):
        h, l = dd.dd_mul(his[-1], los[-1], float(-(n - k)), 0.0)
        # k+1+alpha must be formed error-free: it nearly cancels (or
        # vanishes to double precision outright) when k+1 approaches
        # -alpha, which is exactly the structured case here
        sh, sl = spec._shifted(k + 1)
        den = dd.dd_mul(sh, sl, float(k + 1), 0.0)
        h, l = dd.dd_div(h, l, den[0], den[1])
        h, l = dd.dd_div(h, l, g, 0.0)  # scale z -> z/g
        his.append(h)
        los.append(l)
    lead_h, lead_l = his[-1], los[-1]
    mh, ml = [], []
    for h, l in zip(his, los):
        qh, ql = dd.dd_div(h, l, lead_h, lead_l)
        mh.append(qh)
        ml.append(ql)
    return np.array(mh), np.array(ml)


@dataclass(frozen=True)
class ZeroSet:
    """Scaled zeros of one LaguerreSpec, sorted by (re, im)."""

    spec: LaguerreSpec
    zeros: np.ndarray = field(repr=False)
    residual: float
    sweeps: int

    def to_csv(self, fh) -> None:
        close = False
        if isinstance(fh, str):
            fh, close = open(fh, "w", newline=""), True
        try:
            fh.write("n,index,re,im\n")
            for i, z in enumerate(self.zeros):
                fh.write(f"{self.spec.n},{i},{float(z.real)!r},{float(z.imag)!r}\n")
        finally:
            if close:
                fh.close()

    def csv_text(self) -> str:
        buf = io.StringIO()
        self.to_csv(buf)
        return buf.getvalue()


def _init_circle(mh: np.ndarray) -> np.ndarray:
    """Single start circle: Cauchy-style bound on the root radius."""
    n = len(mh) - 1
    k = np.arange(n)
    radius = 1.0 + np.max(np.abs(mh[:-1]) ** (1.0 / (n - k)))
    ang = 2.0 * np.pi * np.arange(n) / n + _INIT_ANGLE_OFFSET
    return radius * np.exp(1j * ang)


def _init_newton_polygon(mh: np.ndarray) -> np.ndarray:
    """Start points on circles sized by the Newton polygon of the
    coefficients (Bini's initialization).  Groups the guesses at the
    magnitudes where roots actually live, which keeps well-separated
    scale clusters (tight oval plus long interval) from fighting over
    the same approximants."""
    n = len(mh) - 1
    with np.errstate(divide="ignore"):
        logs = np.log(np.abs(mh))
    # upper convex hull of (k, log|c_k|), monotone chain
    hull: list[int] = []
    for k in range(n + 1):
        if not np.isfinite(logs[k]):
            continue
        while len(hull) >= 2:
            k1, k2 = hull[-2], hull[-1]
            # keep turn convex from above
            if (logs[k] - logs[k1]) * (k2 - k1) >= (logs[k2] - logs[k1]) * (k - k1):
                hull.pop()
            else:
                break
        hull.append(k)
    pts = []
    for e in range(len(hull) - 1):
        k1, k2 = hull[e], hull[e + 1]
        cnt = k2 - k1
        radius = math.exp((logs[k1] - logs[k2]) / cnt)
        ang = 2.0 * np.pi * np.arange(cnt) / cnt + _INIT_ANGLE_OFFSET + 0.26 * e
        pts.append(radius * np.exp(1j * ang))
    z = np.concatenate(pts)
    if len(z) != n:  # degenerate hull; fall back to the plain circle
        return _init_circle(mh)
    return z


def find_zeros(spec: LaguerreSpec) -> ZeroSet:
    """All n zeros of the scaled polynomial by Aberth-Ehrlich iteration.

    Starts from the plain bounding circle; if that run ends with a
    defective configuration (two approximants collapsed onto one root,
    which the pairwise-spacing check below catches), it is retried from
    Newton-polygon circles before giving up.
    """
    n = spec.n
    if n > MAX_DEGREE:
        raise ValueError(f"degree {n} beyond supported {MAX_DEGREE}")
    mh, ml = _monic_dd(spec)
    if not np.all(np.isfinite(mh)):
        raise ValueError("coefficient overflow; parameters out of range")
    last_err = None
    for init in (_init_circle, _init_newton_polygon):
        try:
            return _aberth(spec, mh, ml, init(mh))
        except RuntimeError as err:
            last_err = err
    raise RuntimeError(f"zero finding failed for n={n}: {last_err}")


def _deriv_dd(mh: np.ndarray, ml: np.ndarray):
    """Double-word coefficients of the derivative.  The plain product
    mh[1:]*k is not good enough: the coefficient range spans the
    fine-structure cliff, and a derivative evaluated from rounded
    coefficients drowns the true p' in noise between the two root
    clusters for n around 100."""
    kk = np.arange(1.0, len(mh))
    ph, pe = dd.two_prod(mh[1:], kk)
    return dd.two_sum(ph, pe + ml[1:] * kk)


def _recur_pair(spec: LaguerreSpec, x, whole: int, deg: int):
    """(L_{deg-1}, L_deg) of the family with alpha = -(whole + frac),
    at the complex double-word points x, by the three-term recurrence.
    All shifted parameters k + alpha enter through the exact
    integer/fraction split."""
    f = spec.frac
    zero = np.zeros_like(x[0])
    prev = (1.0 + zero, zero, zero, zero)
    if deg == 0:
        return (zero, zero, zero, zero), prev
    ch, cl = dd.two_sum(float(1 - whole), -f)
    cur = dd.cdd_add((ch + zero, cl + zero, zero, zero),
                     (-x[0], -x[1], -x[2], -x[3]))
    for k in range(1, deg):
        ah, al = dd.two_sum(float(2 * k + 1 - whole), -f)
        bh, bl = dd.two_sum(float(k - whole), -f)
        t1 = dd.cdd_mul(dd.cdd_add((ah + zero, al + zero, zero, zero),
                                   (-x[0], -x[1], -x[2], -x[3])), cur)
        t2 = dd.cdd_mul((bh + zero, bl + zero, zero, zero), prev)
        num = dd.cdd_add(t1, (-t2[0], -t2[1], -t2[2], -t2[3]))
        prev, cur = cur, dd.cdd_div_dd(num, float(k + 1), 0.0)
    return prev, cur


def _w_recurrence(spec: LaguerreSpec, z: np.ndarray) -> np.ndarray:
    """Newton correction p/p' at the points z through the three-term
    recurrence instead of the monomial form.

    The recurrence carries values on the scale of the polynomial
    itself, so it keeps full double-word accuracy at points where the
    monomial sum cancels by more than compensated evaluation can
    absorb; for n around 100 and beyond that cancellation makes the
    monomial route misplace mid-interval roots by as much as 1e-5.
    The trade goes the other way close to the inner root cluster,
    where the recurrence tracks a near-minimal solution and loses its
    accuracy instead, so callers must pick the route per point (see
    _w_hybrid)."""
    n, g = spec.n, spec.scale
    z = np.asarray(z, dtype=np.complex128)
    zero = np.zeros_like(z.real)
    x = dd.cdd_div_dd((z.real, zero, z.imag, zero), g, 0.0)
    low, top = _recur_pair(spec, x, spec.whole, n)
    lowv = (low[0] + low[1]) + 1j * (low[2] + low[3])
    topv = (top[0] + top[1]) + 1j * (top[2] + top[3])
    if np.all(np.abs(z) > 0.5 * g):
        # x L' = n L - (n + alpha) L_{n-1}, so in the z variable
        # w = z L / (n L - (n + alpha) L_{n-1}); the denominator only
        # suffers cancellation for |x| << 1
        sh, sl = dd.two_sum(float(n - spec.whole), -spec.frac)
        na = sh + sl
        return z * topv / (n * topv - na * lowv)
    # near the origin fall back on L' = -(next family's) L_{n-1}
    der, _ = _recur_pair(spec, x, spec.whole - 1, n)
    derv = (der[0] + der[1]) + 1j * (der[2] + der[3])
    return -g * topv / derv


# double-word noise coefficient of the compensated Horner scheme, times a
# generous accumulation factor; multiplies the absolute-coefficient sum
_DP_NOISE = 1e-29
# a Horner Newton step is trusted when its noise floor sits below this
# fraction of the local length scale
_W_FLOOR = 1e-15


class _Evaluator:
    """Per-point routing between the two evaluation schemes.

    Compensated Horner keeps the Newton correction p/p' accurate
    wherever the round-off of the absolute-coefficient sum, divided by
    |p'|, is negligible.  That floor blows up only in the mid-interval
    region at large degree; the recurrence is accurate exactly there,
    and unreliable only toward the inner cluster, where it tracks a
    near-minimal solution.  Each point gets the route whose noise
    floor its own position certifies.  Gating on |p| itself would
    misroute converged approximants, since |p| vanishes at a root
    while the correction stays perfectly well determined."""

    def __init__(self, spec: LaguerreSpec, mh, ml):
        self.spec = spec
        self.ch = mh.astype(np.complex128)
        self.cl = ml.astype(np.complex128)
        dh, dl = _deriv_dd(mh, ml)
        self.dch = dh.astype(np.complex128)
        self.dcl = dl.astype(np.complex128)
        self.ab = np.abs(mh)

    def w(self, z: np.ndarray) -> np.ndarray:
        p = dd.comp_horner(self.ch, self.cl, z)
        dp = dd.comp_horner(self.dch, self.dcl, z)
        ptil = dd.horner(self.ab.astype(np.complex128), np.abs(z)).real
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            w = p / dp
            floor = _DP_NOISE * ptil / np.abs(dp)
        trusted = floor < _W_FLOOR * (1.0 + np.abs(z))
        if not np.all(trusted):
            idx = np.flatnonzero(~trusted)
            w[idx] = _w_recurrence(self.spec, z[idx])
        return w


def _aberth(spec: LaguerreSpec, mh, ml, z: np.ndarray) -> ZeroSet:
    n = spec.n
    ev = _Evaluator(spec, mh, ml)

    # The coefficients are real, and a pair of approximants that ends up
    # straddling a simple real root as mutual conjugates x +- i*eps is a
    # (numerically) stable period-2 orbit of the sweep map: both members
    # see w ~ i*eps and w*S ~ 1/2, so each sweep flips the pair onto its
    # mirror image with correction ~ 2*eps, while some other root stays
    # uncovered.  Such a pair passes every correction-size test, so it
    # has to be broken up explicitly: park one member on the midpoint
    # (the root) and send the other back out to a fresh angle on the
    # bounding circle.  A lone traveller cannot re-enter the orbit, and
    # close approaches to covered roots give it w*S ~ 1 and hence a
    # large deflecting correction, so it drains into an uncovered root.
    k = np.arange(n)
    r_eject = 1.05 * (1.0 + float(np.max(np.abs(mh[:-1]) ** (1.0 / (n - k)))))
    ejected = 0
    watch: dict[tuple[int, int], tuple[complex, float, int]] = {}
    sweeps = 0
    for sweeps in range(1, _MAX_SWEEPS + 1):
        w = ev.w(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            diff = z[:, None] - z[None, :]
            adiff = np.abs(diff)
            np.fill_diagonal(diff, np.inf)
            np.fill_diagonal(adiff, np.inf)
            s = np.sum(1.0 / diff, axis=1)
            corr = w / (1.0 - w * s)
        bad = ~np.isfinite(corr)
        if np.any(bad):
            corr = np.where(bad, 0.0, corr)
            z = np.where(bad, z * (1.0 + 1e-8) + 1e-8, z)

        pairs = []
        if sweeps >= 10:
            # candidate pairs are close with w and corr of the order of
            # the separation; that alone also matches a traveller passing
            # a covered root, so a candidate is only broken after holding
            # the same midpoint and separation for several sweeps, which
            # a moving pass cannot do (its separation changes by an
            # order-one factor per sweep)
            span = np.abs(w)
            kick = np.abs(corr)
            near = adiff < _PAIR_SEP * (1.0 + np.abs(z))[:, None]
            calm = (span[:, None] < 5.0 * adiff) & (span[None, :] < 5.0 * adiff)
            calm &= (kick[:, None] < 5.0 * adiff) & (kick[None, :] < 5.0 * adiff)
            ii, jj = np.where(near & calm)
            fresh: dict[tuple[int, int], tuple[complex, float, int]] = {}
            used: set[int] = set()
            for i, j in zip(ii, jj):
                if i >= j or i in used or j in used:
                    continue
                key = (int(i), int(j))
                mid = 0.5 * complex(z[i] + z[j])
                sep = float(adiff[i, j])
                count = 1
                if key in watch:
                    mid0, sep0, count0 = watch[key]
                    if abs(mid - mid0) < 0.5 * sep0 and 0.4 < sep / sep0 < 2.5:
                        count = count0 + 1
                if count >= 6:
                    pairs.append(key)
                else:
                    fresh[key] = (mid, sep, count)
                used.add(int(i))
                used.add(int(j))
            watch = fresh

        zn = z - corr
        for i, j in pairs:
            zn[i] = 0.5 * (z[i] + z[j])
            zn[j] = r_eject * math.e ** (1j * (_GOLDEN_ANGLE * ejected + 0.61))
            ejected += 1
        z = zn
        if ejected > 2 * n:
            raise RuntimeError("pair break-up did not settle")
        m = float(np.max(np.abs(corr) / (1.0 + np.abs(z))))
        if not pairs and not watch and m < _TOL:
            break
    else:
        raise RuntimeError("Aberth iteration did not converge")

    # once separated, plain Newton sharpens each root to the noise floor
    for _ in range(5):
        step = ev.w(z)
        step = np.where(np.isfinite(step), step, 0.0)
        z = z - step
        if np.max(np.abs(step) / (1.0 + np.abs(z))) < 0.1 * _TOL:
            break

    resid = float(np.max(np.abs(ev.w(z))))
    if not resid < 1e-8 * (1.0 + float(np.max(np.abs(z)))):
        raise RuntimeError(f"zero residual too large: {resid:g} after {sweeps} sweeps")
    # a collapsed pair passes the residual check (both members sit on a
    # genuine root), so defective configurations are caught by spacing
    gap = z[:, None] - z[None, :]
    np.fill_diagonal(gap, np.inf)
    min_gap = float(np.min(np.abs(gap)))
    if min_gap < 1e-9 * (1.0 + float(np.max(np.abs(z)))):
        raise RuntimeError(f"approximants collapsed: min spacing {min_gap:g}")
    order = np.lexsort((z.imag.round(10), z.real.round(10)))
    return ZeroSet(spec, z[order], resid, sweeps)


def companion_roots(spec: LaguerreSpec) -> np.ndarray:
    """Independent small-n oracle: eigenvalues of the companion matrix
    of the scaled polynomial (via numpy.roots on plain floats)."""
    cs = coefficients(spec)
    vals = [c.value() / spec.scale ** k for k, c in enumerate(cs)]
    roots = np.roots(vals[::-1])
    return np.sort_complex(roots)


def sum_reciprocal(zs: ZeroSet) -> complex:
    return complex(np.sum(1.0 / zs.zeros))


def saddle_residual(zs: ZeroSet) -> float:
    """max_i |(1/g)(1 + 1/z_i) + sum_{j != i} 2/(z_j - z_i)|."""
    z = zs.zeros
    g = zs.spec.scale
    diff = z[None, :] - z[:, None]  # [i, j] = z_j - z_i
    np.fill_diagonal(diff, np.inf)
    pair = np.sum(2.0 / diff, axis=1)
    res = (1.0 / g) * (1.0 + 1.0 / z) + pair
    return float(np.max(np.abs(res)))


def ode_residual(zs: ZeroSet, points: np.ndarray) -> float:
    """Relative defect of S'' - (1/g)(1 + 1/z) S' + (n/(g z)) S at the
    given off-zero points, for the monic polynomial S with these zeros."""
    z = np.asarray(points, dtype=np.complex128)
    g, n = zs.spec.scale, zs.spec.n
    d = z[:, None] - zs.zeros[None, :]
    s1 = np.sum(1.0 / d, axis=1)           # S'/S
    s2 = s1 ** 2 - np.sum(1.0 / d ** 2, axis=1)  # S''/S
    t1 = s2
    t2 = -(1.0 / g) * (1.0 + 1.0 / z) * s1
    t3 = n / (g * z)
    scale = np.maximum(np.abs(t1), np.maximum(np.abs(t2), np.abs(t3)))
    return float(np.max(np.abs(t1 + t2 + t3) / scale))


def on_interval_mask(zeros: np.ndarray, a: float, b: float,
                     band: float = INTERVAL_BAND) -> np.ndarray:
    """Which zeros sit on the real interval component [a, b]."""
    return (np.abs(zeros.imag) < band) & (zeros.real > a - band) & (zeros.real < b + band)
