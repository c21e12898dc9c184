"""Electrostatics of the two-component equilibrium distribution.

The limiting density carries an external field V(z)/t with
V(z) = Re z + ln|z|, and the total potential

    U(z) = V(z)/t - 2 * integral of ln|z - w| against the density

is constant on each support component.  The constants differ: the oval
sits lower than the interval by exactly ln(1/l).  This module evaluates
U, the first moment of V, and the total energy, each by two independent
routes (closed forms in t and l on one side, direct quadrature over the
support on the other) so the routes can be played against each other.

Quadrature strategy.  Interval integrals use the square-root endpoint
substitution x = a + (b-a) sin^2(theta).  Oval integrals exploit the
fact that the oval measure is the boundary value of an analytic
differential: a contour integral over the stored polyline equals the
integral over the exact curve, so chord Gauss-Legendre panels are exact
up to the panel rule itself.  Log kernels keep a running branch chord
to chord; panels adjacent to a singular vertex are refined
geometrically toward it.
"""

import cmath
import dataclasses
import json
import math

import numpy as np
from scipy.integrate import quad

from .spectral import (
    SpectralCurve,
    _GL_W,
    _GL_X,
    _oval_contour,
    _r_unchecked,
    endpoints,
    interval_charge,
    support,
)

# absolute tolerance budget per quadrature call; reported tolerances on
# assembled quantities are two orders looser
_QUAD_EPS = 1e-9
_QUAD_LIMIT = 300
# geometric panel refinement toward a flagged chord end
_CELLS = 0.25 ** np.arange(18, -1, -1.0)
# vertex coincidence tolerance when locating an evaluation point on the
# stored polyline
_VERTEX_TOL = 1e-12


def _measure_factor(w: np.ndarray, a: float, b: float, t: float) -> np.ndarray:
    # complex density of the oval measure against dw, real on the curve
    return _r_unchecked(w, a, b) / (2j * math.pi * t * w)


def _panel(z: complex, lam: complex, w0: complex, d: complex,
           a: float, b: float, t: float) -> complex:
    # one straight panel of ln(z - w) * measure, branch anchored at w0
    w = w0 + _GL_X * d
    vals = (lam + np.log((z - w) / (z - w0))) * _measure_factor(w, a, b, t)
    return complex(np.sum(_GL_W * vals)) * d


def _graded_panel(z: complex, v: complex, d: complex, lam_v: complex,
                  a: float, b: float, t: float, singular: bool) -> complex:
    """Chord from flagged vertex v toward v + d, refined toward v.

    lam_v anchors the log branch at v.  With singular=True the kernel's
    own logarithm blows up at v (v == z); the branch along the chord is
    then lam_v + ln s with lam_v the principal log of -d, exact because
    the chord direction is constant.  Otherwise the kernel is smooth and
    only the measure factor (a square root vanishing at v) needs the
    grading.
    """
    total = 0.0 + 0.0j
    lo = 0.0
    for hi in _CELLS:
        s = lo + _GL_X * (hi - lo)
        w = v + s * d
        if singular:
            lnk = lam_v + np.log(s)
        else:
            lnk = lam_v + np.log((z - w) / (z - v))
        total += complex(np.sum(_GL_W * lnk * _measure_factor(w, a, b, t))) \
            * d * (hi - lo)
        lo = hi
    return total


def _oval_log_moment(curve: SpectralCurve, z: complex) -> float:
    """Integral of ln|z - w| against the oval measure.

    Valid for z on the polyline (it must then be one of the stored
    vertices) and for z off the curve on either side.  The contour
    integral of ln(z - w) times the analytic measure factor is computed
    with a continuous branch; its real part is the log moment because
    the measure is real on the exact curve.
    """
    a, b, t = curve.a, curve.b, curve.t
    verts = curve.oval[:-1]
    k = int(np.argmin(np.abs(verts - z)))
    on_curve = abs(verts[k] - z) < _VERTEX_TOL
    if on_curve:
        verts = np.roll(verts, -k)
    # flag the l=1 touch point: the measure factor has a square-root
    # zero there and plain panels lose six digits across it
    touch = int(np.argmin(np.abs(verts - a)))
    graded = {touch} if abs(verts[touch] - a) < _VERTEX_TOL else set()

    total = 0.0 + 0.0j
    m = len(verts)
    if on_curve:
        d_first = complex(verts[1] - verts[0])
        total += _graded_panel(z, z, d_first, cmath.log(-d_first),
                               a, b, t, singular=True)
        d_last = complex(z - verts[m - 1])
        lam = cmath.log(z - verts[1])
        start, stop = 1, m - 1
    else:
        lam = cmath.log(z - verts[0])
        start, stop = 0, m
    for i in range(start, stop):
        w0 = complex(verts[i])
        w1 = complex(verts[(i + 1) % m])
        d = w1 - w0
        if i in graded:
            total += _graded_panel(z, w0, d, lam, a, b, t, singular=False)
        elif (i + 1) % m in graded:
            # integrate from the flagged far end back toward w0
            total -= _graded_panel(z, w1, -d,
                                   lam + cmath.log((z - w1) / (z - w0)),
                                   a, b, t, singular=False)
        else:
            total += _panel(z, lam, w0, d, a, b, t)
        lam += cmath.log((z - w1) / (z - w0))
    if on_curve:
        # final chord runs into the singular vertex; integrate from z
        # backwards with the branch carried around the loop, so that
        # any winding picked up along the way is honoured
        total -= _graded_panel(z, z, -d_last, lam, a, b, t, singular=True)
    return total.real


def _interval_log_moment(t: float, z: complex) -> float:
    """Integral of ln|z - x| against the interval density."""
    a, b = endpoints(t)
    w = b - a

    def h(theta: float, z0: complex) -> float:
        s, c = math.sin(theta), math.cos(theta)
        x = a + w * s * s
        return math.log(abs(z0 - x)) * (w * s * c) ** 2 / (math.pi * t * x)

    pieces = [(0.0, 0.5 * math.pi)]
    if z.imag == 0.0 and a < z.real < b:
        theta0 = math.asin(math.sqrt((z.real - a) / w))
        pieces = [(0.0, theta0), (theta0, 0.5 * math.pi)]
    total = 0.0
    for lo, hi in pieces:
        if hi - lo < 1e-14:
            continue
        val, _ = quad(h, lo, hi, args=(z,), epsabs=_QUAD_EPS,
                      epsrel=_QUAD_EPS, limit=_QUAD_LIMIT)
        total += val
    return total


def potential_U(z: complex, curve: SpectralCurve) -> float:
    """Total potential V(z)/t - 2 * log moment of the density at z.

    On-support evaluation is allowed; the log kernel is integrable and
    the quadrature splits at the evaluation point.
    """
    z = complex(z)
    if z == 0.0:
        raise ValueError("potential diverges at the origin")
    if curve.has_atom:
        oval = math.log(abs(z)) / curve.t
    else:
        oval = _oval_log_moment(curve, z)
    v = z.real + math.log(abs(z))
    return v / curve.t - 2.0 * (_interval_log_moment(curve.t, z) + oval)


def u_interval_closed(t: float) -> float:
    """Closed form of the potential constant on the interval."""
    if t <= 1.0:
        raise ValueError("closed form requires t > 1")
    return (2.0 - 1.0 / t) - math.log(t) - (1.0 - 1.0 / t) * math.log(t - 1.0)


def re_g_at_a(t: float) -> float:
    """Log moment of the full density at the left interval endpoint.

    Closed form: the oval contributes ln(a)/t (seen from outside, its
    unit/t of charge acts as if concentrated at the origin) and the
    interval moment reduces to elementary logs.
    """
    if t <= 1.0:
        raise ValueError("closed form requires t > 1")
    a, b = endpoints(t)
    inner = a - b + 2.0 * math.log((b + 1.0) / (1.0 - a)) \
        + (a + b) * math.log(0.25 * (b - a))
    return (math.log(a) + 0.25 * inner) / t


def _re_f0_closed(t: float) -> float:
    # value at the origin of the analytic primitive of (r(w)+1)/w taken
    # from a, continued off the cut
    return -1.0 + (t - 1.0) * math.log(t - 1.0) - t * math.log(t)


def _re_f0_quad(t: float) -> float:
    a, b = endpoints(t)

    def h(x: float) -> float:
        if x == 0.0:
            return -0.5 * (a + b)
        return (math.sqrt((a - x) * (b - x)) - 1.0) / x

    val, _ = quad(h, 0.0, a, epsabs=_QUAD_EPS, epsrel=_QUAD_EPS,
                  limit=_QUAD_LIMIT)
    return math.log(a) + val


def int_V_rho(curve: SpectralCurve) -> float:
    """First moment of V = Re z + ln|z| against the full density.

    Interval part by real quadrature, oval part by two contour
    integrals (the identity piece is analytic, the log piece reuses the
    branch-tracked machinery with evaluation point 0).  The run guards
    itself with an internal identity on the support geometry.
    """
    if curve.has_atom:
        raise ValueError("V is singular at the origin atom")
    t = curve.t
    a, b = curve.a, curve.b
    w = b - a

    def h(theta: float) -> float:
        s, c = math.sin(theta), math.cos(theta)
        x = a + w * s * s
        return (x + math.log(x)) * (w * s * c) ** 2 / (math.pi * t * x)

    interval, _ = quad(h, 0.0, 0.5 * math.pi, epsabs=_QUAD_EPS,
                       epsrel=_QUAD_EPS, limit=_QUAD_LIMIT)

    # Re z against the oval measure: analytic, so the shared contour
    # helper applies; ln|w| is the log moment seen from the origin
    first = _oval_contour(curve, lambda w: w * _measure_factor(w, a, b, t))
    oval = first.real + _oval_log_moment(curve, 0.0)

    if abs(_re_f0_quad(t) - _re_f0_closed(t)) > 1e-6:
        raise RuntimeError("support geometry failed its internal identity")
    return interval + oval


def int_V_rho_closed(t: float, l: float) -> float:
    """Closed form of the V moment."""
    if t <= 1.0:
        raise ValueError("closed form requires t > 1")
    if not 0.0 < l <= 1.0:
        raise ValueError("l must lie in (0, 1]")
    return math.log(l) + t - 2.0 + (1.0 - 1.0 / t) * math.log(t - 1.0)


def total_energy(t: float, l: float = 1.0) -> float:
    """Total electrostatic energy, closed form; independent of l."""
    if t <= 1.0:
        raise ValueError("closed form requires t > 1")
    if not 0.0 < l <= 1.0:
        raise ValueError("l must lie in (0, 1]")
    s = (t - 1.0) / t
    return -0.5 * math.log(t) + 1.5 * s - 0.5 * s * s * math.log(t - 1.0)


def energy_from_parts(t: float, l: float, int_v_rho: float,
                      u_interval: float) -> float:
    """Energy assembled from the V moment and the interval constant."""
    return int_v_rho / (2.0 * t) + 0.5 * u_interval \
        - math.log(l) / (2.0 * t)


def energy_double_counting(curve: SpectralCurve) -> float:
    """Energy as half the charge-weighted sum of component potentials
    plus the V moment over 2t, all by quadrature."""
    from .spectral import oval_charge

    t, l = curve.t, curve.l
    u_int = potential_U(1.0, curve)
    u_ov = potential_U(complex(curve.oval[0]), curve)
    q_int = interval_charge(t)
    q_ov = oval_charge(curve)
    return int_V_rho(curve) / (2.0 * t) \
        + 0.5 * (u_int * q_int + u_ov * q_ov)


@dataclasses.dataclass(frozen=True)
class ElectroReport:
    """Electrostatic observables for one (t, l) pair."""

    t: float
    l: float
    U_interval: float
    U_oval: float
    energy: float
    intVrho: float
    free_energy_relation_gap: float

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), indent=2, sort_keys=True)


def report(t: float, l: float, curve: SpectralCurve | None = None) -> ElectroReport:
    """Assemble the standard observables, quadrature side.

    U values are quadratures at one point per component (z = 1 inside
    the interval, the positive real-axis crossing on the oval); the gap
    field compares the closed-form energy against the planar free
    energy, which should vanish identically.
    """
    from .asympt import planar_F

    if curve is None:
        curve = support(t, l)
    u_int = potential_U(1.0, curve)
    u_ov = potential_U(complex(curve.oval[0]), curve)
    e = total_energy(t, l)
    ivr = int_V_rho(curve)
    gap = abs(planar_F(t, l) - (e - math.log(l) * (1.0 - 1.0 / t)))
    return ElectroReport(t=t, l=l, U_interval=u_int, U_oval=u_ov,
                         energy=e, intVrho=ivr,
                         free_energy_relation_gap=gap)
