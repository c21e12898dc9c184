"""Limiting spectral data for t > 1: the interval [a, b], the closed
oval around the origin, and the density living on both components.

The whole geometry derives from one function, r(z) = sqrt((z-a)(z-b))
with the branch fixed by r(z) ~ z at infinity.  Cutting along [a, b]
makes r single-valued, r(0) = -1, and the oval is a level curve of

    phi(z) = Re integral_a^z r(w)/w dw

at height -t ln l.  The interval carries charge 1 - 1/t with density
sqrt((x-a)(b-x))/(2 pi t x); the oval carries the remaining 1/t.  For
l = 1 the oval touches the interval endpoint a; for l = 0 it collapses
to a point charge at the origin and no polyline is stored.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import IntegrationWarning, quad

__all__ = [
    "SpectralCurve",
    "DensitySample",
    "endpoints",
    "r_of_z",
    "phi",
    "trace_oval",
    "support",
    "density_interval",
    "density_oval",
    "interval_charge",
    "oval_charge",
    "omega",
    "sd_identity_residual",
    "loop_closure_residual",
]

_QUAD_EPS = 1e-11        # absolute/relative tolerance per quadrature call
_LEVEL_TOL = 1e-10       # corrector tolerance on |phi - level|
_MAX_TRACE_STEPS = 40000

# 12-point Gauss-Legendre rule on [0, 1], used for chord integrals of
# analytic integrands between nearby points
_GL_X, _GL_W = np.polynomial.legendre.leggauss(12)
_GL_X = 0.5 * (_GL_X + 1.0)
_GL_W = 0.5 * _GL_W


def endpoints(t: float) -> tuple[float, float]:
    """Support interval endpoints (a, 1/a) with a = 2t-1-2 sqrt(t(t-1))."""
    if not t > 1.0:
        raise ValueError("endpoints need t > 1")
    a = 2.0 * t - 1.0 - 2.0 * math.sqrt(t * (t - 1.0))
    return a, 1.0 / a


def r_of_z(z, t: float):
    """Branch-correct sqrt((z-a)(z-b)): cut on [a,b], r ~ z at infinity,
    r(0) = -1.  Accepts scalars or arrays."""
    a, b = endpoints(t)
    z = np.asarray(z, dtype=np.complex128)
    on_cut = (z.imag == 0.0) & (z.real >= a) & (z.real <= b)
    if np.any(on_cut):
        raise ValueError("r(z) is not defined on the cut [a, b]")
    # principal square roots of the two factors individually: their
    # (-inf, a) cuts cancel, leaving only [a, b]
    out = np.sqrt(z - a) * np.sqrt(z - b)
    if out.ndim == 0:
        return complex(out)
    return out


def _r_unchecked(z, a: float, b: float):
    return np.sqrt(z - a) * np.sqrt(z - b)


@dataclass(frozen=True)
class SpectralCurve:
    """Support geometry for one (t, l) pair.

    The oval is a closed polyline (first point repeated at the end),
    oriented clockwise, symmetric under conjugation; empty when l = 0,
    in which case the oval's charge sits as an atom at the origin.
    """

    t: float
    l: float
    a: float
    b: float
    oval: np.ndarray = field(repr=False)

    @property
    def level(self) -> float:
        return -self.t * math.log(self.l) if self.l > 0.0 else math.inf

    @property
    def has_atom(self) -> bool:
        return self.l == 0.0

    def to_json(self) -> str:
        return json.dumps(
            {
                "t": self.t,
                "l": self.l,
                "a": self.a,
                "b": self.b,
                "oval": [[p.real, p.imag] for p in self.oval],
            }
        )

    def csv_text(self, n_interval: int = 200) -> str:
        """Density samples on both components as CSV rows
        component,re,im,weight."""
        lines = ["component,re,im,weight"]
        xs = self.a + (self.b - self.a) * 0.5 * (
            1.0 - np.cos(np.pi * np.arange(n_interval + 1) / n_interval)
        )
        for x in xs:
            w = density_interval(float(x), self.t)
            lines.append(f"interval,{float(x)!r},0.0,{w!r}")
        if self.has_atom:
            lines.append(f"origin_atom,0.0,0.0,{1.0 / self.t!r}")
        else:
            pts = self.oval[:-1]
            nxt = np.roll(pts, -1)
            prv = np.roll(pts, 1)
            for p, q, s in zip(pts, nxt, prv):
                tang = (q - s) / abs(q - s)
                if abs(p - self.a) < 1e-12:
                    # l = 1 touch point: the sqrt factor vanishes there
                    w = 0.0
                else:
                    w = density_oval(p, tang, self.t)
                lines.append(f"oval,{float(p.real)!r},{float(p.imag)!r},{w!r}")
        return "\n".join(lines) + "\n"


def _phi_quad(t: float, a: float, b: float, z: complex) -> float:
    """phi by adaptive quadrature from a along an explicit path.

    Real targets in (0, a) integrate straight along the axis; anything
    else goes a -> a+iH -> Re(z)+iH -> z through the upper half-plane
    (lower-half targets are reflected first; phi is conjugation-even).
    """
    if z.imag < 0.0:
        z = z.conjugate()
    if z.imag == 0.0 and 0.0 < z.real < a:
        val, _ = quad(
            lambda u: math.sqrt((a - u) * (b - u)) / u,
            z.real, a, epsabs=_QUAD_EPS, epsrel=_QUAD_EPS, limit=200,
        )
        return val
    h = max(0.5 * (b - a), 1.5 * z.imag)
    path = [complex(a, 0.0), complex(a, h), complex(z.real, h), z]
    total = 0.0
    for w0, w1 in zip(path[:-1], path[1:]):
        if w0 == w1:
            continue
        d = w1 - w0
        val, _ = quad(
            lambda s: _r_unchecked(w0 + s * d, a, b) / (w0 + s * d) * d,
            0.0, 1.0, epsabs=_QUAD_EPS, epsrel=_QUAD_EPS, limit=200,
            complex_func=True,
        )
        total += val.real
    return total


def phi(z: complex, curve: SpectralCurve) -> float:
    """Re of the integral of r(w)/w from a to z in the cut plane."""
    z = complex(z)
    if z == 0.0 or (z.imag == 0.0 and z.real >= curve.a):
        raise ValueError("phi is not defined at 0 or on the ray [a, inf)")
    return _phi_quad(curve.t, curve.a, curve.b, z)


def _phi_chord(a: float, b: float, z0: complex, z1: complex) -> float:
    """Re integral of r/w over the straight chord z0 -> z1 (fixed-order
    rule; callers keep chords short and away from 0 and the cut)."""
    d = z1 - z0
    w = z0 + _GL_X * d
    vals = _r_unchecked(w, a, b) / w * d
    return float(np.sum(_GL_W * vals.real))


def loop_closure_residual(t: float, radius: float, segments: int = 64) -> float:
    """|Re of the integral of r/w around the circle |w| = radius|; the
    full turn contributes 2 pi i r(0), purely imaginary, so the real
    part must close to 0.  Single-valuedness witness for phi."""
    a, b = endpoints(t)
    if not 0.0 < radius < a:
        raise ValueError("loop radius must sit inside (0, a)")
    ang = 2.0 * np.pi * np.arange(segments + 1) / segments
    pts = radius * np.exp(1j * ang)
    total = 0.0
    for z0, z1 in zip(pts[:-1], pts[1:]):
        total += _phi_chord(a, b, z0, z1)
    return abs(total)


def _grad_dir(z: complex, a: float, b: float) -> complex:
    """conj(F'(z)) with F' = r/z: the gradient of phi as a complex
    number; level-curve tangents are its perpendicular."""
    return complex(np.conjugate(_r_unchecked(z, a, b) / z))


def _seed_negative_axis(t: float, a: float, b: float, level: float) -> float:
    """Bisection bracket and solve of phi(x) = level on the negative
    real axis.  phi decreases from +inf (near 0) to -inf (x -> -inf),
    monotonicity assumed and validated by the bracket itself."""
    from scipy.optimize import brentq

    f = lambda x: _phi_quad(t, a, b, complex(x, 0.0)) - level
    x_hi = -1e-3 * a
    while f(x_hi) < 0.0:
        x_hi *= 0.5
        if x_hi > -1e-12:
            raise RuntimeError("no oval seed: level not reached near 0")
    x_lo = -a
    while f(x_lo) > 0.0:
        x_lo *= 2.0
        if x_lo < -1e6:
            raise RuntimeError("no oval seed: level not bracketed")
    return brentq(f, x_lo, x_hi, xtol=1e-14, rtol=8.9e-16)


def trace_oval(t: float, l: float) -> SpectralCurve:
    """Trace the level set phi = -t ln l into a closed clockwise
    polyline.

    Only the upper half is traced (negative-axis seed to the positive
    real axis); the lower half is its mirror image, making conjugation
    symmetry exact.  Predictor: RK2 along the level-curve tangent with
    a turning-angle step controller.  Corrector: Newton steps along the
    gradient, with phi tracked incrementally by chord quadrature.
    """
    if not t > 1.0:
        raise ValueError("trace_oval needs t > 1")
    if not 0.0 < l <= 1.0:
        raise ValueError("trace_oval needs l in (0, 1]")
    a, b = endpoints(t)
    level = -t * math.log(l)
    x_neg = _seed_negative_axis(t, a, b, level)

    ds_cap = 0.018 * (b - a)
    ds = min(ds_cap, 0.1 * abs(x_neg))
    z = complex(x_neg, 0.0)
    err = _phi_quad(t, a, b, z) - level  # seed residual, carried along
    pts = [z]
    direction = 1j  # leave the axis upward
    for _ in range(_MAX_TRACE_STEPS):
        g = _grad_dir(z, a, b)
        tau = 1j * g / abs(g)
        if (tau * direction.conjugate()).real < 0.0:
            tau = -tau
        ds_max = min(ds_cap, 0.25 * abs(z))  # resolve the small ovals too
        ds = min(ds, ds_max)
        while True:
            zm = z + 0.5 * ds * tau
            gm = _grad_dir(zm, a, b)
            tm = 1j * gm / abs(gm)
            if (tm * tau.conjugate()).real < 0.0:
                tm = -tm
            zn = z + ds * tm
            turn = abs(math.atan2((tm * tau.conjugate()).imag,
                                  (tm * tau.conjugate()).real))
            if turn <= 0.22 or ds <= 1e-5 * (b - a):
                break
            ds *= 0.5
        # Newton back onto the level set
        en = err + _phi_chord(a, b, z, zn)
        for _ in range(4):
            if abs(en) < _LEVEL_TOL:
                break
            gn = _grad_dir(zn, a, b)
            step = -en * gn / abs(gn) ** 2
            en += _phi_chord(a, b, zn, zn + step)
            zn = zn + step
        if l == 1.0 and abs(zn - a) < 3e-3 * (b - a):
            pts.append(complex(a, 0.0))  # gradient degenerates at a; snap
            break
        if zn.imag <= 0.0 and z.imag > 0.0:
            # crossed back onto the real axis: root-polish the crossing
            # onto the level set along the axis (phi is real-analytic
            # there with derivative r(x)/x)
            x = z.real + (zn.real - z.real) * z.imag / (z.imag - zn.imag)
            ex = err + _phi_chord(a, b, z, complex(x, 0.0))
            for _ in range(6):
                if abs(ex) < _LEVEL_TOL:
                    break
                d_axis = (_r_unchecked(complex(x, 0.0), a, b) / x).real
                step = -ex / d_axis
                ex += _phi_chord(a, b, complex(x, 0.0), complex(x + step, 0.0))
                x += step
            pts.append(complex(x, 0.0))
            break
        direction = (zn - z) / abs(zn - z)
        err = en
        z = zn
        pts.append(z)
        if turn < 0.08:
            ds = min(ds * 1.4, ds_max)
    else:
        raise RuntimeError("oval trace did not close")

    upper = np.array(pts)
    closed = np.concatenate((upper[::-1], np.conjugate(upper[1:-1]), upper[-1:]))
    # orientation witness: shoelace area must be negative (clockwise)
    area = 0.5 * np.sum(
        closed[:-1].real * closed[1:].imag - closed[1:].real * closed[:-1].imag
    )
    if area > 0.0:
        closed = closed[::-1]
    return SpectralCurve(t=t, l=l, a=a, b=b, oval=closed)


def support(t: float, l: float) -> SpectralCurve:
    """SpectralCurve for any l in [0, 1]; l = 0 stores no polyline and
    carries the oval charge as an origin atom instead."""
    if l == 0.0:
        a, b = endpoints(t)
        return SpectralCurve(t=t, l=0.0, a=a, b=b,
                             oval=np.empty(0, dtype=np.complex128))
    return trace_oval(t, l)


@dataclass(frozen=True)
class DensitySample:
    point: complex
    weight: float
    component: str  # "interval" | "oval" | "origin_atom"


def density_interval(x: float, t: float) -> float:
    """sqrt((x-a)(b-x)) / (2 pi t x) on [a, b]; 0 at the endpoints."""
    a, b = endpoints(t)
    if x < a or x > b:
        raise ValueError("x outside the support interval")
    return math.sqrt((x - a) * (b - x)) / (2.0 * math.pi * t * x)


def density_oval(z: complex, tangent: complex, t: float) -> float:
    """Arclength density on the oval: Re[r(z) tangent / (2 pi i t z)]
    for the clockwise unit tangent."""
    val = r_of_z(z, t) * tangent / (2.0j * math.pi * t * z)
    return float(np.real(val))


def interval_charge(t: float) -> float:
    """Quadrature of the interval density; the square-root endpoints
    are absorbed by x = a + (b-a) sin^2."""
    a, b = endpoints(t)
    w = b - a

    def f(theta):
        s, c = math.sin(theta), math.cos(theta)
        x = a + w * s * s
        return 2.0 * (w * s * c) ** 2 / (2.0 * math.pi * t * x)

    val, _ = quad(f, 0.0, 0.5 * math.pi, epsabs=_QUAD_EPS, epsrel=_QUAD_EPS)
    return val


def _oval_contour(curve: SpectralCurve, f) -> complex:
    """Integral of analytic f along the closed clockwise polyline by
    per-chord Gauss-Legendre; path-homotopy makes chords exact.

    Chords ending at the l=1 touch point carry the square-root branch
    point of r at a, so they are subdivided geometrically toward it."""
    z0 = curve.oval[:-1]
    z1 = curve.oval[1:]
    touches = (np.abs(z0 - curve.a) < 1e-13) | (np.abs(z1 - curve.a) < 1e-13)
    d = z1 - z0
    w = z0[~touches, None] + _GL_X[None, :] * d[~touches, None]
    vals = f(w) * d[~touches, None]
    total = complex(np.sum(_GL_W[None, :] * vals))
    for u0, u1 in zip(z0[touches], z1[touches]):
        flip = abs(u0 - curve.a) < 1e-13  # grade toward whichever end is a
        lo, hi = (u1, u0) if flip else (u0, u1)
        sgn = -1.0 if flip else 1.0
        cuts = np.concatenate(([0.0], 0.25 ** np.arange(16, -1, -1.0)))
        for s0, s1 in zip(cuts[:-1], cuts[1:]):
            p0 = hi + (lo - hi) * s1  # s measured from the a-end
            p1 = hi + (lo - hi) * s0
            dd = p1 - p0
            wlin = p0 + _GL_X * dd
            total += sgn * complex(np.sum(_GL_W * f(wlin) * dd))
    return total


def oval_charge(curve: SpectralCurve) -> float:
    """Total charge on the oval; 1/t for every l in (0, 1]."""
    if curve.has_atom:
        return 1.0 / curve.t
    a, b, t = curve.a, curve.b, curve.t
    val = _oval_contour(curve, lambda w: _r_unchecked(w, a, b) / (2.0j * math.pi * t * w))
    return val.real


def omega(z: complex, curve: SpectralCurve) -> complex:
    """Resolvent: Cauchy transform of the full density at z off the
    support."""
    z = complex(z)
    a, b, t = curve.a, curve.b, curve.t
    w = b - a

    # interval part, with the near-cut singularity subtracted so the
    # jump test at z = x +- i*1e-6 stays accurate
    x0 = min(max(z.real, a), b)
    rho0 = density_interval(x0, t) if abs(z.imag) < 0.5 * w else 0.0

    def f(theta):
        s, c = math.sin(theta), math.cos(theta)
        x = a + w * s * s
        rho = w * s * c / (2.0 * math.pi * t * x)
        return (rho - rho0) * (w * 2.0 * s * c) / (z - x)

    theta0 = math.asin(min(1.0, max(0.0, math.sqrt((x0 - a) / w))))
    pieces = sorted({0.0, theta0, 0.5 * math.pi})
    val = 0.0 + 0.0j
    with warnings.catch_warnings():
        # the subtracted kernel is still sharp at scale |Im z| near the
        # cut; QUADPACK settles around 1e-10 there and warns past it
        warnings.simplefilter("ignore", IntegrationWarning)
        for t0, t1 in zip(pieces[:-1], pieces[1:]):
            if t1 - t0 < 1e-15:
                continue
            piece, _ = quad(f, t0, t1, epsabs=1e-10, epsrel=1e-10,
                            limit=400, complex_func=True)
            val += piece
    if rho0 != 0.0:
        val += rho0 * np.log((z - a) / (z - b))

    if curve.has_atom:
        val += 1.0 / (t * z)
    else:
        val += _oval_contour(
            curve,
            lambda u: _r_unchecked(u, a, b) / (2.0j * math.pi * t * u) / (z - u),
        )
    return complex(val)


def sd_identity_residual(z: complex, curve: SpectralCurve) -> float:
    """|y^2 - R(z)| with y = (1/t)(1 + 1/z) - 2 omega(z) and
    R = (z^2 - (4t-2) z + 1) / (t z)^2; zero on the true spectral
    curve."""
    z = complex(z)
    if z == 0.0:
        raise ValueError("z = 0 is the potential singularity")
    t = curve.t
    y = (1.0 + 1.0 / z) / t - 2.0 * omega(z, curve)
    big_r = (z * z - (4.0 * t - 2.0) * z + 1.0) / (t * z) ** 2
    return abs(y * y - big_r)
