"""Double-word (double-double) float primitives.

Error-free transformations after Dekker and Knuth, usable elementwise on
numpy arrays or plain floats.  A double-word value is an unevaluated sum
hi + lo with |lo| <= ulp(hi)/2.  Only what the polynomial pipeline needs
is implemented: sums, products, division, and a compensated complex
Horner evaluation whose coefficients may themselves be double-word.
"""

from __future__ import annotations

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    err = al * bl - (((p - ah * bh) - al * bh) - ah * bl)
    return p, err


def dd_add(xh, xl, yh, yl):
    sh, sl = two_sum(xh, yh)
    sl = sl + (xl + yl)
    zh, zl = two_sum(sh, sl)
    return zh, zl


def dd_mul(xh, xl, yh, yl):
    ph, pl = two_prod(xh, yh)
    pl = pl + (xh * yl + xl * yh)
    zh, zl = two_sum(ph, pl)
    return zh, zl


def dd_div(xh, xl, yh, yl):
    q1 = xh / yh
    # remainder x - q1*y computed in double-word
    mh, ml = two_prod(q1, yh)
    rh, rl = dd_add(xh, xl, -mh, -ml)
    rl = rl - q1 * yl
    q2 = (rh + rl) / yh
    zh, zl = two_sum(q1, q2)
    return zh, zl


def dd_from_float(x):
    return x, 0.0 * x


# complex double-word values are quadruples (re_hi, re_lo, im_hi, im_lo)

def cdd_add(a, b):
    rh, rl = dd_add(a[0], a[1], b[0], b[1])
    ih, il = dd_add(a[2], a[3], b[2], b[3])
    return rh, rl, ih, il


def cdd_mul(a, b):
    # (x + iy)(u + iv) with four real dd products
    xu = dd_mul(a[0], a[1], b[0], b[1])
    yv = dd_mul(a[2], a[3], b[2], b[3])
    xv = dd_mul(a[0], a[1], b[2], b[3])
    yu = dd_mul(a[2], a[3], b[0], b[1])
    rh, rl = dd_add(xu[0], xu[1], -yv[0], -yv[1])
    ih, il = dd_add(xv[0], xv[1], yu[0], yu[1])
    return rh, rl, ih, il


def cdd_div_dd(a, yh, yl):
    rh, rl = dd_div(a[0], a[1], yh, yl)
    ih, il = dd_div(a[2], a[3], yh, yl)
    return rh, rl, ih, il


def _two_prod_cplx(xr, xi, zr, zi):
    """Complex product with an error term: x*z = p + e exactly up to
    O(eps^2) pieces folded into e."""
    p1, e1 = two_prod(xr, zr)
    p2, e2 = two_prod(xi, zi)
    p3, e3 = two_prod(xr, zi)
    p4, e4 = two_prod(xi, zr)
    rr, er = two_sum(p1, -p2)
    ri, ei = two_sum(p3, p4)
    return rr, ri, er + e1 - e2, ei + e3 + e4


def _two_sum_cplx(xr, xi, yr, yi):
    sr, er = two_sum(xr, yr)
    si, ei = two_sum(xi, yi)
    return sr, si, er, ei


def comp_horner(coeffs_hi, coeffs_lo, z):
    """Compensated Horner evaluation of sum_k c_k z^k.

    coeffs_hi/lo: complex double-word coefficients, degree 0 first,
    given as two complex128 arrays.  z: complex128 scalar or array.
    Returns the value as if evaluated in roughly twice working
    precision, rounded back to complex128.
    """
    z = np.asarray(z, dtype=np.complex128)
    zr, zi = z.real.copy(), z.imag.copy()
    n = len(coeffs_hi) - 1
    rr = np.full_like(zr, coeffs_hi[n].real)
    ri = np.full_like(zi, coeffs_hi[n].imag)
    cr = np.full_like(zr, coeffs_lo[n].real)
    ci = np.full_like(zi, coeffs_lo[n].imag)
    for k in range(n - 1, -1, -1):
        pr, pi, epr, epi = _two_prod_cplx(rr, ri, zr, zi)
        sr, si, esr, esi = _two_sum_cplx(pr, pi, coeffs_hi[k].real, coeffs_hi[k].imag)
        # compensation stream in plain arithmetic
        cr, ci = cr * zr - ci * zi, cr * zi + ci * zr
        cr = cr + (epr + esr + coeffs_lo[k].real)
        ci = ci + (epi + esi + coeffs_lo[k].imag)
        rr, ri = sr, si
    return (rr + cr) + 1j * (ri + ci)


def horner(coeffs, z):
    """Plain complex Horner, degree 0 first."""
    z = np.asarray(z, dtype=np.complex128)
    acc = np.full_like(z, coeffs[-1])
    for k in range(len(coeffs) - 2, -1, -1):
        acc = acc * z + coeffs[k]
    return acc
