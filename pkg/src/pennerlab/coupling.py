"""Coupling sequences g_n and their fine-structure limit.

Three families are covered, all with n * g_n -> t:

  thooft        g_n = t / n
  shifted       g_n = 1 / (n/t + alpha)
  integer_part  g_n = 1 / (floor(n/t) + exp(-n r)/2)

What distinguishes them at large n is the fractional part of 1/g_n,
through l = lim |sin(pi / g_n)|^(1/n).  That fractional part is far
below float resolution of 1/g_n itself once n r is large, so the
sequence object exposes it structurally (inv_g_parts) instead of asking
callers to recover it from a float.  Rational t is kept as an exact
(p, q) pair when supplied as one; a float t is never silently
rationalized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .specfun import log_abs_sin_pi

__all__ = [
    "CouplingSequence",
    "FineStructure",
    "thooft",
    "shifted",
    "integer_part",
    "g_of_n",
    "finite_l_estimate",
    "limit_l",
]

_LOG_HALF_PI = math.log(math.pi / 2.0)


@dataclass(frozen=True)
class CouplingSequence:
    """One member of a coupling family, evaluable at any n >= 1."""

    kind: str              # "thooft" | "shifted" | "integer_part"
    t: float               # limit of n * g_n, > 0 and != 1
    p: int | None = None   # exact numerator when t = p/q was given exactly
    q: int | None = None
    alpha: float = 0.0     # shifted family offset, >= 0
    r: float = math.inf    # integer_part decay rate, > 0 (inf allowed)

    def __post_init__(self):
        if self.kind not in ("thooft", "shifted", "integer_part"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if not (self.t > 0.0) or self.t == 1.0:
            raise ValueError("t must be positive and != 1")
        if self.kind == "integer_part" and not (self.r > 0.0):
            raise ValueError("integer_part needs r > 0")
        if self.kind == "shifted" and self.alpha < 0.0:
            raise ValueError("shifted needs alpha >= 0")

    @property
    def rational_t(self) -> Fraction | None:
        if self.p is None:
            return None
        return Fraction(self.p, self.q)

    def g(self, n: int) -> float:
        if n < 1:
            raise ValueError("n must be >= 1")
        if self.kind == "thooft":
            return self.t / n
        if self.kind == "shifted":
            return 1.0 / (n / self.t + self.alpha)
        m = math.floor(n / self.t)
        return 1.0 / (m + 0.5 * math.exp(-n * self.r))

    def inv_g_parts(self, n: int) -> tuple[int, float]:
        """1/g_n decomposed as (integer m, fractional part), with the
        fractional part computed without forming the large float 1/g_n."""
        if n < 1:
            raise ValueError("n must be >= 1")
        if self.kind == "integer_part":
            m = math.floor(n / self.t)
            return m, 0.5 * math.exp(-n * self.r)
        if self.p is not None:
            # exact route through nq/p
            j = (n * self.q) % self.p
            base = (n * self.q) // self.p
            x = j / self.p + (self.alpha if self.kind == "shifted" else 0.0)
            k = math.floor(x)
            return base + k, x - k
        x = n / self.t + (self.alpha if self.kind == "shifted" else 0.0)
        m = math.floor(x)
        return int(m), x - m

    def inv_g(self, n: int) -> float:
        m, f = self.inv_g_parts(n)
        return m + f

    def j_of(self, n: int) -> int:
        """Residue n q mod p for rational t = p/q; the quantity the
        oscillatory expansion coefficients depend on."""
        if self.p is None:
            raise ValueError("j_of needs exact rational t")
        return (n * self.q) % self.p

    def log_abs_sin_pi_inv_g(self, n: int) -> float:
        """ln|sin(pi / g_n)|, safe when 1/g_n is huge or the fractional
        part is far below float resolution of 1/g_n."""
        if self.kind == "integer_part":
            # sin(pi(m + c)) = +-sin(pi c) with c = exp(-n r)/2
            log_c = -n * self.r - math.log(2.0)
            if log_c == -math.inf:
                return -math.inf
            if log_c < -20.0:
                # sin x = x (1 - x^2/6 + ...); correction underflows anyway
                return math.log(math.pi) + log_c
            return log_abs_sin_pi(0.5 * math.exp(-n * self.r))
        _, f = self.inv_g_parts(n)
        return log_abs_sin_pi(f)


@dataclass(frozen=True)
class FineStructure:
    """Limit of |sin(pi/g_n)|^(1/n); exists=False when the family does
    not converge for the given parameters."""

    l: float | None
    exists: bool


def thooft(t: float | Fraction, p: int | None = None, q: int | None = None) -> CouplingSequence:
    t, p, q = _normalize_t(t, p, q)
    return CouplingSequence("thooft", t, p, q)


def shifted(t: float | Fraction, alpha: float, p: int | None = None, q: int | None = None) -> CouplingSequence:
    t, p, q = _normalize_t(t, p, q)
    return CouplingSequence("shifted", t, p, q, alpha=alpha)


def integer_part(t: float, r: float) -> CouplingSequence:
    return CouplingSequence("integer_part", float(t), r=r)


def _normalize_t(t, p, q):
    if isinstance(t, Fraction):
        p, q = t.numerator, t.denominator
        return p / q, p, q
    if p is not None:
        if q is None or q < 1 or p < 1:
            raise ValueError("rational t needs positive p and q")
        fr = Fraction(p, q)
        return fr.numerator / fr.denominator, fr.numerator, fr.denominator
    return float(t), None, None


def g_of_n(seq: CouplingSequence, n: int) -> float:
    return seq.g(n)


def finite_l_estimate(seq: CouplingSequence, n: int) -> float:
    """|sin(pi/g_n)|^(1/n), in log form; exactly 0 when 1/g_n is an
    integer (the estimate collapses there, flagging the degenerate n)."""
    ls = seq.log_abs_sin_pi_inv_g(n)
    if ls == -math.inf:
        return 0.0
    return math.exp(ls / n)


def limit_l(seq: CouplingSequence) -> FineStructure:
    """Limit fine structure of the family, where it exists.

    integer_part converges to exp(-r) for every t.  shifted with exact
    rational t = p/q converges to 1 provided alpha avoids the lattice
    {k/p} (on the lattice sin vanishes along a residue class and the
    limit fails).  thooft never converges: the fractional parts of n/t
    return near 0 along subsequences.  shifted with float t is reported
    as non-existent rather than guessing at irrational behaviour.
    """
    if seq.kind == "integer_part":
        return FineStructure(math.exp(-seq.r), True)
    if seq.kind == "shifted":
        if seq.p is None:
            return FineStructure(None, False)
        on_lattice = any(
            abs(seq.alpha - k / seq.p) < 1e-12 for k in range(0, math.ceil(seq.alpha * seq.p) + 1)
        )
        if on_lattice:
            return FineStructure(None, False)
        return FineStructure(1.0, True)
    return FineStructure(None, False)
