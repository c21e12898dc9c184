"""Large-n free-energy asymptotics of the shifted coupling family.

Covers the planar limit, the full coefficient ladder of the 1/n
expansion of -ln|Z_n| for couplings 1/(n/t + alpha) on both sides of
t = 1, the double-scaled critical limit in which (t-1)n is held fixed,
and the exact rational coefficients that limit generates.

Above t = 1 the ladder needs t = p/q in lowest terms: the order-1 and
order-2 entries pick up a contribution through the residue class of
n*q mod p, so "the" coefficient is a p-periodic function of n.  The
table stores one row per class and evaluates the truncated series for
a concrete n on request.
"""

import dataclasses
import json
import math
from fractions import Fraction

from .specfun import bernoulli_numbers, clausen2, log_abs_sin_pi, zeta_prime_minus1

_LOG_2 = math.log(2.0)
_LOG_2PI = math.log(2.0 * math.pi)
# exact Bernoulli table; index is the subscript
_BERN = bernoulli_numbers(64)
# closeness of alpha*p to an integer that would let a sine vanish
_LATTICE_TOL = 1e-12


def planar_F(t: float, l: float) -> float:
    """Planar free energy; l matters only past t = 1.

    Returns +inf at l = 0 for t > 1 (the component constants diverge);
    t = 1 is the critical point and is rejected.
    """
    if t <= 0.0:
        raise ValueError("t must be positive")
    if t == 1.0:
        raise ValueError("t = 1 is critical, no planar closed form")
    if not 0.0 <= l <= 1.0:
        raise ValueError("l must lie in [0, 1]")
    s = (t - 1.0) / t
    val = -0.5 * math.log(t) + 1.5 * s - 0.5 * s * s * math.log(abs(t - 1.0))
    if t > 1.0:
        if l == 0.0:
            return math.inf
        val += (1.0 / t - 1.0) * math.log(l)
    return val


def _shared_coeff(k: int, t: float, alpha: float) -> float:
    # order-k entry, k >= 3, identical on both sides of t = 1
    lead = (-1.0) ** (k + 1) * alpha ** k * t ** (k - 1) \
        * ((k - 1) * t + 1.0) / (k * (k - 1))
    bern = float(_BERN[k]) / (k * (k - 2))
    tail = -alpha ** k / (k * (k - 1) * (k - 2)) \
        + alpha ** (k - 2) / (12.0 * (k - 2))
    for j in range(2, k // 2 + 1):
        tail += float(_BERN[2 * j]) / (2 * j * (2 * j - 2)) \
            * math.comb(k - 3, 2 * j - 3) * alpha ** (k - 2 * j)
    pole = t ** (k - 2) * ((t - 1.0) ** (2 - k) - (-1.0) ** k)
    return lead - bern - pole * tail


@dataclasses.dataclass(frozen=True)
class ExpansionTable:
    """Coefficient ladder of -ln|Z_n| down to order n^(2-K).

    coeffs holds the n-independent part of each entry.  In the regime
    above one, `oscillatory` carries one row (class, into order 1,
    into order 2) per residue class of n*q mod p.
    """

    t: float
    alpha: float
    K: int
    regime: str
    p: int | None
    q: int | None
    coeffs: tuple[float, ...]
    oscillatory: tuple[tuple[int, float, float], ...]

    def residue_class(self, n: int) -> int:
        if self.regime != "above_one":
            raise ValueError("residue classes exist only above t = 1")
        return (n * self.q) % self.p

    def coeff_at(self, k: int, n: int | None = None) -> float:
        """Entry k; pass n to include its oscillatory part."""
        base = self.coeffs[k]
        if n is not None and k in (1, 2) and self.regime == "above_one":
            base += self.oscillatory[self.residue_class(n)][k]
        return base

    def neg_log_abs(self, n: int) -> float:
        """Truncated prediction of -ln|Z_n| at this table's order."""
        if n <= 0:
            raise ValueError("n must be positive")
        total = math.log(n) / 12.0
        for k in range(self.K + 1):
            total += float(n) ** (2 - k) * self.coeff_at(k, n)
        return total

    def to_json(self) -> str:
        osc = [{"class": j, "order1": o1, "order2": o2}
               for j, o1, o2 in self.oscillatory]
        return json.dumps({"t": self.t, "alpha": self.alpha, "K": self.K,
                           "regime": self.regime, "p": self.p, "q": self.q,
                           "coeffs": list(self.coeffs), "oscillatory": osc},
                          indent=2, sort_keys=True)


def expansion_coeffs(t: float | None, alpha: float, K: int, regime: str,
                     p: int | None = None, q: int | None = None) -> ExpansionTable:
    """Build the coefficient table for one coupling family member.

    regime "above_one" takes exact p, q (t is then p/q and must agree
    with any t passed); "below_one" takes 0 < t < 1 directly.  alpha on
    the lattice k/p is rejected above one: a sine in the oscillatory
    rows would vanish and the limit changes character.
    """
    if K < 0:
        raise ValueError("K must be >= 0")
    if K > 62:
        raise ValueError("coefficient ladder capped at K = 62")
    if alpha < 0.0:
        raise ValueError("alpha must be >= 0")
    if regime == "above_one":
        if p is None or q is None:
            raise ValueError("above_one needs exact integers p, q")
        p, q = int(p), int(q)
        if p <= 0 or q <= 0 or p <= q:
            raise ValueError("need t = p/q > 1")
        if math.gcd(p, q) != 1:
            raise ValueError("p/q must be in lowest terms")
        if abs(alpha * p - round(alpha * p)) < _LATTICE_TOL:
            raise ValueError("alpha on the excluded lattice k/p")
        tv = p / q
        if t is not None and abs(t - tv) > 1e-12:
            raise ValueError("t disagrees with p/q")
        t = tv
        lg = math.log(t - 1.0)
    elif regime == "below_one":
        if p is not None or q is not None:
            raise ValueError("below_one takes no p, q")
        if t is None or not 0.0 < t < 1.0:
            raise ValueError("below_one needs 0 < t < 1")
        lg = math.log(1.0 - t)
    else:
        raise ValueError("regime must be above_one or below_one")

    s = (t - 1.0) / t
    ladder = [-0.5 * math.log(t) + 1.5 * s - 0.5 * s * s * lg,
              -_LOG_2PI - alpha * (2.0 - t - s * lg),
              -zeta_prime_minus1() + lg / 12.0
              - 0.5 * alpha * alpha * (t * (t + 1.0) + lg)]
    del ladder[K + 1:]
    for k in range(3, K + 1):
        ladder.append(_shared_coeff(k, t, alpha))

    osc: tuple[tuple[int, float, float], ...] = ()
    if regime == "above_one":
        rows = []
        for j in range(p):
            x = j / p + alpha
            lsin = _LOG_2 + log_abs_sin_pi(x)
            rows.append((j, -s * lsin,
                         alpha * lsin + clausen2(2.0 * math.pi * x) / (2.0 * math.pi)))
        osc = tuple(rows)
    return ExpansionTable(t=t, alpha=alpha, K=K, regime=regime, p=p, q=q,
                          coeffs=tuple(ladder), oscillatory=osc)


def euler_char(j: int, s: int) -> Fraction:
    """Exact rational invariant at genus j with s punctures."""
    if j < 2 or s < 0:
        raise ValueError("need j >= 2, s >= 0")
    b = _BERN[2 * j] if 2 * j < len(_BERN) else bernoulli_numbers(2 * j)[2 * j]
    return (-1) ** s * b / (2 * j * (2 * j - 2)) * math.comb(2 * j - 3 + s, s)


@dataclasses.dataclass(frozen=True)
class EulerChar:
    j: int
    s: int
    value: Fraction


def euler_table(j_max: int, s_max: int) -> list[EulerChar]:
    return [EulerChar(j, s, euler_char(j, s))
            for j in range(2, j_max + 1) for s in range(s_max + 1)]


def euler_csv(j_max: int, s_max: int) -> str:
    lines = ["j,s,numerator,denominator"]
    for row in euler_table(j_max, s_max):
        lines.append(f"{row.j},{row.s},{row.value.numerator},{row.value.denominator}")
    return "\n".join(lines) + "\n"


def _genus_sum(j: int, tau: float) -> float:
    """Puncture series at genus j, truncated under a geometric bound.

    Consecutive term ratios fall monotonically toward |tau|, so once
    the ratio drops below one the remaining tail is controlled by a
    geometric series at the current ratio.
    """
    total = 0.0
    s = 0
    while True:
        total += (-1.0) ** (s + 1) * float(euler_char(j, s)) * tau ** s
        s += 1
        ratio = abs(tau) * (2 * j - 2 + s) / (s + 1)
        nxt = abs(float(euler_char(j, s))) * abs(tau) ** s
        if ratio < 1.0 and nxt / (1.0 - ratio) < 1e-16 * max(1.0, abs(total)):
            return total
        if s > 200000:
            raise RuntimeError("puncture series failed to converge")


@dataclasses.dataclass(frozen=True)
class DoubleScaling:
    """Double-scaled free energy: smooth part f and the genus ladder
    (entries for j = 2..J, each to be weighted by mu^(2-2j))."""

    mu: float
    tau: float
    J: int
    f: float
    genus: tuple[float, ...]

    def resummed(self) -> float:
        total = self.f
        for j, fj in enumerate(self.genus, start=2):
            total += self.mu ** (2 - 2 * j) * fj
        return total

    def to_json(self) -> str:
        return json.dumps({"mu": self.mu, "tau": self.tau, "J": self.J,
                           "f": self.f, "genus": list(self.genus)},
                          indent=2, sort_keys=True)


def double_scaling(mu: float, tau: float, J: int = 6) -> DoubleScaling:
    """Evaluate the double-scaled expansion pieces at (mu, tau)."""
    if mu == 0.0:
        raise ValueError("mu must be nonzero")
    if not abs(tau) < 1.0:
        raise ValueError("series domain is |tau| < 1")
    if J < 2:
        raise ValueError("J must be >= 2")
    f = 0.25 * mu * mu * (3.0 * tau * tau - 2.0 * tau
                          - 2.0 * (1.0 - tau) ** 2 * math.log1p(-tau)) \
        + math.log1p(-tau) / 12.0
    genus = tuple(_genus_sum(j, tau) for j in range(2, J + 1))
    return DoubleScaling(mu=mu, tau=tau, J=J, f=f, genus=genus)
