"""Closed-form density for w <= k.

Everything here is driven by the counts of primitive words.  For ``w <= k`` the
set of contexts with a repeated k-mer is counted exactly by period, which gives
the deviation ``Dev(sigma, w)`` from the all-distinct value ``2/(w+1)``; the
deviation does not depend on ``k``, so density for any ``k >= w`` follows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import ParamError, Params


@dataclass(frozen=True)
class PrimTable:
    """``Prim_sigma(p)`` for ``1 <= p <= w_max``; index with ``table[p]``."""

    sigma: int
    values: tuple[int, ...]

    @property
    def w_max(self) -> int:
        return len(self.values)

    def __getitem__(self, p: int) -> int:
        if not 1 <= p <= len(self.values):
            raise IndexError(p)
        return self.values[p - 1]


def prim_table(sigma: int, w_max: int) -> PrimTable:
    """Sieve: start from sigma^p and subtract each entry from its proper multiples."""
    if w_max < 1:
        raise ParamError("w_max must be >= 1")
    vals = [sigma**p for p in range(1, w_max + 1)]
    for i in range(1, w_max + 1):
        for j in range(2 * i, w_max + 1, i):
            vals[j - 1] -= vals[i - 1]
    return PrimTable(sigma, tuple(vals))


def mobius_table(n: int) -> list[int]:
    """mu(0..n) from a smallest-prime-factor sieve (mu[0] is unused)."""
    spf = list(range(n + 1))
    for i in range(2, math.isqrt(n) + 1):
        if spf[i] == i:
            for j in range(i * i, n + 1, i):
                if spf[j] == j:
                    spf[j] = i
    mu = [0] * (n + 1)
    if n >= 1:
        mu[1] = 1
    for m in range(2, n + 1):
        p = spf[m]
        rest = m // p
        mu[m] = 0 if rest % p == 0 else -mu[rest]
    return mu


def prim_mobius(sigma: int, p: int, mu: list[int] | None = None) -> int:
    if mu is None or len(mu) <= p:
        mu = mobius_table(p)
    return sum(mu[d] * sigma ** (p // d) for d in range(1, p + 1) if p % d == 0)


def _exact_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"{what} is not integral: {x}")
    return x.numerator


def _check_half_quadrant(k: int, w: int) -> None:
    if w < 1 or k < 1:
        raise ParamError("k and w must be >= 1")
    if w > k:
        raise ParamError(f"closed form needs w <= k (got k={k}, w={w})")


def _rep_count(prim: PrimTable, w: int) -> int:
    s = prim.sigma
    total = Fraction(0)
    for p in range(1, w + 1):
        total += prim[p] * s ** (w - p) * (w - p + 1 - Fraction(w - p, s))
    return _exact_int(total, "|Rep|")


def rep_count(sigma: int, k: int, w: int) -> int:
    """Number of (w+k)-strings holding a repeated k-mer."""
    _check_half_quadrant(k, w)
    return _rep_count(prim_table(sigma, w), w)


def _prob_sum_terms(prim: PrimTable, w: int) -> list[int]:
    """B(t) for t = 1..w, where sum over Rep of P equals sum_t B(t)/t.

    The inner sum over p is carried along in two accumulators
    ``A0(t) = sum_{p<t} Prim(p) s^(t-p)`` and ``A1(t) = sum_{p<t} Prim(p) s^(t-p) (t-p)``
    so each B(t) costs O(1) big-int operations.
    """
    s = prim.sigma
    a0 = a1 = 0
    out = []
    for t in range(1, w + 1):
        if t > 1:
            a0, a1 = s * (a0 + prim[t - 1]), s * (a1 + a0 + prim[t - 1])
        scaled = s * s * (2 * a1 + a0) - s * (4 * a1 - a0) + (2 * a1 - 2 * a0)
        inner = _exact_int(Fraction(scaled, s * s), "inner probability sum")
        out.append(prim[t] + inner)
    return out


def rep_prob_sum(sigma: int, k: int, w: int) -> Fraction:
    """Sum of gamechanger probabilities over the contexts with a repeated k-mer."""
    _check_half_quadrant(k, w)
    terms = _prob_sum_terms(prim_table(sigma, w), w)
    return sum((Fraction(b, t) for t, b in enumerate(terms, 1)), Fraction(0))


def deviations(sigma: int, w_max: int) -> list[Fraction]:
    """``[Dev(sigma, 1), ..., Dev(sigma, w_max)]`` in one pass."""
    if w_max < 1:
        raise ParamError("w_max must be >= 1")
    prim = prim_table(sigma, w_max)
    terms = _prob_sum_terms(prim, w_max)
    out = []
    prob_sum = Fraction(0)
    for w in range(1, w_max + 1):
        prob_sum += Fraction(terms[w - 1], w)
        out.append(prob_sum - Fraction(2 * _rep_count(prim, w), w + 1))
    return out


def deviation(sigma: int, w: int) -> Fraction:
    if w < 1:
        raise ParamError("w must be >= 1")
    return deviations(sigma, w)[-1]


def density_closed_form(params: Params) -> Fraction:
    _check_half_quadrant(params.k, params.w)
    w = params.w
    return Fraction(2, w + 1) + deviation(params.sigma, w) / params.n_contexts


def density_factor(dr: Fraction, w: int) -> Fraction:
    return (w + 1) * dr


def vertical_step(sigma: int, k: int, w: int, dr_at_k: Fraction) -> Fraction:
    """Density at ``k + 1`` from density at ``k`` (same ``w <= k``)."""
    _check_half_quadrant(k, w)
    base = Fraction(2, w + 1)
    return base + (Fraction(dr_at_k) - base) / sigma


def delta(sigma: int, w: int) -> Fraction:
    """``Dev(w+1) - Dev(w)`` from the two signed sums over primitive counts."""
    if w < 1:
        raise ParamError("w must be >= 1")
    prim = prim_table(sigma, w + 1)
    s1 = sum((2 * i - w) * sigma**i * prim[w + 1 - i] for i in range(w + 1))
    s2 = sum((w - 2 * i) * sigma**i * prim[w - i] for i in range(w))
    return Fraction(s1 + s2, (w + 1) * (w + 2))


def delta_wrapped(sigma: int, w: int) -> Fraction:
    """Same quantity as :func:`delta`, from the grouped single-sum form."""
    prim = prim_table(sigma, w + 1)
    num = -w * prim[w + 1] + sum(
        prim[p] * sigma ** (w - p) * ((w - 2 * p + 2) * sigma - w + 2 * p) for p in range(1, w + 1)
    )
    return Fraction(num, (w + 1) * (w + 2))


# Published polynomials for Delta_sigma(w): (denominator, coefficients from sigma^w down to sigma^1).
DELTA_POLYNOMIALS: dict[int, tuple[int, tuple[int, ...]]] = {
    1: (3, (1,)),
    2: (6, (1, 0)),
    3: (20, (2, 3, -3)),
    4: (30, (2, 2, -6, 4)),
    5: (42, (2, 1, 1, 8, -10)),
    6: (56, (2, 0, 2, 0, -14, 12)),
    7: (72, (2, -1, 3, 6, -11, 10, -5)),
    8: (90, (2, -2, 4, 4, -16, 16, -6, 0)),
    9: (110, (2, -3, 5, 2, -3, 13, -14, 9, -9)),
    10: (132, (2, -4, 6, 0, 0, 0, -12, 8, -18, 20)),
}


def delta_polynomial(sigma: int, w: int) -> Fraction:
    if w not in DELTA_POLYNOMIALS:
        raise ParamError(f"no published polynomial for w={w} (1..10 only)")
    den, coeffs = DELTA_POLYNOMIALS[w]
    value = 0
    for c in coeffs:
        value = (value + c) * sigma
    return Fraction(value, den)


def delta_polynomial_check(sigma: int, w: int) -> bool:
    return delta(sigma, w) == delta_polynomial(sigma, w)


@dataclass(frozen=True)
class Crossing:
    sigma: int
    w_cap: int
    first_negative: int | None
    sign_changes: int

    @property
    def single_change(self) -> bool:
        return self.sign_changes == 1


def find_crossing(sigma: int, w_cap: int = 200) -> Crossing:
    """Smallest ``w >= 2`` with negative deviation, plus how often the sign flips on [2, w_cap]."""
    if w_cap < 2:
        raise ParamError("w_cap must be >= 2")
    devs = deviations(sigma, w_cap)
    first = next((w for w in range(2, w_cap + 1) if devs[w - 1] < 0), None)
    # Dev(1) = 0 carries no sign; count flips among w >= 2
    signs = [(d > 0) - (d < 0) for d in devs[1:]]
    changes = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    return Crossing(sigma, w_cap, first, changes)


def log_abs_dfr_gap(params: Params, base: float | None = None) -> float:
    """``log_base |DFR - 2|``; base defaults to sigma as in the published tables."""
    base = float(params.sigma if base is None else base)
    dr = density_closed_form(params)
    gap = abs(density_factor(dr, params.w) - 2)
    if gap == 0:
        return float("-inf")
    return (math.log(gap.numerator) - math.log(gap.denominator)) / math.log(base)
