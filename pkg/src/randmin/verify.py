"""Exhaustive and randomized property suites behind ``randmin verify``.

Every suite returns a list of :class:`PropertyResult`; a failing property
carries the first counterexample found instead of raising.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable

import numpy as np

from . import closed_form as cf
from .core import Params, count_distinct_kmers, gamechanger_probability, to_str
from .exact_enum import exact_density_fast
from .montecarlo import marked_mask, order_composite, random_string, replicate_order
from .oracle import average_over_all_orders, exact_density_naive
from .structure import find_major_run, has_k_repeat, phi, phi_inverse

SUITES = ("lemma2", "dev-independence", "bijection", "major-run", "delta", "monotonic")


@dataclass
class PropertyResult:
    suite: str
    prop: str
    passed: bool
    checked: int
    counterexample: Any = None

    def row(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "property": self.prop,
            "passed": self.passed,
            "checked": self.checked,
            "counterexample": "" if self.counterexample is None else str(self.counterexample),
        }


class _Tally:
    """First-failure bookkeeping for one property."""

    def __init__(self, suite: str, prop: str):
        self.result = PropertyResult(suite, prop, True, 0)

    def check(self, ok: bool, witness: Callable[[], Any]) -> None:
        self.result.checked += 1
        if not ok and self.result.passed:
            self.result.passed = False
            self.result.counterexample = witness()


def all_passed(results: Iterable[PropertyResult]) -> bool:
    return all(r.passed for r in results)


def lemma2(sigma: int = 2, pairs: Iterable[tuple[int, int]] = ((1, 2), (2, 2), (2, 3), (3, 2))) -> list[PropertyResult]:
    """Average over all orders equals the average gamechanger probability."""
    t = _Tally("lemma2", "order_average_equals_probability_average")
    for k, w in pairs:
        p = Params(sigma, k, w)
        avg, naive = average_over_all_orders(p), exact_density_naive(p)
        t.check(avg == naive, lambda: {"k": k, "w": w, "orders": str(avg), "naive": str(naive)})
    return [t.result]


def dev_independence(sigma: int = 2, w: int = 3, ks: Iterable[int] = (3, 4, 5)) -> list[PropertyResult]:
    """``sigma^(w+k) (DR - 2/(w+1))`` from brute force is the same for every k >= w."""
    t = _Tally("dev-independence", "brute_force_dev_matches_closed_form")
    target = cf.deviation(sigma, w)
    for k in ks:
        p = Params(sigma, k, w)
        dev = (exact_density_naive(p) - Fraction(2, w + 1)) * p.n_contexts
        t.check(dev == target, lambda: {"k": k, "dev": str(dev), "expected": str(target)})
    return [t.result]


def _half_quadrant(max_total: int) -> list[tuple[int, int]]:
    return [(k, w) for k in range(1, max_total) for w in range(1, k + 1) if k + w <= max_total]


def bijection(sigma: int = 2, max_total: int = 13) -> list[PropertyResult]:
    """phi maps Rep(k, w) onto Rep(k+1, w), preserves P and stretches the major run by one."""
    names = ("injective", "onto", "inverse", "probability_preserved", "run_extended")
    tallies = {n: _Tally("bijection", n) for n in names}
    for k, w in _half_quadrant(max_total):
        p, q = Params(sigma, k, w), Params(sigma, k + 1, w)
        images = {}
        for v in itertools.product(range(sigma), repeat=k + w):
            if not has_k_repeat(v, k):
                continue
            img = phi(v, p)
            prev = images.setdefault(img, v)
            tallies["injective"].check(prev == v, lambda: {"k": k, "w": w, "v": to_str(v), "other": to_str(prev)})
            tallies["inverse"].check(phi_inverse(img, p) == v, lambda: {"k": k, "w": w, "v": to_str(v)})
            tallies["probability_preserved"].check(
                gamechanger_probability(v, p) == gamechanger_probability(img, q),
                lambda: {"k": k, "w": w, "v": to_str(v), "phi": to_str(img)},
            )
            r, r2 = find_major_run(v), find_major_run(img)
            tallies["run_extended"].check(
                r2 is not None and (r2.start, r2.end, r2.period) == (r.start, r.end + 1, r.period),
                lambda: {"k": k, "w": w, "v": to_str(v), "run": r, "image_run": r2},
            )
        for v2 in itertools.product(range(sigma), repeat=k + w + 1):
            if has_k_repeat(v2, k + 1):
                tallies["onto"].check(v2 in images, lambda: {"k": k, "w": w, "missed": to_str(v2)})
    return [t.result for t in tallies.values()]


def _repeat_pairs_inside(v: tuple[int, ...], k: int, lo: int, hi: int) -> bool:
    # lo, hi: 0-based half-open span of the run
    first: dict[tuple[int, ...], int] = {}
    for i in range(len(v) - k + 1):
        kmer = v[i : i + k]
        if kmer in first:
            j = first[kmer]
            if not (lo <= j and i + k <= hi):
                return False
        else:
            first[kmer] = i
    return True


def major_run(sigma: int = 2, max_len: int = 16, max_total: int = 14) -> list[PropertyResult]:
    """At most one major run; for w <= k it captures every repeated k-mer."""
    uniq = _Tally("major-run", "at_most_one_major_run")
    member = _Tally("major-run", "repeat_iff_long_major_run")
    inside = _Tally("major-run", "repeats_inside_major_run")
    count = _Tally("major-run", "distinct_count_from_run")
    for n in range(2, max(max_len, max_total) + 1):
        splits = [(k, n - k) for k in range(1, n) if n - k <= k] if n <= max_total else []
        for v in itertools.product(range(sigma), repeat=n):
            try:
                run = find_major_run(v)
            except AssertionError as exc:
                if n <= max_len:
                    uniq.check(False, lambda: {"v": to_str(v), "error": str(exc)})
                continue
            if n <= max_len:
                uniq.check(True, lambda: None)
            for k, w in splits:
                rep = has_k_repeat(v, k)
                long_run = run is not None and run.length >= run.period + k
                member.check(rep == long_run, lambda: {"k": k, "w": w, "v": to_str(v), "run": run})
                if rep and long_run:
                    inside.check(
                        _repeat_pairs_inside(v, k, run.start - 1, run.end),
                        lambda: {"k": k, "w": w, "v": to_str(v), "run": run},
                    )
                    via_run = w - (run.length - run.period - k)
                    count.check(
                        via_run == count_distinct_kmers(v, k),
                        lambda: {"k": k, "w": w, "v": to_str(v), "via_run": via_run},
                    )
    return [uniq.result, member.result, inside.result, count.result]


def delta(sigma: int = 2, w_max: int = 10) -> list[PropertyResult]:
    """Deviation increments: identities, positivity and the published polynomials."""
    names = ("dev1_zero", "telescoping", "wrapped_form", "polynomials", "positive", "prim_mobius")
    t = {n: _Tally("delta", n) for n in names}
    devs = cf.deviations(sigma, w_max + 1)
    t["dev1_zero"].check(devs[0] == 0, lambda: {"dev1": str(devs[0])})
    running = Fraction(0)
    for w in range(1, w_max + 1):
        d = cf.delta(sigma, w)
        running += d
        t["telescoping"].check(running == devs[w], lambda: {"w": w + 1, "sum": str(running), "dev": str(devs[w])})
        t["wrapped_form"].check(d == cf.delta_wrapped(sigma, w), lambda: {"w": w})
        if w in cf.DELTA_POLYNOMIALS:
            poly = cf.delta_polynomial(sigma, w)
            t["polynomials"].check(d == poly, lambda: {"sigma": sigma, "w": w, "delta": str(d), "polynomial": str(poly)})
        t["positive"].check(d > 0, lambda: {"w": w, "delta": str(d)})
    prim = cf.prim_table(sigma, w_max + 1)
    mu = cf.mobius_table(w_max + 1)
    for n in range(1, w_max + 2):
        t["prim_mobius"].check(prim[n] == cf.prim_mobius(sigma, n, mu), lambda: {"n": n})
    return [r.result for r in t.values()]


def monotonic(
    sigma: int = 2, k: int = 4, w_max: int = 8, strings: int = 100, length: int = 10**5, seed: int = 0
) -> list[PropertyResult]:
    """Density never increases with w: exactly by enumeration, and as marked-set inclusion on random strings."""
    exact = _Tally("monotonic", "exact_density_non_increasing")
    prev = None
    for w in range(1, w_max + 1):
        dr = exact_density_fast(Params(sigma, k, w))
        if prev is not None:
            exact.check(dr <= prev, lambda: {"w": w, "dr": str(dr), "dr_prev": str(prev)})
        prev = dr
    subset = _Tally("monotonic", "marked_set_shrinks_with_w")
    base = Params(sigma, k, w_max + 1)
    for r in range(strings):
        s = random_string(length, sigma, seed, r)
        comp = order_composite(s, base, replicate_order(seed, r))
        marked = marked_mask(comp, 1)
        for w in range(2, w_max + 2):
            nxt = marked_mask(comp, w)
            ok = not np.any(nxt & ~marked)
            subset.check(ok, lambda: {"replicate": r, "w": w, "extra_positions": np.flatnonzero(nxt & ~marked)[:5].tolist()})
            marked = nxt
    return [exact.result, subset.result]
