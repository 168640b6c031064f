"""Brute-force ground truth.

Nothing here is clever on purpose: densities come from enumerating every
context (and, for :func:`average_over_all_orders`, every order), so the fast
paths in :mod:`randmin.exact_enum` and :mod:`randmin.closed_form` have
something independent to be checked against.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import (
    DEFAULT_ENUM_CAP,
    CapExceeded,
    OrderKey,
    ParamError,
    Params,
    count_distinct_kmers,
    suffix_is_unique,
)

MAX_ORDER_KMERS = 8


def _naive_range(args) -> tuple[list[int], list[int]]:
    sigma, k, w, lo, hi = args
    n = w + k
    unique = [0] * (w + 2)
    repeated = [0] * (w + 2)
    for idx in range(lo, hi):
        v = []
        x = idx
        for _ in range(n):
            x, d = divmod(x, sigma)
            v.append(d)
        v.reverse()
        t = count_distinct_kmers(v, k)
        if suffix_is_unique(v, k):
            unique[t] += 1
        else:
            repeated[t] += 1
    return unique, repeated


def _chunks(total: int, parts: int) -> list[tuple[int, int]]:
    step = -(-total // parts)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def exact_density_naive(params: Params, cap: int = DEFAULT_ENUM_CAP, workers: int = 1) -> Fraction:
    """Average gamechanger probability over all sigma^(w+k) contexts."""
    params.check_enumerable(cap)
    s, k, w = params.sigma, params.k, params.w
    total = params.n_contexts
    jobs = [(s, k, w, lo, hi) for lo, hi in _chunks(total, max(1, workers))]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_naive_range, jobs))
    else:
        parts = [_naive_range(j) for j in jobs]
    acc = Fraction(0)
    for t in range(1, w + 2):
        u = sum(p[0][t] for p in parts)
        r = sum(p[1][t] for p in parts)
        acc += Fraction(2 * u + r, t)
    return acc / total


def markup(s: Sequence[int], order_key: OrderKey, params: Params) -> set[int]:
    """Marked positions (1-based) of a minimizer run over ``s``.

    Sliding-window minimum with a monotonic deque over ``(key, code)`` pairs;
    popping only strictly larger entries keeps the leftmost of equal k-mers.
    """
    s = tuple(s)
    k, w, sigma = params.k, params.w, params.sigma
    if len(s) < params.window_len:
        raise ParamError(f"string shorter than one window ({params.window_len})")
    top = sigma ** (k - 1)
    cache: dict[int, tuple[int, int]] = {}
    dq: deque[tuple[tuple[int, int], int]] = deque()
    marked: set[int] = set()
    code = 0
    for i, x in enumerate(s):
        code = code * sigma + x if i < k else (code - s[i - k] * top) * sigma + x
        if i < k - 1:
            continue
        pos = i - k + 1
        key = cache.get(code)
        if key is None:
            key = cache[code] = (order_key(code), code)
        while dq and dq[-1][0] > key:
            dq.pop()
        dq.append((key, pos))
        if dq[0][1] <= pos - w:
            dq.popleft()
        if pos >= w - 1:
            marked.add(dq[0][1] + 1)
    return marked


def context_codes(params: Params) -> np.ndarray:
    """k-mer codes of every context, shape ``(sigma^(w+k), w+1)``, contexts in lexicographic order."""
    s, k, w = params.sigma, params.k, params.w
    n = w + k
    idx = np.arange(params.n_contexts, dtype=np.int64)
    digits = np.empty((idx.size, n), dtype=np.int64)
    for j in range(n - 1, -1, -1):
        idx, digits[:, j] = np.divmod(idx, s)
    codes = np.zeros((digits.shape[0], w + 1), dtype=np.int64)
    for j in range(k):
        codes = codes * s + digits[:, j : j + w + 1]
    return codes


def _rank_table(order_key: OrderKey, n_kmers: int) -> np.ndarray:
    keyed = sorted(range(n_kmers), key=lambda c: (order_key(c), c))
    ranks = np.empty(n_kmers, dtype=np.int64)
    ranks[keyed] = np.arange(n_kmers)
    return ranks


def _count_gamechangers(ranks: np.ndarray, codes: np.ndarray, w: int) -> np.ndarray:
    # ranks: (..., n_kmers) permutation(s); argmin returns the leftmost minimum
    am = np.argmin(ranks[..., codes], axis=-1)
    return np.count_nonzero((am == 0) | (am == w), axis=-1)


def density_of_order(order_key: OrderKey, params: Params, cap: int = 2**24) -> Fraction:
    """Exact gamechanger fraction over all contexts for one order."""
    params.check_enumerable(cap)
    ranks = _rank_table(order_key, params.n_kmers)
    count = int(_count_gamechangers(ranks, context_codes(params), params.w))
    return Fraction(count, params.n_contexts)


def average_over_all_orders(params: Params, batch: int = 2048, cap: int = 2**16) -> Fraction:
    """Mean of :func:`density_of_order` over all (sigma^k)! orders."""
    n_kmers = params.n_kmers
    if n_kmers > MAX_ORDER_KMERS:
        raise CapExceeded(f"sigma^k = {n_kmers} orders would need {n_kmers}! permutations (max sigma^k = 8)")
    params.check_enumerable(cap)
    codes = context_codes(params)
    perms = itertools.permutations(range(n_kmers))
    total = 0
    while True:
        block = list(itertools.islice(perms, batch))
        if not block:
            break
        total += int(_count_gamechangers(np.array(block, dtype=np.int64), codes, params.w).sum())
    return Fraction(total, math.factorial(n_kmers) * params.n_contexts)
