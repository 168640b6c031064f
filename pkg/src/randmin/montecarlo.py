"""Monte Carlo density estimates and the large-window upper bound.

A random order is a keyed 64-bit mix of the k-mer code.  The mix is a
bijection on 64-bit words, so keys never collide and the induced order is
total; it is a stand-in for a uniform permutation, not one.

Each replicate draws its own string from a Philox stream keyed by
``(seed, replicate)``, so replicates are independent of worker scheduling and
the estimate is bit-reproducible.  Standard errors are taken across
replicates only: windows inside one string are correlated.
"""

from __future__ import annotations

import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import CapExceeded, ParamError, Params

MASK64 = (1 << 64) - 1
RANK_TABLE_MAX = 2**22


def mix64(z: int) -> int:
    """splitmix64 finalizer on a Python int."""
    z = (z + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def mix64_array(z: np.ndarray) -> np.ndarray:
    z = z.astype(np.uint64) + np.uint64(0x9E3779B97F4A7C15)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


@dataclass(frozen=True)
class RandomOrder:
    seed: int

    @property
    def _salt(self) -> int:
        return mix64(self.seed & MASK64)

    def key(self, code: int) -> int:
        return mix64((code + self._salt) & MASK64)

    def __call__(self, code: int) -> int:
        return self.key(code)

    def keys(self, codes: np.ndarray) -> np.ndarray:
        with np.errstate(over="ignore"):
            return mix64_array(codes.astype(np.uint64) + np.uint64(self._salt))

    def ranks(self, n_kmers: int) -> np.ndarray:
        """Rank of every code under this order (ties, which cannot occur, by code)."""
        codes = np.arange(n_kmers, dtype=np.uint64)
        order = np.lexsort((codes, self.keys(codes)))
        ranks = np.empty(n_kmers, dtype=np.int64)
        ranks[order] = np.arange(n_kmers, dtype=np.int64)
        return ranks


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    replicates: int
    total_windows: int
    seed: int


def kmer_code_array(s: np.ndarray, k: int, sigma: int) -> np.ndarray:
    m = len(s) - k + 1
    codes = np.zeros(m, dtype=np.uint64)
    for j in range(k):
        codes = codes * np.uint64(sigma) + s[j : j + m].astype(np.uint64)
    return codes


def order_composite(s: np.ndarray, params: Params, order: RandomOrder) -> np.ndarray:
    """One int64 per k-mer position whose numeric order is (rank, position).

    For ``sigma^k <= 2^22`` the rank is exact.  Beyond that the top bits of the
    64-bit key stand in for the rank, so distinct k-mers whose truncated keys
    agree tie by position instead of by code.
    """
    codes = kmer_code_array(s, params.k, params.sigma)
    m = codes.size
    bits = position_bits(m)
    if params.n_kmers <= RANK_TABLE_MAX:
        high = order.ranks(params.n_kmers)[codes.astype(np.int64)]
    else:
        high = (order.keys(codes) >> np.uint64(bits + 1)).astype(np.int64)
    return (high << bits) | np.arange(m, dtype=np.int64)


def position_bits(m: int) -> int:
    return max(1, (m - 1).bit_length())


def _positions(composite_min: np.ndarray, m: int) -> np.ndarray:
    return composite_min & ((1 << position_bits(m)) - 1)


def window_min(x: np.ndarray, size: int) -> np.ndarray:
    """``out[i] = min(x[i : i + size])`` by block prefix/suffix minima (van Herk / Gil-Werman).

    Exact for any integer dtype; filters that round-trip through float64
    would drop the low position bits of the packed keys.
    """
    n = x.size
    if not 1 <= size <= n:
        raise ParamError(f"window size {size} out of range for length {n}")
    pad = -n % size
    if pad:
        x = np.concatenate([x, np.full(pad, np.iinfo(x.dtype).max, dtype=x.dtype)])
    blocks = x.reshape(-1, size)
    prefix = np.minimum.accumulate(blocks, axis=1).ravel()
    suffix = np.minimum.accumulate(blocks[:, ::-1], axis=1)[:, ::-1].ravel()
    m = n - size + 1
    return np.minimum(suffix[:m], prefix[size - 1 : size - 1 + m])


def marked_mask(composite: np.ndarray, w: int) -> np.ndarray:
    """Boolean mask over k-mer positions marked with ``w`` k-mers per window."""
    m = composite.size
    mask = np.zeros(m, dtype=bool)
    mask[_positions(window_min(composite, w), m)] = True
    return mask


def gamechanger_mask(composite: np.ndarray, w: int) -> np.ndarray:
    """For each (w+k)-substring: is it a gamechanger?"""
    m = composite.size
    first = _positions(window_min(composite, w + 1), m)
    i = np.arange(first.size)
    return (first == i) | (first == i + w)


def random_string(n: int, sigma: int, seed: int, replicate: int) -> np.ndarray:
    gen = np.random.Generator(np.random.Philox(key=((seed & MASK64) << 64) | replicate))
    return gen.integers(0, sigma, size=n, dtype=np.uint8 if sigma <= 256 else np.int64)


def replicate_order(seed: int, replicate: int) -> RandomOrder:
    return RandomOrder(mix64((seed + mix64(replicate)) & MASK64))


def _check(params: Params, n: int) -> None:
    if params.n_kmers > 2**63:
        raise CapExceeded(f"sigma^k = {params.sigma}^{params.k} does not fit the 64-bit code path")
    if n < 10 * params.context_len:
        raise ParamError(f"n must be >= 10 (w+k) = {10 * params.context_len}")


def _replicate(args) -> tuple[float, int]:
    params, n, seed, r, what = args
    s = random_string(n, params.sigma, seed, r)
    comp = order_composite(s, params, replicate_order(seed, r))
    if what == "markup":
        # normalised by k-mer positions, so w = 1 marks exactly everything
        return float(np.count_nonzero(marked_mask(comp, params.w))) / comp.size, comp.size - params.w + 1
    gc = gamechanger_mask(comp, params.w)
    return float(np.count_nonzero(gc)) / gc.size, gc.size


def _estimate(params: Params, n: int, replicates: int, seed: int, what: str, workers: int) -> McEstimate:
    _check(params, n)
    if replicates < 1:
        raise ParamError("replicates must be >= 1")
    jobs = [(params, n, seed, r, what) for r in range(replicates)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            out = list(pool.map(_replicate, jobs))
    else:
        out = [_replicate(j) for j in jobs]
    values = [v for v, _ in out]
    mean = sum(values) / replicates
    se = statistics.stdev(values) / math.sqrt(replicates) if replicates > 1 else float("nan")
    return McEstimate(mean, se, replicates, sum(c for _, c in out), seed)


def mc_density(params: Params, n: int, replicates: int, seed: int = 0, workers: int = 1) -> McEstimate:
    """Fraction of marked positions on fresh random strings and fresh random orders."""
    return _estimate(params, n, replicates, seed, "markup", workers)


def mc_gamechanger_density(params: Params, n: int, replicates: int, seed: int = 0, workers: int = 1) -> McEstimate:
    """Fraction of (w+k)-substrings that are gamechangers; same limit as :func:`mc_density`."""
    return _estimate(params, n, replicates, seed, "gamechanger", workers)


def mc_density_curve(
    sigma: int, k: int, ws: Sequence[int], n: int, replicates: int, seed: int = 0
) -> dict[int, McEstimate]:
    """:func:`mc_density` for several ``w`` on shared strings and orders.

    Sharing makes the curve monotone in ``w`` replicate by replicate.
    """
    ws = sorted(set(ws))
    values: dict[int, list[float]] = {w: [] for w in ws}
    counts = {w: 0 for w in ws}
    base = Params(sigma, k, max(ws))
    _check(base, n)
    for r in range(replicates):
        s = random_string(n, sigma, seed, r)
        comp = order_composite(s, base, replicate_order(seed, r))
        for w in ws:
            values[w].append(float(np.count_nonzero(marked_mask(comp, w))) / comp.size)
            counts[w] += comp.size - w + 1
    out = {}
    for w in ws:
        v = values[w]
        se = statistics.stdev(v) / math.sqrt(replicates) if replicates > 1 else float("nan")
        out[w] = McEstimate(sum(v) / replicates, se, replicates, counts[w], seed)
    return out


def bigw_upper_bound(params: Params) -> float:
    """Upper bound on density: ``sigma^-k`` plus the chance a window misses a fixed k-mer."""
    s, k, w = params.sigma, params.k, params.w
    n_kmers = float(s) ** k
    miss = (1 + k / n_kmers) * math.exp((w + k - 1) * math.log1p(-(s - 1) / (n_kmers * s)))
    return 1 / n_kmers + miss


def saturation_window(sigma: int, k: int, g: float = 3.0) -> int:
    """Window size ``(sigma/(sigma-1)) sigma^k (ln sigma^k + g)``, rounded up."""
    n_kmers = sigma**k
    return math.ceil(sigma / (sigma - 1) * n_kmers * (math.log(n_kmers) + g))
