"""Exact density by depth-first traversal of the prefix tree of all contexts.

Each engine keeps the number of distinct k-mers of the current prefix under
``descend(a)`` / ``undo()``; leaves are tallied by ``(t, suffix unique)`` so
the final sum has at most ``2 (w + 1)`` rational terms.
"""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .core import DEFAULT_ENUM_CAP, ParamError, Params
from .suffix_tree import TruncatedSuffixTree

ENGINES = ("dict", "weiner")


class KmerMultiset:
    """Occurrence counts of k-mer codes plus the number of distinct keys."""

    def __init__(self):
        self.counts: Counter[int] = Counter()
        self.distinct = 0

    def push(self, code: int) -> bool:
        c = self.counts[code]
        self.counts[code] = c + 1
        if c == 0:
            self.distinct += 1
        return c == 0

    def pop(self, code: int) -> None:
        c = self.counts[code]
        if c <= 0:
            raise KeyError(code)
        if c == 1:
            del self.counts[code]
            self.distinct -= 1
        else:
            self.counts[code] = c - 1


class DictEngine:
    def __init__(self, sigma: int, k: int):
        self.sigma, self.k = sigma, k
        self._mod = sigma**k
        self.kmers = KmerMultiset()
        self.codes = [0]  # rolling code of the last min(depth, k) symbols, per depth
        self.prefix: list[int] = []

    @property
    def distinct(self) -> int:
        return self.kmers.distinct

    @property
    def depth(self) -> int:
        return len(self.prefix)

    def descend(self, a: int) -> bool:
        code = (self.codes[-1] * self.sigma + a) % self._mod
        self.codes.append(code)
        self.prefix.append(a)
        if len(self.prefix) >= self.k:
            return self.kmers.push(code)
        return False

    def undo(self) -> None:
        if not self.prefix:
            raise IndexError("undo without matching descend")
        if len(self.prefix) >= self.k:
            self.kmers.pop(self.codes[-1])
        self.codes.pop()
        self.prefix.pop()


class WeinerEngine:
    """Truncated suffix tree of the reversed prefix (see :mod:`randmin.suffix_tree`)."""

    def __init__(self, sigma: int, k: int):
        self.sigma, self.k = sigma, k
        self.tree = TruncatedSuffixTree(k)
        self.max_nodes = self.tree.n_nodes

    @property
    def distinct(self) -> int:
        return self.tree.distinct

    @property
    def depth(self) -> int:
        return self.tree.size

    @property
    def prefix(self) -> list[int]:
        return self.tree.prefix

    def descend(self, a: int) -> bool:
        new = self.tree.push(a)
        if self.tree.n_nodes > self.max_nodes:
            self.max_nodes = self.tree.n_nodes
        return new

    def undo(self) -> None:
        self.tree.pop()


def make_engine(name: str, sigma: int, k: int):
    if name == "dict":
        return DictEngine(sigma, k)
    if name == "weiner":
        return WeinerEngine(sigma, k)
    raise ParamError(f"unknown engine {name!r}; choose from {ENGINES}")


def _walk(engine, sigma: int, n: int, unique: list[int], repeated: list[int]) -> None:
    # iterative DFS; `new` of the last descend is Lemma 1's suffix-uniqueness flag
    depth0 = engine.depth
    stack = [0]
    while stack:
        a = stack[-1]
        if a == sigma:
            stack.pop()
            if stack:
                engine.undo()
                stack[-1] += 1
            continue
        new = engine.descend(a)
        if engine.depth - depth0 == n:
            (unique if new else repeated)[engine.distinct] += 1
            engine.undo()
            stack[-1] += 1
        else:
            stack.append(0)


def leaf_histogram(params: Params, engine: str = "dict", prefix: tuple[int, ...] = ()) -> tuple[list[int], list[int]]:
    """Counts of contexts (starting with ``prefix``) by distinct-k-mer count ``t``.

    Returns ``(unique, repeated)`` lists indexed by ``t``, split on whether the
    k-suffix is unique in the context.
    """
    s, k, w = params.sigma, params.k, params.w
    n = w + k
    unique = [0] * (w + 2)
    repeated = [0] * (w + 2)
    eng = make_engine(engine, s, k)
    new = False
    for a in prefix:
        new = eng.descend(a)
    rest = n - len(prefix)
    if rest < 0:
        raise ParamError("prefix longer than a context")
    if rest == 0:
        (unique if new else repeated)[eng.distinct] += 1
    else:
        _walk(eng, s, rest, unique, repeated)
    return unique, repeated


def _histogram_job(args):
    params, engine, prefix = args
    return leaf_histogram(params, engine, prefix)


def exact_density_fast(
    params: Params,
    engine: str = "dict",
    cap: int = DEFAULT_ENUM_CAP,
    workers: int = 1,
    split_depth: int = 4,
) -> Fraction:
    """Exact density from incremental distinct-k-mer counts over every context."""
    if engine not in ENGINES:
        raise ParamError(f"unknown engine {engine!r}; choose from {ENGINES}")
    params.check_enumerable(cap)
    d = min(split_depth, params.context_len)
    prefixes = list(itertools.product(range(params.sigma), repeat=d))
    jobs = [(params, engine, p) for p in prefixes]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_histogram_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        parts = [_histogram_job(j) for j in jobs]
    acc = Fraction(0)
    for t in range(1, params.w + 2):
        u = sum(p[0][t] for p in parts)
        r = sum(p[1][t] for p in parts)
        acc += Fraction(2 * u + r, t)
    return acc / params.n_contexts
