"""Runs, major runs, and the length-increasing bijection between repeat sets.

Positions in :class:`MajorRun` are 1-based and inclusive.  For ``w <= k`` any
context with a repeated k-mer has a unique major run that contains every
repeat, which is what makes the counting in :mod:`randmin.closed_form` work.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import ParamError, Params


@dataclass(frozen=True)
class MajorRun:
    start: int
    end: int
    period: int

    @property
    def length(self) -> int:
        return self.end - self.start + 1


def prefix_function(s: Sequence[int]) -> list[int]:
    pi = [0] * len(s)
    for i in range(1, len(s)):
        j = pi[i - 1]
        while j and s[i] != s[j]:
            j = pi[j - 1]
        if s[i] == s[j]:
            j += 1
        pi[i] = j
    return pi


def minimal_period(s: Sequence[int]) -> int:
    if not s:
        return 0
    return len(s) - prefix_function(s)[-1]


def find_runs(v: Sequence[int]) -> list[MajorRun]:
    """All runs of ``v`` (maximal substrings with minimal period p and length >= 2p)."""
    v = tuple(v)
    n = len(v)
    runs = []
    for p in range(1, n // 2 + 1):
        i = 0
        while i < n - p:
            if v[i] != v[i + p]:
                i += 1
                continue
            j = i
            while j < n - p and v[j] == v[j + p]:
                j += 1
            length = j - i + p
            if length >= 2 * p and minimal_period(v[i : j + p]) == p:
                runs.append(MajorRun(i + 1, j + p, p))
            i = j
    return runs


def is_major(run: MajorRun, n: int) -> bool:
    return 2 * run.length >= n + 2 * run.period


def major_runs(v: Sequence[int]) -> list[MajorRun]:
    n = len(v)
    return [r for r in find_runs(v) if is_major(r, n)]


def find_major_run(v: Sequence[int]) -> MajorRun | None:
    if len(v) < 2:
        raise ParamError("need |v| >= 2")
    found = major_runs(v)
    if len(found) > 1:
        raise AssertionError(f"two major runs in {tuple(v)}: {found}")
    return found[0] if found else None


def has_k_repeat(v: Sequence[int], k: int) -> bool:
    v = tuple(v)
    seen = set()
    for i in range(len(v) - k + 1):
        kmer = v[i : i + k]
        if kmer in seen:
            return True
        seen.add(kmer)
    return False


def _repeat_run(v: Sequence[int], k: int) -> MajorRun:
    run = find_major_run(v)
    if run is None or run.length < run.period + k:
        raise ParamError(f"{tuple(v)} has no repeated {k}-mer")
    return run


def distinct_kmers_via_run(v: Sequence[int], params: Params) -> int:
    """Distinct k-mers of a context with a repeat, read off its major run."""
    if params.w > params.k:
        raise ParamError("needs w <= k")
    if len(v) != params.context_len:
        raise ParamError(f"context must have length {params.context_len}")
    run = _repeat_run(v, params.k)
    return params.w - (run.length - run.period - params.k)


def phi(v: Sequence[int], params: Params) -> tuple[int, ...]:
    """Map a (w+k)-context with a k-repeat to a (w+k+1)-context with a (k+1)-repeat.

    The major run ``x`` is extended by its own period, ``x -> x a1``; when the
    symbol right after ``x`` equals ``a2`` it is rewritten to ``a1`` so that the
    run still stops there.
    """
    v = tuple(v)
    if params.w > params.k:
        raise ParamError("needs w <= k")
    if len(v) != params.context_len:
        raise ParamError(f"context must have length {params.context_len}")
    run = _repeat_run(v, params.k)
    p = run.period
    left, x, right = v[: run.start - 1], v[run.start - 1 : run.end], v[run.end :]
    a1 = x[-p]
    if right and p > 1 and right[0] == x[-p + 1]:
        right = (a1,) + right[1:]
    return left + x + (a1,) + right


def phi_inverse(v2: Sequence[int], params: Params) -> tuple[int, ...]:
    """Inverse of :func:`phi`; ``params`` are those of the preimage."""
    v2 = tuple(v2)
    if params.w > params.k:
        raise ParamError("needs w <= k")
    if len(v2) != params.context_len + 1:
        raise ParamError(f"image must have length {params.context_len + 1}")
    run = _repeat_run(v2, params.k + 1)
    p = run.period
    left, x2, right = v2[: run.start - 1], v2[run.start - 1 : run.end], v2[run.end :]
    x = x2[:-1]
    a1 = x[-p]
    if right and p > 1 and right[0] == a1:
        right = (x[-p + 1],) + right[1:]
    return left + x + right
