"""Strings, k-mer codes, and the gamechanger predicate.

A *context* is a string of ``w + k`` symbols over ``{0, ..., sigma - 1}``; it
holds ``w + 1`` consecutive k-mers, i.e. two overlapping windows.  Symbols are
plain ints and strings are tuples of ints.  Exact values are
:class:`fractions.Fraction` instances, which are always kept in lowest terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

DEFAULT_ENUM_CAP = 2**34
KMER_CODE_LIMIT = 2**64

OrderKey = Callable[[int], int]


class ParamError(ValueError):
    """Invalid parameters or malformed input strings."""


class CapExceeded(ValueError):
    """A computation would exceed its configured resource cap."""


@dataclass(frozen=True)
class Params:
    sigma: int
    k: int
    w: int

    def __post_init__(self):
        for name in ("sigma", "k", "w"):
            if not isinstance(getattr(self, name), int):
                raise ParamError(f"{name} must be an int")
        if self.sigma < 2:
            raise ParamError(f"sigma must be >= 2, got {self.sigma}")
        if self.k < 1:
            raise ParamError(f"k must be >= 1, got {self.k}")
        if self.w < 1:
            raise ParamError(f"w must be >= 1, got {self.w}")

    @property
    def window_len(self) -> int:
        return self.w + self.k - 1

    @property
    def context_len(self) -> int:
        return self.w + self.k

    @property
    def n_contexts(self) -> int:
        return self.sigma**self.context_len

    @property
    def n_kmers(self) -> int:
        return self.sigma**self.k

    def check_enumerable(self, cap: int = DEFAULT_ENUM_CAP) -> None:
        if self.n_contexts > cap:
            raise CapExceeded(
                f"sigma^(w+k) = {self.sigma}^{self.context_len} exceeds the "
                f"enumeration cap {cap}; lower k or w, or use closed-form (w <= k) or mc"
            )

    def check_code_space(self) -> None:
        if self.n_kmers > KMER_CODE_LIMIT:
            raise CapExceeded(f"sigma^k = {self.sigma}^{self.k} does not fit a 64-bit k-mer code")


def as_symbols(s: str | Iterable[int], sigma: int | None = None) -> tuple[int, ...]:
    """Turn ``"00110"`` or any int sequence into a symbol tuple.

    Characters of a str are read as base-36 digits, so alphabets up to 36
    symbols can be written compactly.
    """
    if isinstance(s, str):
        try:
            out = tuple(int(ch, 36) for ch in s)
        except ValueError as exc:
            raise ParamError(f"bad symbol in {s!r}") from exc
    else:
        out = tuple(int(x) for x in s)
    if sigma is not None and any(not 0 <= x < sigma for x in out):
        raise ParamError(f"symbol outside [0, {sigma}) in {out}")
    return out


def to_str(v: Sequence[int]) -> str:
    return "".join("0123456789abcdefghijklmnopqrstuvwxyz"[x] for x in v)


def encode_kmer(kmer: Sequence[int], sigma: int) -> int:
    """Base-sigma code, leftmost symbol most significant."""
    code = 0
    for x in kmer:
        code = code * sigma + x
    return code


def decode_kmer(code: int, sigma: int, k: int) -> tuple[int, ...]:
    if not 0 <= code < sigma**k:
        raise ParamError(f"code {code} out of range for sigma={sigma}, k={k}")
    out = [0] * k
    for i in range(k - 1, -1, -1):
        code, out[i] = divmod(code, sigma)
    return tuple(out)


def kmer_codes(v: Sequence[int], k: int, sigma: int) -> list[int]:
    """Codes of all k-mers of ``v`` left to right, by a rolling update."""
    if not 1 <= k <= len(v):
        raise ParamError(f"need 1 <= k <= |v|, got k={k}, |v|={len(v)}")
    top = sigma ** (k - 1)
    code = encode_kmer(v[:k], sigma)
    out = [code]
    for i in range(k, len(v)):
        code = (code - v[i - k] * top) * sigma + v[i]
        out.append(code)
    return out


def count_distinct_kmers(v: Sequence[int], k: int) -> int:
    if not 1 <= k <= len(v):
        raise ParamError(f"need 1 <= k <= |v|, got k={k}, |v|={len(v)}")
    v = tuple(v)
    return len({v[i : i + k] for i in range(len(v) - k + 1)})


def suffix_is_unique(v: Sequence[int], k: int) -> bool:
    """True if the k-suffix of ``v`` has no other occurrence in ``v``."""
    v = tuple(v)
    suf = v[len(v) - k :]
    return all(v[i : i + k] != suf for i in range(len(v) - k))


def _check_context(v: Sequence[int], params: Params) -> tuple[int, ...]:
    v = tuple(v)
    if len(v) != params.context_len:
        raise ParamError(f"context must have length w+k = {params.context_len}, got {len(v)}")
    return v


def gamechanger_probability(v: Sequence[int], params: Params) -> Fraction:
    """Probability that ``v`` is a gamechanger under a uniformly random order."""
    v = _check_context(v, params)
    t = count_distinct_kmers(v, params.k)
    return Fraction(2 if suffix_is_unique(v, params.k) else 1, t)


def effective_ranks(order_key: OrderKey, codes: Iterable[int]) -> dict[int, tuple[int, int]]:
    """Sort keys with ties broken by ascending code."""
    return {c: (order_key(c), c) for c in codes}


def minimizer_index(codes: Sequence[int], order_key: OrderKey) -> int:
    """Index of the minimal k-mer among ``codes``; equal k-mers tie to the left."""
    best = 0
    best_key = (order_key(codes[0]), codes[0])
    for i in range(1, len(codes)):
        key = (order_key(codes[i]), codes[i])
        if key < best_key:
            best, best_key = i, key
    return best


def is_gamechanger(v: Sequence[int], order_key: OrderKey, params: Params) -> bool:
    v = _check_context(v, params)
    i = minimizer_index(kmer_codes(v, params.k, params.sigma), order_key)
    # the leftmost minimal occurrence can only sit at index w if the suffix is unique
    return i == 0 or i == params.w


def identity_order(code: int) -> int:
    return code
