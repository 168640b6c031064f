from fractions import Fraction
import itertools

import pytest
from hypothesis import given, strategies as st

from randmin.core import (
    CapExceeded,
    ParamError,
    Params,
    as_symbols,
    count_distinct_kmers,
    decode_kmer,
    encode_kmer,
    gamechanger_probability,
    identity_order,
    is_gamechanger,
    kmer_codes,
    suffix_is_unique,
)
from randmin.oracle import markup

from conftest import contexts


@pytest.mark.parametrize("bad", [(1, 2, 2), (2, 0, 2), (2, 2, 0), (2.0, 2, 2)])
def test_params_rejects(bad):
    with pytest.raises(ParamError):
        Params(*bad)


def test_params_lengths():
    p = Params(3, 4, 5)
    assert (p.window_len, p.context_len, p.n_contexts, p.n_kmers) == (8, 9, 3**9, 81)


def test_caps():
    with pytest.raises(CapExceeded):
        Params(2, 30, 30).check_enumerable()
    with pytest.raises(CapExceeded):
        Params(2, 65, 1).check_code_space()
    Params(2, 64, 1).check_code_space()


@pytest.mark.parametrize("v, k, t", [("00000", 3, 1), ("00100", 3, 3), ("01010", 3, 2)])
def test_count_distinct_examples(v, k, t):
    assert count_distinct_kmers(as_symbols(v), k) == t


def test_count_distinct_rejects_long_k():
    with pytest.raises(ParamError):
        count_distinct_kmers((0, 1), 3)


@pytest.mark.parametrize(
    "v, k, w, expected",
    [("00000", 3, 2, Fraction(1)), ("00110", 2, 3, Fraction(1, 2)), ("00100", 2, 3, Fraction(1, 3))],
)
def test_probability_examples(v, k, w, expected):
    assert gamechanger_probability(as_symbols(v), Params(2, k, w)) == expected


def test_probability_length_mismatch():
    with pytest.raises(ParamError):
        gamechanger_probability((0, 0, 0), Params(2, 2, 2))


@pytest.mark.parametrize("v, expected", [("0000", True), ("0110", True), ("1010", False)])
def test_is_gamechanger_examples(v, expected):
    assert is_gamechanger(as_symbols(v), identity_order, Params(2, 2, 2)) is expected


@given(st.integers(2, 7), st.integers(1, 8), st.data())
def test_kmer_code_roundtrip(sigma, k, data):
    kmer = tuple(data.draw(st.lists(st.integers(0, sigma - 1), min_size=k, max_size=k)))
    code = encode_kmer(kmer, sigma)
    assert 0 <= code < sigma**k
    assert decode_kmer(code, sigma, k) == kmer


@given(contexts())
def test_rolling_codes_match_direct(pv):
    p, v = pv
    codes = kmer_codes(v, p.k, p.sigma)
    assert codes == [encode_kmer(v[i : i + p.k], p.sigma) for i in range(p.w + 1)]


@given(contexts())
def test_distinct_count_reversal_invariant(pv):
    p, v = pv
    assert count_distinct_kmers(v, p.k) == count_distinct_kmers(v[::-1], p.k)


@given(contexts())
def test_probability_lowest_terms(pv):
    p, v = pv
    prob = gamechanger_probability(v, p)
    assert prob.denominator <= p.w + 1
    t = count_distinct_kmers(v, p.k)
    if t == p.w + 1:
        assert prob == Fraction(2, p.w + 1)
    assert prob == Fraction(2 if suffix_is_unique(v, p.k) else 1, t)


@given(contexts(max_sigma=3, max_k=3, max_w=4), st.permutations(range(27)))
def test_is_gamechanger_matches_markup(pv, perm):
    # charged iff the two windows of the context pick different positions
    p, v = pv
    assert is_gamechanger(v, perm.__getitem__, p) == (len(markup(v, perm.__getitem__, p)) == 2)


def test_probability_is_order_average():
    # P(v) is the fraction of orders of the t distinct k-mers that make v a gamechanger
    p = Params(2, 2, 2)
    for v in itertools.product(range(2), repeat=4):
        hits = sum(is_gamechanger(v, lambda c, r=r: r[c], p) for r in itertools.permutations(range(4)))
        assert Fraction(hits, 24) == gamechanger_probability(v, p)
