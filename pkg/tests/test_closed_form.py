from fractions import Fraction
import itertools
import math

import pytest
from hypothesis import given, strategies as st

from randmin import closed_form as cf
from randmin.core import ParamError, Params, gamechanger_probability
from randmin.exact_enum import exact_density_fast
from randmin.oracle import exact_density_naive
from randmin.structure import has_k_repeat


def test_prim_examples():
    assert cf.prim_table(2, 6).values == (2, 2, 6, 12, 30, 54)
    assert cf.prim_table(10, 2)[2] == 90
    for s in (2, 3, 7):
        expect = s**60 - s**30 - s**20 - s**12 + s**10 + s**6 + s**4 - s**2
        assert cf.prim_table(s, 60)[60] == expect


@given(st.integers(2, 12), st.integers(1, 80))
def test_prim_sieve_matches_mobius(sigma, n):
    table = cf.prim_table(sigma, n)
    mu = cf.mobius_table(n)
    assert [table[p] for p in range(1, n + 1)] == [cf.prim_mobius(sigma, p, mu) for p in range(1, n + 1)]
    # every word is a power of exactly one primitive root
    assert sum(table[d] for d in range(1, n + 1) if n % d == 0) == sigma**n


def test_mobius_values():
    assert cf.mobius_table(12)[1:] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


def _brute_rep(sigma, k, w):
    p = Params(sigma, k, w)
    rep = [v for v in itertools.product(range(sigma), repeat=w + k) if has_k_repeat(v, k)]
    return len(rep), sum((gamechanger_probability(v, p) for v in rep), Fraction(0))


@pytest.mark.parametrize("triple", [(2, 2, 1), (2, 2, 2), (2, 5, 3), (3, 4, 4), (3, 3, 2), (4, 3, 3), (2, 6, 6)])
def test_rep_against_brute_force(triple):
    n, psum = _brute_rep(*triple)
    assert cf.rep_count(*triple) == n
    assert cf.rep_prob_sum(*triple) == psum


def test_rep_small_values():
    assert cf.rep_count(2, 2, 1) == 2
    assert cf.rep_prob_sum(2, 2, 1) == 2


def test_half_quadrant_enforced():
    for fn in (cf.rep_count, cf.rep_prob_sum):
        with pytest.raises(ParamError):
            fn(2, 2, 3)
    with pytest.raises(ParamError):
        cf.density_closed_form(Params(2, 2, 3))


def test_deviation_examples():
    assert cf.deviation(2, 1) == 0
    assert cf.deviation(2, 2) == Fraction(2, 3)
    assert cf.deviation(2, 3) == Fraction(4, 3)


@pytest.mark.parametrize("sigma, k_max", [(2, 7), (3, 5), (4, 4)])
def test_closed_form_equals_enumeration(sigma, k_max):
    for k in range(1, k_max + 1):
        for w in range(1, k + 1):
            if sigma ** (w + k) > 2**14:
                continue
            p = Params(sigma, k, w)
            assert cf.density_closed_form(p) == exact_density_fast(p)


def test_closed_form_examples():
    assert cf.density_closed_form(Params(2, 2, 2)) == Fraction(17, 24)
    gap = cf.density_factor(cf.density_closed_form(Params(2, 3, 3)), 3) - 2
    assert gap == Fraction(1, 12)
    assert cf.log_abs_dfr_gap(Params(10, 2, 2)) == pytest.approx(-3, abs=0.05)


def test_vertical_step():
    assert cf.vertical_step(2, 2, 2, Fraction(17, 24)) == Fraction(11, 16)
    assert cf.vertical_step(3, 4, 3, Fraction(1, 2)) == Fraction(1, 2)
    dr = cf.density_closed_form(Params(2, 5, 5))
    for k in range(5, 10):
        dr = cf.vertical_step(2, k, 5, dr)
    assert dr == cf.density_closed_form(Params(2, 10, 5))


def test_delta_examples():
    assert cf.delta(2, 1) == Fraction(2, 3)
    assert cf.delta(2, 2) == Fraction(2, 3)
    assert cf.delta(2, 3) == Fraction(11, 10)
    assert cf.delta_polynomial(2, 6) == Fraction(16, 7) == cf.delta(2, 6)
    assert cf.delta_polynomial(3, 1) == 1


@given(st.integers(2, 12), st.integers(1, 60))
def test_delta_identities(sigma, w):
    devs = cf.deviations(sigma, w + 1)
    d = cf.delta(sigma, w)
    assert d == devs[w] - devs[w - 1] == cf.delta_wrapped(sigma, w)
    assert devs[w] == sum((cf.delta(sigma, j) for j in range(1, w + 1)), Fraction(0))


@pytest.mark.parametrize("w", [1, 2, 3, 4, 5, 6, 8, 9, 10])
def test_published_polynomials(w):
    for sigma in range(2, 11):
        assert cf.delta_polynomial_check(sigma, w)
        assert cf.delta(sigma, w) > 0


def test_w7_polynomial_has_corrected_last_coefficient():
    # the published -5 sigma term does not fit; -7 sigma does, for every alphabet
    den, coeffs = cf.DELTA_POLYNOMIALS[7]
    fixed = coeffs[:-1] + (-7,)
    for sigma in range(2, 21):
        value = 0
        for c in fixed:
            value = (value + c) * sigma
        assert Fraction(value, den) == cf.delta(sigma, 7)
        assert not cf.delta_polynomial_check(sigma, 7)


def test_polynomial_range():
    with pytest.raises(ParamError):
        cf.delta_polynomial(2, 11)


def test_crossing_examples():
    assert cf.find_crossing(2).first_negative == 17
    assert cf.find_crossing(10).first_negative == 30
    assert cf.find_crossing(2, w_cap=10).first_negative is None
    with pytest.raises(ParamError):
        cf.find_crossing(2, 1)


@pytest.mark.parametrize("sigma", [2, 3, 5])
def test_sign_regime(sigma):
    c = cf.find_crossing(sigma, 120)
    devs = cf.deviations(sigma, 120)
    assert all(d > 0 for d in devs[1 : c.first_negative - 1])
    assert all(d < 0 for d in devs[c.first_negative - 1 :])


def test_large_w_ratio_bounded():
    # Dev * w / sigma^w should stay within constant bounds; recorded, not pinned
    ratios = [abs(d) * w / 2**w for w, d in enumerate(cf.deviations(2, 200), 1) if w >= 20]
    lo, hi = min(ratios), max(ratios)
    assert 0 < lo <= hi < 10 * lo


@pytest.mark.parametrize(
    "sigma, k, w, cell",
    [(2, 2, 2, -3), (2, 3, 2, -4), (2, 5, 5, -5.6), (2, 17, 17, -25.5), (10, 30, 30, -33.6), (10, 37, 37, -39.7)],
)
def test_table_cells(sigma, k, w, cell):
    assert cf.log_abs_dfr_gap(Params(sigma, k, w)) == pytest.approx(cell, abs=0.05)


def test_log_gap_base_override():
    p = Params(2, 3, 3)
    assert cf.log_abs_dfr_gap(p, base=math.e) == pytest.approx(math.log(1 / 12))


def test_naive_dev_independent_of_k():
    for sigma, w, ks in [(2, 3, (3, 4, 5)), (3, 2, (2, 3, 4)), (2, 2, (2, 5, 7))]:
        target = cf.deviation(sigma, w)
        for k in ks:
            p = Params(sigma, k, w)
            assert (exact_density_naive(p) - Fraction(2, w + 1)) * p.n_contexts == target
