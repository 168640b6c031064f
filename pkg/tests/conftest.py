import pytest
from hypothesis import HealthCheck, settings, strategies as st

from randmin import Params

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def contexts(draw, max_sigma=4, max_k=5, max_w=5):
    """A Params triple plus one context string for it."""
    sigma = draw(st.integers(2, max_sigma))
    k = draw(st.integers(1, max_k))
    w = draw(st.integers(1, max_w))
    v = tuple(draw(st.lists(st.integers(0, sigma - 1), min_size=w + k, max_size=w + k)))
    return Params(sigma, k, w), v


@pytest.fixture
def p222():
    return Params(2, 2, 2)
