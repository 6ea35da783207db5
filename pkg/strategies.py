"""
Test Strategies
Hypothesis strategies for weights, primes and index pairs shared by the property suites
"""

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from weights import Weight

# deterministic runs, nothing written to a local example database
settings.register_profile("periplectic", deadline=None, derandomize=True, database=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("periplectic")

PRIMES = st.sampled_from((3, 5, 7))


@st.composite
def weights(draw, min_rank: int = 2, max_rank: int = 6, spread: int = 10) -> Weight:
    entries = draw(st.lists(st.integers(-spread, spread), min_size=min_rank, max_size=max_rank))
    return Weight(tuple(entries))


@st.composite
def dominant_weights(draw, min_rank: int = 2, max_rank: int = 6, spread: int = 6) -> Weight:
    entries = draw(st.lists(st.integers(-spread, spread), min_size=min_rank, max_size=max_rank))
    return Weight(tuple(sorted(entries, reverse=True)))


@st.composite
def index_pairs(draw, n: int):
    """1 ≤ i < j ≤ n"""
    i = draw(st.integers(1, n - 1))
    j = draw(st.integers(i + 1, n))
    return i, j


@st.composite
def dominance_pairs(draw, max_rank: int = 6, spread: int = 6):
    """(μ, λ) with μ ⊴ λ: λ lowered by non-negative multiples of positive roots"""
    lam = draw(weights(2, max_rank, spread))
    lowerings = draw(st.lists(st.tuples(index_pairs(lam.n), st.integers(0, 4)), max_size=6))
    mu = lam
    for (i, j), amount in lowerings:
        mu = mu.bumped([(i, -amount), (j, amount)])
    return mu, lam
