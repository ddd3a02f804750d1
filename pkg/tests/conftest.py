import pytest

from kstruve.specfun import TruncationPolicy


@pytest.fixture
def tight():
    """Policy with enough terms that rel_tol is the binding stop rule."""
    return TruncationPolicy(max_terms=200, rel_tol=1e-16)


@pytest.fixture
def deep():
    """Policy for samplers evaluated far out on the quadrature axis."""
    return TruncationPolicy(max_terms=300, rel_tol=1e-16)
