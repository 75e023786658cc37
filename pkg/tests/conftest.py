"""Shared fixtures."""
import pytest
import structlog

from ncps.series import TruncatedSeries


@pytest.fixture(autouse=True)
def reset_logging():
    """Undo CLI logging configuration between tests."""
    yield
    structlog.reset_defaults()


@pytest.fixture
def univariate():
    """Builder for univariate series from coefficient lists."""
    return TruncatedSeries.univariate


@pytest.fixture
def x1():
    """x₁ as a degree-3 series over two letters."""
    return TruncatedSeries.monomial(2, 3, (1,))


@pytest.fixture
def x2():
    """x₂ as a degree-3 series over two letters."""
    return TruncatedSeries.monomial(2, 3, (2,))
