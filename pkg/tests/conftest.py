import pytest

from bjtool.ring_core import Poly, PrimeField


@pytest.fixture
def F7():
    return PrimeField(7)


@pytest.fixture
def P7(F7):
    """P7(c0, c1, ...) builds c0 + c1 x + ... over F_7."""
    return lambda *c: Poly(F7, list(c))
