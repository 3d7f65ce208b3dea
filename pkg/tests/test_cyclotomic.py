import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from littlewood import cyclotomic as cyc


@pytest.mark.parametrize("n, phi", [(1, (-1, 1)), (2, (1, 1)), (4, (1, 0, 1)), (6, (1, -1, 1)),
                                    (12, (1, 0, -1, 0, 1))])
def test_cyclotomic_polynomials(n, phi):
    assert cyc.cyclotomic_polynomial(n) == phi


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 24), st.lists(st.integers(-5, 5), min_size=1, max_size=24))
def test_reduce_preserves_value(D, vec):
    zeta = np.exp(2j * np.pi / D)
    full = sum(c * zeta ** k for k, c in enumerate(vec))
    red = sum(c * zeta ** k for k, c in enumerate(cyc.reduce(vec, D)))
    assert abs(full - red) < 1e-9


def test_sum_of_roots_of_unity():
    for D in range(2, 20):
        assert cyc.as_integer([1] * D, D) == 0
    assert cyc.as_integer(cyc.element([(1, 1), (-1, 1)], 6), 6) == 1  # 2cos(π/3)
    with pytest.raises(ArithmeticError):
        cyc.as_integer(cyc.element([(1, 1)], 5), 5)


def test_multiply_is_cyclic():
    a = cyc.element([(3, 2)], 4)
    assert list(cyc.multiply(a, a, 4)) == [0, 0, 4, 0]
