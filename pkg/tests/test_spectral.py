import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from littlewood.errors import NotNonnegative, ZeroLeading
from littlewood.spectral import (HAS_SIGN_CHANGE, INCONCLUSIVE, TrigPoly, autocorrelation,
                                 coefficient_sign_change_test, fejer_riesz_factor, find_sign_change)

complex_vecs = st.integers(0, 32).flatmap(lambda N: st.lists(
    st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False),
    min_size=N + 1, max_size=N + 1)).filter(lambda d: abs(d[0]) > 1e-3 and abs(d[-1]) > 1e-3)


def test_autocorrelation_small():
    # d = (2, 1): w = |2 + e^{it}|² = 5 + 4cos t
    assert autocorrelation([2, 1]).coeffs == (5, 2)


def test_factor_small():
    f = fejer_riesz_factor([5, 2])
    # outer factor has its root in the closed unit disc: d ∝ (1, 2)
    assert np.allclose(sorted(np.abs(f.d)), [1, 2]) and f.residual < 1e-12
    assert abs(np.roots(np.conj(f.d)[::-1])[0]) <= 1 + 1e-9


def test_factor_with_unit_circle_roots():
    # w = 2 - 2cos t = |1 - e^{it}|² has a double root at t = 0
    f = fejer_riesz_factor([2, -1])
    assert f.residual < 1e-8


def test_factor_rejects_negative():
    with pytest.raises(NotNonnegative) as info:
        fejer_riesz_factor([1, 1])
    assert info.value.details["value"] < 0


@settings(max_examples=300, deadline=None)
@given(complex_vecs)
def test_round_trip(d):
    c = autocorrelation(d)
    f = fejer_riesz_factor(c)
    assert f.residual <= 1e-8
    # phase/flip representative: reverse-conjugate with a unit multiplier
    flipped = 1j * np.conj(np.asarray(d, dtype=complex))[::-1]
    assert np.allclose(autocorrelation(flipped).coeffs, c.coeffs, atol=1e-12)


def test_sign_change_test_cases():
    assert coefficient_sign_change_test([1, 0, 1]) == HAS_SIGN_CHANGE      # 2|c_2| > |c_0|
    assert coefficient_sign_change_test([2, 1, 1]) == HAS_SIGN_CHANGE      # equality, middle term
    assert coefficient_sign_change_test([2, 0, 1]) == INCONCLUSIVE         # 2 + 2cos 2t ≥ 0
    assert coefficient_sign_change_test([5, 2]) == INCONCLUSIVE
    with pytest.raises(ZeroLeading):
        coefficient_sign_change_test([1, 0])


@settings(max_examples=500, deadline=None)
@given(st.integers(1, 32).flatmap(lambda N: st.lists(st.integers(-5, 5), min_size=N + 1,
                                                     max_size=N + 1)).filter(lambda c: c[-1] != 0))
def test_sign_change_soundness(c):
    if coefficient_sign_change_test(c) == HAS_SIGN_CHANGE:
        cert = find_sign_change(c, 1 << 12)
        assert cert is not None
        w = TrigPoly(tuple(c))
        assert w(cert.t_plus) > 0 > w(cert.t_minus)


def test_find_sign_change_resolution_guard():
    with pytest.raises(ValueError):
        find_sign_change([1] * 20, 16)
    assert find_sign_change([5, 2], 64) is None
