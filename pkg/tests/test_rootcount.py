from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from littlewood.errors import NotReciprocal, ZeroPolynomial
from littlewood.polycore import CosinePoly, IntPoly, family_g, parse_signs, random_reciprocal
from littlewood.rootcount import (ZCount, chebyshev_transform, cosine_census, count_real_roots,
                                  count_signs, count_unimodular, grid_sign_change_oracle,
                                  oracle_sign_changes, unimodular_via_monomial)

signs = st.integers(1, 40).flatmap(
    lambda N: st.lists(st.sampled_from("+-"), min_size=N // 2 + 1, max_size=N // 2 + 1).map(
        lambda h, N=N: "".join(h + (h[-2::-1] if N % 2 == 0 else h[::-1]))))


# Hand-factored cases: (distinct, with multiplicity, mult at 1, mult at -1, odd-multiplicity count)
KNOWN = {
    "++": (1, 1, 0, 1, 1),           # 1 + z
    "+++": (2, 2, 0, 0, 2),          # primitive cube roots of unity
    "+--+": (2, 3, 2, 1, 1),         # (z - 1)²(z + 1)
    "++++": (3, 3, 0, 1, 3),         # (1 + z)(1 + z²)
    "++++++++": (7, 7, 0, 1, 7),     # (1 + z)(1 + z²)(1 + z⁴)
    "+-+-+": (4, 4, 0, 0, 4),        # (z⁵ + 1)/(z + 1)
    "+-+": (2, 2, 0, 0, 2),          # primitive sixth roots of unity
    "+-----+": (4, 4, 0, 0, 4),      # four simple roots off ±1 (numpy companion matrix)
}


@pytest.mark.parametrize("s, expected", sorted(KNOWN.items()))
def test_known_factorizations(s, expected):
    z = count_signs(s)
    assert (z.distinct, z.with_multiplicity, z.at_plus_one, z.at_minus_one,
            z.odd_multiplicity_count) == expected


def test_four_root_example_independently():
    roots = np.roots([1, -1, -1, -1, -1, -1, 1])
    near = roots[np.abs(np.abs(roots) - 1) < 1e-6]
    assert near.size == 4 and np.min(np.abs(np.abs(near.real) - 1)) > 0.1


def test_minimum_witness_degree_7():
    z = count_signs("+++--+++")
    assert (z.distinct, z.with_multiplicity, z.at_minus_one) == (3, 3, 1)


def _numpy_count(coeffs) -> int:
    roots = np.roots(np.asarray(coeffs, dtype=float)[::-1])
    return int(np.sum(np.abs(np.abs(roots) - 1) < 1e-4))


def test_against_numpy_roots():
    rng = np.random.default_rng(11)
    for _ in range(200):
        P = random_reciprocal(int(rng.integers(1, 25)), rng)
        assert count_unimodular(P).with_multiplicity == _numpy_count(P.coeffs), P.signs


@settings(max_examples=300, deadline=None)
@given(signs)
def test_census_invariants(s):
    P = parse_signs(s)
    z = count_unimodular(P)
    assert 0 <= z.distinct <= z.with_multiplicity <= P.degree
    assert (z.distinct - (z.at_plus_one > 0) - (z.at_minus_one > 0)) % 2 == 0
    assert count_unimodular(-P) == z
    assert unimodular_via_monomial(P) == z


@settings(max_examples=150, deadline=None)
@given(signs)
def test_census_matches_grid_oracle(s):
    P = parse_signs(s)
    assert oracle_sign_changes(P, 1 << 14) == count_unimodular(P).odd_multiplicity_count


def test_errors():
    with pytest.raises(NotReciprocal):
        count_unimodular(IntPoly.of(1, 2))
    with pytest.raises(ZeroPolynomial):
        count_unimodular(IntPoly(()))
    with pytest.raises(ZeroPolynomial):
        cosine_census(CosinePoly(()))
    with pytest.raises(ValueError):
        grid_sign_change_oracle(family_g(10), 8)


def test_cosine_census_family_g0():
    # g_0 = 2cos θ vanishes at π/2 and 3π/2
    assert cosine_census(family_g(0)) == ZCount(2, 2, 0, 0, 2)


def test_chebyshev_transform():
    # 1 + 2cos θ + 2cos 2θ = 4x² + 2x - 1
    assert chebyshev_transform(CosinePoly((1, 2, 2))).coeffs == (-1, 2, 4)


def test_count_real_roots_multiplicities():
    F = IntPoly.of(-1, 1) * IntPoly.of(-1, 1) * IntPoly.of(1, 2)  # (x - 1)²(2x + 1)
    roots = count_real_roots(F, -1, 1)
    assert [(r.multiplicity, r.lo <= Fraction(-1, 2) <= r.hi) for r in roots][0] == (1, True)
    assert roots[-1].multiplicity == 2 and roots[-1].lo <= 1 <= roots[-1].hi
