import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from littlewood.errors import LengthMismatch, NotAligned
from littlewood.polycore import build_Q, parse_signs, random_reciprocal
from littlewood.structure import (decompose, min_blocks_dp, period_profile, to_deviation_form,
                                  to_geometric)

seqs = st.lists(st.sampled_from([-1, 1]), min_size=1, max_size=256)


def test_small_decomposition():
    dec = decompose([1, -1, 1, -1, 1, 1, 1, 1], 2)
    assert [(b.start, b.end) for b in dec.blocks] == [(0, 4), (4, 8)]
    assert dec.reconstruct() == [1, -1, 1, -1, 1, 1, 1, 1]


def test_unaligned_can_be_shorter():
    c = [1, 1, 1, -1, 1, -1, 1, -1]
    assert decompose(c, 2, aligned=False).L == 2
    assert decompose(c, 2, aligned=True).L == 2
    assert decompose([1, -1, -1, 1, -1, -1], 3, aligned=False).L == 1


@settings(max_examples=500, deadline=None)
@given(seqs, st.integers(1, 6), st.booleans())
def test_greedy_is_optimal(c, D, aligned):
    dec = decompose(c, D, aligned)
    assert dec.L == min_blocks_dp(c, D, aligned)
    assert dec.reconstruct() == c


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from([-1, 1]), min_size=1, max_size=6), st.integers(1, 60))
def test_periodic_sequence_is_one_block(pattern, reps):
    c = (pattern * reps)[: len(pattern) * reps]
    assert decompose(c, len(pattern)).L == 1


@settings(max_examples=200, deadline=None)
@given(seqs, st.integers(1, 6))
def test_geometric_form_exact(c, D):
    form = to_geometric(decompose(c, D), c)
    assert form.verify(c)


def test_geometric_needs_alignment():
    c = [1, 1, -1]
    with pytest.raises(NotAligned):
        to_geometric(decompose(c, 2, aligned=False), c)


def test_deviation_form_on_odd_degree_inputs():
    rng = np.random.default_rng(5)
    for _ in range(200):
        P = random_reciprocal(2 * int(rng.integers(4, 60)) + 1, rng)
        q = list(build_Q(P).coeffs)
        D = 2 * int(rng.integers(1, 4))
        eps = q[:D] if len(q) >= D else q + [0] * (D - len(q))
        form = to_deviation_form(q, D, eps)
        assert form.verify(q) and form.delta_in_range


def test_deviation_form_length_mismatch():
    with pytest.raises(LengthMismatch):
        to_deviation_form([1, 1, 1], 2, [1])


def test_period_profile():
    q = list(build_Q(parse_signs("+-+-+-+-+")).coeffs)
    profile = period_profile(q, 3)
    assert profile[1] == (2, 1) and [D for D, _ in profile] == [1, 2, 3]
