import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levysep import (
    FixedSign,
    GridPath,
    IncrementSeq,
    RngStream,
    TiedIncrementsError,
    bridge_of,
    check_threshold_schedule,
    compose,
    default_threshold,
    increments_of,
    multivariate_reorder,
    path_of,
    rank_permutation,
    recover_signal,
    recover_with_drift,
    reorder_decompose,
    sample_compound_poisson,
    sample_gaussian_increments,
    threshold_decompose,
)

finite_increments = st.lists(
    st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False),
    min_size=2,
    max_size=40,
).filter(lambda xs: len(set(xs)) == len(xs))


def seq(values) -> IncrementSeq:
    values = np.asarray(values, dtype=float)
    return IncrementSeq(len(values), values)


# ---------------------------------------------------------------------------
# rank_permutation
# ---------------------------------------------------------------------------

def test_rank_permutation_identity_for_matching_orders():
    x = seq([1.0, 2.0, 3.0, 4.0])
    w = seq([0.1, 0.2, 0.3, 0.4])
    assert np.array_equal(rank_permutation(x, w), np.arange(4))


def test_rank_permutation_reversal():
    x = seq([4.0, 3.0, 2.0, 1.0])
    w = seq([0.1, 0.2, 0.3, 0.4])
    assert np.array_equal(rank_permutation(x, w), np.array([3, 2, 1, 0]))


def brute_force_permutation(x, w):
    """The unique permutation matching orderings, by exhaustive search."""
    n = len(x)
    for perm in itertools.permutations(range(n)):
        arranged = [w[perm[i]] for i in range(n)]
        if all(
            (x[i] < x[j]) == (arranged[i] < arranged[j])
            for i in range(n)
            for j in range(n)
            if i != j
        ):
            return np.array(perm)
    raise AssertionError("no order-matching permutation found")


@pytest.mark.parametrize("seed", range(5))
def test_rank_permutation_against_brute_force(seed):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(4)
    w = rng.standard_normal(4)
    got = rank_permutation(seq(x), seq(w))
    assert np.array_equal(got, brute_force_permutation(x, w))


def test_rank_permutation_rejects_ties():
    with pytest.raises(TiedIncrementsError):
        rank_permutation(seq([1.0, 1.0, 2.0]), seq([0.1, 0.2, 0.3]))
    with pytest.raises(TiedIncrementsError):
        rank_permutation(seq([1.0, 3.0, 2.0]), seq([0.1, 0.1, 0.3]))


def test_rank_permutation_stable_tie_break_is_deterministic():
    # quantised observations: equal values are ranked by grid position
    x = seq([2.0, 1.0, 1.0, 3.0])
    w = seq([0.4, 0.1, 0.2, 0.3])
    perm = rank_permutation(x, w, ties="stable")
    # the tied positions 1,2 get the two smallest w values in grid order
    assert np.array_equal(perm, np.array([3, 1, 2, 0]))
    again = reorder_decompose(x, w, ties="stable")
    assert np.array_equal(again.permutation, perm)
    # multiset preserved; order isomorphism holds between distinct values
    out = w.deltas[perm]
    assert np.array_equal(np.sort(out), np.sort(w.deltas))
    for i in range(4):
        for j in range(4):
            if x.deltas[i] != x.deltas[j]:
                assert (x.deltas[i] < x.deltas[j]) == (out[i] < out[j])


def test_stable_tie_break_scatters_blocks_in_grid_order():
    # a fully tied run must not receive a value-sorted block of fresh
    # increments; it gets them in their own grid order instead
    x = seq([1.0, 1.0, 1.0, 1.0])
    w = seq([0.3, -0.1, 0.2, 0.05])
    result = reorder_decompose(x, w, ties="stable")
    assert np.array_equal(result.permutation, np.arange(4))
    assert np.array_equal(w.deltas[result.permutation], w.deltas)
    # and tied runs inside a larger vector scatter independently
    x2 = seq([5.0, 2.0, 2.0, 2.0, 7.0])
    w2 = seq([0.5, 0.4, 0.1, 0.3, 0.2])
    perm2 = rank_permutation(x2, w2, ties="stable")
    # tied run holds the three smallest w2 values {0.1@2, 0.2@4, 0.3@3},
    # assigned in grid-index order 2, 3, 4
    assert np.array_equal(perm2, np.array([1, 2, 3, 4, 0]))


def test_rank_permutation_rejects_unknown_tie_policy():
    with pytest.raises(ValueError):
        rank_permutation(seq([1.0, 2.0]), seq([0.1, 0.2]), ties="whatever")


def test_rank_permutation_rejects_length_mismatch():
    with pytest.raises(ValueError):
        rank_permutation(seq([1.0, 2.0]), seq([1.0, 2.0, 3.0]))


@given(finite_increments, finite_increments)
@settings(max_examples=150, deadline=None)
def test_rank_permutation_properties(xs, ws):
    n = min(len(xs), len(ws))
    x, w = seq(xs[:n]), seq(ws[:n])
    perm = rank_permutation(x, w)
    assert sorted(perm) == list(range(n))  # bijection
    arranged = w.deltas[perm]
    assert np.array_equal(np.argsort(arranged), np.argsort(x.deltas))


# ---------------------------------------------------------------------------
# reorder_decompose
# ---------------------------------------------------------------------------

def test_reorder_self_coupling_recovers_input():
    x = seq([0.3, -1.2, 0.7, 0.1, -0.4])
    result = reorder_decompose(x, x)
    assert np.array_equal(result.w_approx.values, path_of(x).values)
    assert np.array_equal(result.permutation, np.arange(5))


def test_reorder_single_increment_ignores_x():
    x = seq([123.0])
    w = seq([-0.5])
    result = reorder_decompose(x, w)
    assert np.array_equal(result.w_approx.values, np.array([0.0, -0.5]))


def test_reorder_invariants_on_random_instance():
    rng = np.random.default_rng(3)
    x, w = seq(rng.standard_normal(5)), seq(rng.standard_normal(5))
    result = reorder_decompose(x, w)
    out = w.deltas[result.permutation]
    assert np.array_equal(np.sort(out), np.sort(w.deltas))  # multiset preserved
    assert np.array_equal(np.argsort(out), np.argsort(x.deltas))  # ranks preserved
    assert np.array_equal(result.w_approx.values[1:], np.cumsum(out))
    assert result.w_approx.values[-1] == pytest.approx(w.deltas.sum(), abs=1e-15)


@given(finite_increments, finite_increments)
@settings(max_examples=150, deadline=None)
def test_reorder_multiset_and_rank_preservation(xs, ws):
    n = min(len(xs), len(ws))
    x, w = seq(xs[:n]), seq(ws[:n])
    result = reorder_decompose(x, w)
    out = w.deltas[result.permutation]
    assert np.array_equal(np.sort(out), np.sort(w.deltas))
    assert np.array_equal(np.argsort(out), np.argsort(x.deltas))
    assert np.array_equal(result.w_approx.values[1:], np.cumsum(out))


@given(
    finite_increments,
    finite_increments,
    st.floats(min_value=1e-3, max_value=1e3, allow_nan=False),
)
@settings(max_examples=150, deadline=None)
def test_reorder_scale_equivariance(xs, ws, c):
    n = min(len(xs), len(ws))
    x, w = seq(xs[:n]), seq(ws[:n])
    scaled = seq(c * x.deltas)
    try:
        base = reorder_decompose(x, w)
        other = reorder_decompose(scaled, w)
    except TiedIncrementsError:
        return  # c*x collapsed two nearby floats; ordering undefined
    assert np.array_equal(base.permutation, other.permutation)
    assert np.array_equal(base.w_approx.values, other.w_approx.values)


# ---------------------------------------------------------------------------
# bridge_of
# ---------------------------------------------------------------------------

def test_bridge_kills_linear_paths():
    t = np.arange(9) / 8
    path = GridPath(8, 3.7 * t)
    assert np.array_equal(bridge_of(path).values, np.zeros(9))


def test_bridge_endpoints_exact_zero():
    path = path_of(sample_gaussian_increments(1000, RngStream(0, 3)))
    bridge = bridge_of(path)
    assert bridge.values[0] == 0.0
    assert bridge.values[-1] == 0.0


def test_bridge_hand_example():
    bridge = bridge_of(GridPath(2, np.array([0.0, 1.0, 0.5])))
    assert np.array_equal(bridge.values, np.array([0.0, 0.75, 0.0]))


@given(finite_increments)
@settings(max_examples=100, deadline=None)
def test_bridge_idempotent(xs):
    path = path_of(seq(xs))
    once = bridge_of(path)
    twice = bridge_of(once)
    assert np.array_equal(once.values, twice.values)


# ---------------------------------------------------------------------------
# default_threshold / check_threshold_schedule
# ---------------------------------------------------------------------------

def test_default_threshold_values():
    assert default_threshold(math.e**2) == pytest.approx(2.0 / math.e, rel=1e-12)
    assert default_threshold(10_000) == pytest.approx(math.log(10_000) / 100.0, rel=1e-15)


def test_default_threshold_rejects_small_n():
    with pytest.raises(ValueError):
        default_threshold(1)


def test_default_threshold_decreasing_from_eight():
    grid = np.unique(np.geomspace(8, 1_000_000, 200).astype(int))
    values = [default_threshold(int(n)) for n in grid]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_check_threshold_schedule_examples():
    # canonical cutoff at n=1e4 is fine for any activity index
    assert check_threshold_schedule(10_000, default_threshold(10_000), 1.0, 2.0) == "ok"
    assert check_threshold_schedule(10_000, default_threshold(10_000), 1.0, 0.0) == "ok"
    # 0.1/sqrt(n) at n=1e6: ratio 0.01/log(n) is far below 2 - 0.5
    assert check_threshold_schedule(1_000_000, 0.1 / 1000.0, 1.0, 0.5) == "too_small"
    # n^-0.2 at n=1e6: n^0.4 * a_n = n^0.2 ~ 15.8, beyond the log allowance
    assert check_threshold_schedule(1_000_000, 1_000_000**-0.2, 1.0, 0.0) == "too_large"


def test_check_threshold_schedule_validation():
    with pytest.raises(ValueError):
        check_threshold_schedule(1, 0.5, 1.0, 1.0)
    with pytest.raises(ValueError):
        check_threshold_schedule(100, 0.5, 1.0, 2.5)


# ---------------------------------------------------------------------------
# threshold_decompose
# ---------------------------------------------------------------------------

def test_threshold_keeps_everything_below_large_cutoff():
    x = seq([0.5, -1.0, 0.25])
    result = threshold_decompose(x, 2.0, 10.0)
    assert np.array_equal(result.w_approx.values, path_of(seq(x.deltas / 2.0)).values)
    assert result.kept_mask.all()


def test_threshold_filters_everything_below_min():
    x = seq([0.5, -1.0, 0.25])
    result = threshold_decompose(x, 1.0, 0.1)
    assert np.array_equal(result.w_approx.values, np.zeros(4))
    assert not result.kept_mask.any()


def test_threshold_hand_example():
    result = threshold_decompose(seq([0.1, -2.0, 0.05]), 1.0, 0.5)
    assert np.allclose(result.w_approx.values, [0.0, 0.1, 0.1, 0.15], atol=1e-15)
    assert np.array_equal(result.kept_mask, [True, False, True])


def test_threshold_boundary_is_kept():
    result = threshold_decompose(seq([0.5, 0.6]), 1.0, 0.5)
    assert np.array_equal(result.kept_mask, [True, False])


def test_threshold_rejects_bad_sigma_and_cutoff():
    with pytest.raises(ValueError):
        threshold_decompose(seq([1.0]), 0.0, 0.5)
    with pytest.raises(ValueError):
        threshold_decompose(seq([1.0]), 1.0, 0.0)


@given(finite_increments, st.floats(min_value=1e-3, max_value=1e3), st.floats(min_value=0.1, max_value=10))
@settings(max_examples=150, deadline=None)
def test_threshold_mask_definition(xs, sigma, a_n):
    x = seq(xs)
    result = threshold_decompose(x, sigma, a_n)
    assert np.array_equal(result.kept_mask, np.abs(x.deltas) <= a_n)
    expected = np.where(result.kept_mask, x.deltas / sigma, 0.0)
    assert np.array_equal(result.w_approx.values[1:], np.cumsum(expected))


def test_threshold_piecewise_constant_in_cutoff():
    rng = np.random.default_rng(8)
    x = seq(rng.standard_normal(12))
    magnitudes = np.sort(np.abs(x.deltas))
    # within a gap between consecutive breakpoints the output is constant
    for lo, hi in zip(magnitudes[:-1], magnitudes[1:]):
        if hi <= lo:
            continue
        a, b = (2 * lo + hi) / 3, (lo + 2 * hi) / 3
        if a == lo or b == hi or a == b:
            continue
        out_a = threshold_decompose(x, 1.0, a)
        out_b = threshold_decompose(x, 1.0, b)
        assert np.array_equal(out_a.kept_mask, out_b.kept_mask)
        assert np.array_equal(out_a.w_approx.values, out_b.w_approx.values)
    # crossing a breakpoint flips exactly the increments at that magnitude
    pivot = magnitudes[5]
    below = threshold_decompose(x, 1.0, np.nextafter(pivot, 0.0))
    at = threshold_decompose(x, 1.0, pivot)
    flipped = np.nonzero(below.kept_mask != at.kept_mask)[0]
    assert len(flipped) >= 1
    assert all(abs(x.deltas[i]) == pivot for i in flipped)


# ---------------------------------------------------------------------------
# recover_signal / recover_with_drift
# ---------------------------------------------------------------------------

def test_recover_signal_zero_bridge_returns_input():
    x = path_of(seq([1.0, -0.5, 0.25]))
    zero_bridge = GridPath(3, np.zeros(4))
    assert np.array_equal(recover_signal(x, 2.0, zero_bridge).values, x.values)


def test_recover_signal_endpoint_identity():
    rng = np.random.default_rng(5)
    x = path_of(seq(rng.standard_normal(32)))
    bridge = bridge_of(path_of(seq(rng.standard_normal(32))))
    recovered = recover_signal(x, 1.7, bridge)
    assert recovered.values[-1] == x.values[-1]


def test_recover_signal_hand_example():
    x = GridPath(2, np.array([0.0, 1.0, 2.0]))
    bridge = GridPath(2, np.array([0.0, 0.5, 0.0]))
    assert np.array_equal(recover_signal(x, 1.0, bridge).values, np.array([0.0, 0.5, 2.0]))


def test_recover_signal_validation():
    x = GridPath(2, np.array([0.0, 1.0, 2.0]))
    with pytest.raises(ValueError):
        recover_signal(x, 1.0, GridPath(4, np.zeros(5)))
    with pytest.raises(ValueError):
        recover_signal(x, 1.0, GridPath(2, np.array([0.0, 0.5, 0.25])))


def test_recover_with_drift_is_uncompensated_threshold_path():
    rng = np.random.default_rng(6)
    x = seq(rng.standard_normal(16))
    assert np.array_equal(
        recover_with_drift(x, 1.5, 0.7).values,
        threshold_decompose(x, 1.5, 0.7).w_approx.values,
    )


def test_recover_with_drift_exact_for_pure_brownian():
    w = sample_gaussian_increments(256, RngStream(7, 0))
    x = seq(2.0 * w.deltas)  # sigma = 2, no jumps
    recovered = recover_with_drift(x, 2.0, 1e9)
    assert np.array_equal(recovered.values, path_of(w).values)


def test_recover_with_drift_tracks_brownian_endpoint_under_jumps():
    hits = 0
    for rep in range(100):
        stream = RngStream(31, rep)
        w = sample_gaussian_increments(100_000, stream.child(rep, "w"))
        jumps, _ = sample_compound_poisson(
            100_000, 3.0, FixedSign(1.0), stream.child(rep, "y")
        )
        x = compose(1.0, w, jumps)
        recovered = recover_with_drift(x, 1.0, default_threshold(100_000))
        if abs(recovered.values[-1] - path_of(w).values[-1]) < 0.1:
            hits += 1
    assert hits >= 95


# ---------------------------------------------------------------------------
# multivariate_reorder
# ---------------------------------------------------------------------------

def test_multivariate_single_component_matches_univariate():
    rng = np.random.default_rng(9)
    x, w = seq(rng.standard_normal(8)), seq(rng.standard_normal(8))
    [multi] = multivariate_reorder([x], w)
    single = reorder_decompose(x, w)
    assert np.array_equal(multi.w_approx.values, single.w_approx.values)
    assert np.array_equal(multi.permutation, single.permutation)


def test_multivariate_identical_components_identical_outputs():
    rng = np.random.default_rng(10)
    x, w = seq(rng.standard_normal(8)), seq(rng.standard_normal(8))
    a, b = multivariate_reorder([x, x], w)
    assert np.array_equal(a.w_approx.values, b.w_approx.values)


def test_multivariate_rejects_length_mismatch():
    with pytest.raises(ValueError):
        multivariate_reorder([seq([1.0, 2.0])], seq([1.0, 2.0, 3.0]))


def test_multivariate_output_correlation_tracks_input_rank_correlation():
    # with a shared independent walk, the output components' increment
    # correlation follows the rank correlation of the inputs
    n, reps = 256, 100
    in_rank_corr, out_corr = [], []
    for rep in range(reps):
        g = RngStream(32, rep).generator()
        x1 = g.standard_normal(n)
        x2 = g.standard_normal(n)
        w = g.standard_normal(n)
        res1, res2 = multivariate_reorder([seq(x1), seq(x2)], seq(w))
        for res, x in ((res1, x1), (res2, x2)):
            out = w[res.permutation]
            assert np.array_equal(np.sort(out), np.sort(w))
            assert np.array_equal(np.argsort(out), np.argsort(x))
        r1, r2 = np.argsort(np.argsort(x1)), np.argsort(np.argsort(x2))
        in_rank_corr.append(np.corrcoef(r1, r2)[0, 1])
        out_corr.append(np.corrcoef(np.diff(res1.w_approx.values), np.diff(res2.w_approx.values))[0, 1])
    in_rank_corr, out_corr = np.array(in_rank_corr), np.array(out_corr)
    assert np.corrcoef(in_rank_corr, out_corr)[0, 1] > 0.8
    assert np.mean(np.sign(in_rank_corr) == np.sign(out_corr)) >= 0.75


# ---------------------------------------------------------------------------
# ordered-sequence displacement bound (driving inequality of the reordering)
# ---------------------------------------------------------------------------

def displacement_bound_holds(z, y, q):
    """LHS sum |z_i - z_nu(i)|^q vs 2^q sum(|y_i|^q ^ m^q) for the sorting nu."""
    z = np.sort(z)
    order = np.argsort(z + y, kind="stable")
    nu = np.empty(len(z), dtype=int)
    nu[order] = np.arange(len(z))
    lhs = np.sum(np.abs(z - z[nu]) ** q)
    m = z[-1] - z[0]
    rhs = 2.0**q * np.sum(np.minimum(np.abs(y) ** q, m**q))
    return lhs <= rhs, order


def test_displacement_bound_small_cases_brute_force():
    rng = np.random.default_rng(12)
    for _ in range(200):
        n = rng.integers(2, 6)
        z = np.sort(rng.standard_normal(n))
        y = rng.standard_normal(n) * rng.choice([0.1, 1.0, 10.0])
        ok, order = displacement_bound_holds(z, y, q=2)
        assert ok
        # cross-check: the argsort inverse really sorts z + y
        w = (z + y)[order]
        assert np.all(np.diff(w) >= 0)
        found = any(
            all(np.diff((z + y)[list(perm)]) >= 0) for perm in itertools.permutations(range(n))
        )
        assert found


@pytest.mark.parametrize("q", [1, 2])
def test_displacement_bound_random_instances(q):
    rng = np.random.default_rng(13 + q)
    for _ in range(2000):
        n = int(rng.integers(2, 13))
        z = rng.standard_normal(n)
        y = rng.standard_normal(n) * float(rng.choice([0.01, 0.3, 1.0, 3.0, 100.0]))
        ok, _ = displacement_bound_holds(z, y, q)
        assert ok
