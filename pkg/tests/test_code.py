import numpy as np
import pytest

from multcode import code as K
from multcode import instrument
from multcode import oracle as O


def test_params_examples():
    p = K.code_params(2, 1, 2, 2)
    assert (p.k, p.sigma, p.length, p.rate) == (3, 2, 2, 0.75)
    rm = K.code_params(16, 2, 1, 15)
    assert (rm.k, rm.sigma, rm.length) == (136, 1, 256)
    assert p.designed_distance == pytest.approx((1 - 2 / 4) * 2)
    with pytest.raises(K.ParameterError):
        K.code_params(2, 1, 1, 2)
    with pytest.raises(K.ParameterError):
        K.code_params(2, 0, 1, 0)
    with pytest.raises(K.ParameterError):
        K.code_params(2, 1, 0, 0)


def test_layout_examples():
    p = K.code_params(2, 1, 2, 3)
    assert K.seg_to_blocks(p, [10, 11, 12, 13]).tolist() == [[10, 12], [11, 13]]
    rm = K.code_params(3, 2, 1, 2)
    v = np.arange(9)
    assert K.seg_to_blocks(rm, v).ravel().tolist() == v.tolist()


@pytest.mark.parametrize("q,n,s", [(2, 1, 2), (3, 2, 2), (4, 3, 2), (5, 2, 3)])
def test_layout_round_trip(q, n, s, rng):
    p = K.code_params(q, n, s, 0)
    v = rng.integers(0, q, (2, p.N))
    assert np.array_equal(K.blocks_to_seg(p, K.seg_to_blocks(p, v)), v)
    with pytest.raises(K.LayoutError):
        K.seg_to_blocks(p, v[:, 1:])


def test_worked_example():
    p = K.code_params(2, 1, 2, 2)
    for cw in (K.encode_low_rate(p, [1, 0, 1]), K.encode_low_rate(p, [1, 0, 1], False), K.encode_high_rate(p, [1, 0, 1])):
        assert cw.tolist() == [[1, 1], [0, 1]]
    assert K.extract_message(p, [[1, 1], [0, 1]]).tolist() == [1, 0, 1]
    assert not K.extract_message(p, np.zeros((2, 2))).any()


@pytest.mark.parametrize("algo", ["low", "high"])
def test_zero_message(algo):
    p = K.code_params(3, 2, 2, 5)
    assert not K.encode(p, np.zeros(p.k, dtype=int), algo).any()


def test_cross_encoder_agreement(rng):
    p = K.code_params(3, 2, 2, 5)
    assert p.rate_fraction == K.Fraction(21, 27)
    m = rng.integers(0, 3, (100, p.k))
    assert np.array_equal(K.encode_low_rate(p, m), K.encode_high_rate(p, m))


@pytest.mark.parametrize("q,n,s,d", [(2, 2, 2, 3), (4, 2, 2, 5), (3, 3, 2, 4), (5, 1, 3, 9), (8, 2, 1, 4)])
def test_oracle_encoding(q, n, s, d, rng):
    p = K.code_params(q, n, s, d)
    m = rng.integers(0, q, (3, p.k))
    want = O.naive_encode_many(p.F, n, s, d, m)
    for algo in ("low", "high"):
        got = K.encode(p, m, algo)
        assert np.array_equal(got, want)
        assert np.array_equal(K.extract_message(p, got), m)
    pos = K.systematic_positions(p)
    assert np.array_equal(want[:, pos[:, 0], pos[:, 1]], m)


def test_linearity(rng):
    p = K.code_params(7, 2, 2, 9)
    F = p.F
    m1, m2 = rng.integers(0, 7, (2, p.k))
    a = 3
    lhs = K.encode(p, F.add(F.mul(a, m1), m2))
    rhs = F.add(F.mul(a, K.encode(p, m1)), K.encode(p, m2))
    assert np.array_equal(lhs, rhs)


def test_auto_dispatch():
    high = K.code_params(2, 1, 2, 2)
    low = K.code_params(16, 2, 2, 5)
    assert low.rate < 0.1
    with instrument.counting() as t:
        K.encode(high, [1, 0, 1])
    assert t.events["encode_high"] == 1 and t.events["encode_low"] == 0
    with instrument.counting() as t:
        K.encode(low, np.zeros(low.k, dtype=int))
    assert t.events["encode_low"] == 1 and t.events["encode_high"] == 0
    assert K.choose_algo(high, threshold=0.9) == "low"
    with pytest.raises(ValueError):
        K.encode(high, [1, 0, 1], "fast")


def test_message_validation():
    p = K.code_params(3, 1, 2, 3)
    with pytest.raises(K.LayoutError):
        K.encode(p, [0, 1, 2])
    with pytest.raises(K.LayoutError):
        K.encode(p, [0, 1, 2, 3])


def test_internal_vector_holds_newton_coefficients(rng):
    from multcode import hermite_multi as HM
    from multcode import segments as S

    p = K.code_params(3, 2, 2, 4)
    m = rng.integers(0, 3, p.k)
    X = K.high_rate_internal(p, m)
    assert np.array_equal(X[: p.k], HM.interp_array(p.F, S.simplex(4, 2), m))
    assert np.array_equal(K.seg_to_blocks(p, np.concatenate([m, X[p.k :]])), K.encode_low_rate(p, m))


@pytest.mark.parametrize("q,n,s,d", [(4, 2, 2, 5), (5, 1, 3, 11), (3, 2, 3, 7)])
def test_distance_spot_check(q, n, s, d, rng):
    p = K.code_params(q, n, s, d)
    m = rng.integers(0, q, (100, p.k))
    m[~m.any(axis=1), 0] = 1
    assert np.all(K.nonzero_blocks(K.encode(p, m)) >= p.min_nonzero_blocks)
