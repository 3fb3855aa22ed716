import numpy as np
import pytest

from multcode import hermite_multi as HM
from multcode import hermite_uni as HU
from multcode import oracle as O
from multcode import segments as S
from multcode.field import GF

METHODS = ["blocked", "tree"]


def oracle_check(F, seg, rng, npoly=4, method=None):
    polys = [O.random_poly(F, seg.members, rng) for _ in range(npoly)]
    ref = O.naive_E_values(F, polys, seg.members)
    mono = np.zeros((npoly, seg.size), dtype=np.int64)
    for r, f in enumerate(polys):
        idx, c = f.arrays()
        mono[r, seg.rank_many(idx)] = c
    newton = HM.to_newton_array(F, seg, mono)
    assert np.array_equal(HM.eval_array(F, seg, newton, method=method), ref)
    assert np.array_equal(HM.interp_array(F, seg, ref, method=method), newton)
    assert np.array_equal(HM.to_monomial_array(F, seg, newton), mono)


def test_product_example():
    F = GF.get(2)
    v = HM.SegVector(F, S.deriv(1, 2, 2), [0, 0, 0, 1])
    out = HM.multi_hermite_eval(v)
    assert out.data.tolist() == [0, 0, 0, 1] and out.meaning == HM.E_VALUES
    assert HM.multi_hermite_interp(out).data.tolist() == [0, 0, 0, 1]
    z = HM.SegVector(F, S.deriv(2, 2, 2), np.zeros(12))
    assert not HM.multi_hermite_eval(z).data.any()
    assert not HM.multi_hermite_interp(z).data.any()


def test_univariate_degenerate(rng):
    F = GF.get(5)
    seg = S.interval(17)
    A = rng.integers(0, 5, (3, 17))
    assert np.array_equal(HM.eval_array(F, seg, A), HU.eval_rows(F, A))
    assert np.array_equal(HM.interp_array(F, seg, A), HU.interp_rows(F, A))


@pytest.mark.parametrize("method", METHODS)
def test_against_oracle(method, rng):
    for q, seg in [
        (3, S.simplex(2, 2)),
        (3, S.simplex(5, 2)),
        (2, S.deriv(3, 2, 2)),
        (4, S.deriv(2, 2, 4)),
        (3, S.deriv(2, 3, 3)),
        (5, S.box((7, 3))),
        (7, S.general([(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (0, 7), (0, 8)], 2)),
        (2, S.simplex(4, 4)),
    ]:
        oracle_check(GF.get(q), seg, rng, method=method)


def test_round_trip(rng):
    F = GF.get(3)
    seg = S.simplex(3, 2)
    v = rng.integers(0, 3, (5, seg.size))
    assert np.array_equal(HM.eval_array(F, seg, HM.interp_array(F, seg, v)), v)


def test_batch_dimensions(rng):
    F = GF.get(4)
    seg = S.deriv(2, 2, 4)
    X = rng.integers(0, 4, (2, 3, seg.size))
    got = HM.eval_array(F, seg, X)
    assert got.shape == X.shape
    assert np.array_equal(got[1, 2], HM.eval_array(F, seg, X[1, 2]))
    with pytest.raises(HM.SweepError):
        HM.eval_array(F, seg, X[..., :-1])


@pytest.mark.parametrize("q,n,s,d", [(2, 2, 2, 2), (3, 2, 2, 4), (4, 3, 2, 5), (5, 2, 3, 0)])
def test_support_bound(q, n, s, d, rng, monkeypatch):
    F = GF.get(q)
    C = S.deriv(s, n, q)
    I = S.simplex(d, n)
    X = np.zeros((3, C.size), dtype=np.int64)
    X[:, C.rank_many(I.members)] = rng.integers(0, q, (3, I.size))
    full = HM.eval_array(F, C, X)
    monkeypatch.setattr(HM, "DEBUG", True)
    assert np.array_equal(HM.eval_array(F, C, X, support_bound=d), full)
    bad = X.copy()
    bad[:, -1] = 1
    with pytest.raises(HM.SweepError):
        HM.eval_array(F, C, bad, support_bound=d)


@pytest.mark.parametrize("q,n,s,d", [(2, 2, 2, 2), (3, 2, 2, 3), (3, 3, 2, 4), (4, 2, 3, 6)])
def test_residual_zero_persistence(q, n, s, d, rng):
    # coefficients supported on R keep the I_{d,n} entries zero after every sweep
    F = GF.get(q)
    C = S.deriv(s, n, q)
    R = S.residual_set(d, s, n, q)
    X = np.zeros((3, C.size), dtype=np.int64)
    X[:, R.c_index] = rng.integers(0, q, (3, R.size))
    low = ~R.mask
    seen = []

    def check(ax, Y):
        seen.append(ax)
        assert not Y[:, low].any()

    HM.eval_array(F, C, X, on_sweep=check)
    assert seen == list(range(1, n + 1))


@pytest.mark.parametrize("method", METHODS)
@pytest.mark.parametrize("q,n,s", [(2, 2, 2), (3, 2, 2), (4, 2, 3), (3, 3, 2), (2, 3, 3), (5, 2, 1)])
def test_eval_R_cross_path(q, n, s, method, rng):
    F = GF.get(q)
    C = S.deriv(s, n, q)
    for d in range(0, s * q):
        R = S.residual_set(d, s, n, q)
        v = rng.integers(0, q, (2, R.size))
        full = np.zeros((2, C.size), dtype=np.int64)
        full[:, R.c_index] = v
        want = HM.eval_array(F, C, full, method=method)[:, R.c_index]
        got = HM.multi_hermite_eval_R(d, s, HM.SegVector(F, R, v), method=method)
        assert np.array_equal(got.data, want), d


def test_eval_R_errors():
    F = GF.get(2)
    R = S.residual_set(2, 2, 2, 2)
    v = HM.SegVector(F, R, np.zeros(R.size))
    assert not HM.multi_hermite_eval_R(2, 2, v).data.any()
    with pytest.raises(HM.SweepError):
        HM.multi_hermite_eval_R(3, 2, v)
    with pytest.raises(HM.SweepError):
        HM.multi_hermite_eval_R(2, 2, HM.SegVector(F, S.deriv(2, 2, 2), np.zeros(12)))
    R1 = S.residual_set(2, 2, 1, 2)
    with pytest.raises(HM.SweepError):
        HM.multi_hermite_eval_R(2, 2, HM.SegVector(F, R1, np.zeros(R1.size)))


def test_fused_axis_one_basis(rng):
    F = GF.get(7)
    I = S.simplex(9, 2)
    C = S.deriv(2, 2, 7)
    v = rng.integers(0, 7, (2, I.size))
    mixed = HM.interp_array(F, I, v, basis_out=HM.MONOMIAL)
    plain = HM.interp_array(F, I, v)
    X1 = np.zeros((2, C.size), dtype=np.int64)
    X2 = np.zeros((2, C.size), dtype=np.int64)
    X1[:, : I.size] = mixed
    X2[:, : I.size] = plain
    a = HM.eval_array(F, C, X1, support_bound=9, basis_in=HM.MONOMIAL)
    b = HM.eval_array(F, C, X2, support_bound=9)
    assert np.array_equal(a, b)
    assert np.array_equal(a[:, : I.size], v)
