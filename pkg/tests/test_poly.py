import numpy as np
import pytest

from multcode import poly as P
from multcode.field import GF, FieldError
from multcode.poly import DensePoly

GRID = [2, 3, 4, 5, 7, 8, 9, 13, 16]


def school(F, a, b):
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(int(x), int(y)))
    return out


def horner(F, c, x):
    acc = 0
    for v in c[::-1]:
        acc = F.add(F.mul(acc, x), int(v))
    return acc


def trim(a):
    a = np.asarray(a)
    nz = np.flatnonzero(a)
    return a[: nz[-1] + 1] if nz.size else a[:0]


def test_mul_examples():
    F2, F3 = GF.get(2), GF.get(3)
    assert trim(P.mul(F2, [1, 1], [1, 1])).tolist() == [1, 0, 1]
    assert trim(P.mul(F3, [0, 2, 1], [1, 1])).tolist() == [0, 2, 0, 1]
    assert not P.mul(F3, [1, 2, 1], [0]).any()
    f = DensePoly(F2, [1, 1])
    assert P.poly_mul(f, f) == DensePoly(F2, [1, 0, 1])


@pytest.mark.parametrize("q", [2, 5, 16, 256])
@pytest.mark.parametrize("n", [1, 7, 33, 100, 513])
def test_mul_matches_schoolbook(q, n, rng):
    F = GF.get(q)
    a = rng.integers(0, q, n)
    b = rng.integers(0, q, max(1, n // 2 + 3))
    got = P.mul(F, a, b)
    assert np.array_equal(trim(got), trim(school(F, a, b)))


def test_mul_rows_batch(rng):
    F = GF.get(7)
    A = rng.integers(0, 7, (5, 40))
    B = rng.integers(0, 7, (5, 40))
    got = P.mul_rows(F, A, B)
    for r in range(5):
        assert np.array_equal(trim(got[r]), trim(school(F, A[r], B[r])))


def test_taylor_shift_examples():
    F2, F5 = GF.get(2), GF.get(5)
    assert P.poly_taylor_shift(DensePoly(F2, [0, 1, 1]), 1) == DensePoly(F2, [0, 1, 1])
    assert P.poly_taylor_shift(DensePoly(F5, [0, 0, 1]), 2) == DensePoly(F5, [4, 4, 1])
    f = DensePoly(F5, [3, 1, 4, 1])
    assert P.poly_taylor_shift(f, 0) == f


@pytest.mark.parametrize("q", GRID)
def test_taylor_shift_properties(q, rng):
    F = GF.get(q)
    for n in (1, 3, 16, 17, 50):
        f = rng.integers(0, q, n)
        for a in range(q):
            g = P.taylor_shift(F, f, a)
            assert np.array_equal(P.taylor_shift(F, g, F.negate(a)), f)
            for x in range(q):
                assert horner(F, g, x) == horner(F, f, F.add(x, a))


def test_basis_conversion_examples():
    F2, F3 = GF.get(2), GF.get(3)
    assert P.monomial_to_newton(DensePoly(F2, [0, 0, 1]), 3).coeffs.tolist() == [0, 1, 1]
    assert P.monomial_to_newton(DensePoly(F3, [0, 0, 1]), 3).coeffs.tolist() == [0, 1, 1]
    assert P.monomial_to_newton(DensePoly(F3, [2]), 4).coeffs.tolist() == [2, 0, 0, 0]
    got = P.newton_to_monomial(DensePoly(F2, [0, 0, 0, 1], P.NEWTON))
    assert got == DensePoly(F2, [0, 0, 1, 1])
    assert P.newton_to_monomial(DensePoly(F2, [1], P.NEWTON)) == DensePoly(F2, [1])
    with pytest.raises(FieldError):
        P.monomial_to_newton(DensePoly(F2, [0, 0, 1]), 2)


@pytest.mark.parametrize("q", GRID)
def test_basis_round_trips(q, rng):
    F = GF.get(q)
    for L in range(1, 4 * q + 1, max(1, q // 2)):
        A = rng.integers(0, q, (3, L))
        assert np.array_equal(P.monomial_to_newton_rows(F, P.newton_to_monomial_rows(F, A)), A)
        assert np.array_equal(P.newton_to_monomial_rows(F, P.monomial_to_newton_rows(F, A)), A)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_newton_products(q):
    F = GF.get(q)
    Y = np.zeros(q + 1, dtype=np.int64)
    Y[q], Y[1] = 1, F.negate(1)
    Yr = np.array([1])
    for r in range(4):
        assert np.array_equal(trim(P.newton_poly(F, r * q)), trim(Yr))
        for i in range(2 * q):
            lhs = P.newton_poly(F, r * q + i)
            rhs = P.mul(F, P.newton_poly(F, r * q), P.newton_poly(F, i))
            assert np.array_equal(trim(lhs), trim(rhs))
        Yr = P.mul(F, Yr, Y)


def test_trunc_pow():
    F2, F3 = GF.get(2), GF.get(3)
    assert P.trunc_pow_qm1(F3, 0, 4).tolist() == [1, 0, 0, 0]
    assert P.trunc_pow_qm1(F3, 1, 1).tolist() == [2]
    assert P.trunc_pow_qm1(F2, 2, 3).tolist() == [1, 0, 1]


@pytest.mark.parametrize("q", [2, 3, 4, 7])
def test_trunc_pow_family(q):
    F = GF.get(q)
    base = np.zeros(q, dtype=np.int64)
    base[0], base[q - 1] = F.negate(1), 1
    full = np.array([1])
    fam = P.trunc_pow_family(F, 4, 6)
    for r in range(5):
        k = 6 - r
        if k >= 1:
            want = P.fit(full, k)[0]
            assert np.array_equal(P.trunc_pow_qm1(F, r, k), want)
            assert np.array_equal(fam[r], want)
        full = P.mul(F, full, base)


def test_subproduct_tree_examples():
    F2, F3 = GF.get(2), GF.get(3)
    assert trim(P.build_subproduct_tree(F2, [1, 1]).root.poly).tolist() == [0, 1, 1]
    t = P.build_subproduct_tree(F2, [1])
    assert t.root.is_leaf and trim(t.root.poly).tolist() == [0, 1]
    assert trim(P.build_subproduct_tree(F3, [2, 1, 0]).root.poly).tolist() == [0, 0, 2, 1]
    with pytest.raises(FieldError):
        P.build_subproduct_tree(F2, [0, 0])


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8])
def test_subproduct_tree_full_root(q):
    F = GF.get(q)
    Y = np.zeros(q + 1, dtype=np.int64)
    Y[q], Y[1] = 1, F.negate(1)
    Yr = np.array([1])
    for r in range(1, 4):
        Yr = P.mul(F, Yr, Y)
        assert np.array_equal(trim(P.build_subproduct_tree(F, [r] * q).root.poly), trim(Yr))


def test_remainders_and_combine(rng):
    F = GF.get(7)
    mults = [2, 0, 3, 1, 1, 0, 2]
    t = P.SubproductTree(F, mults)
    A = rng.integers(0, 7, (4, t.degree))
    parts = t.remainders(A)
    for leaf, R in zip(t.leaves(), parts):
        for r in range(4):
            _, want = P.divmod_rows(F, A[r : r + 1], leaf.poly)
            assert np.array_equal(trim(R[r]), trim(want[0]))


@pytest.mark.parametrize("q", [3, 16])
def test_division(q, rng):
    F = GF.get(q)
    for la, lb in ((10, 4), (200, 60), (300, 3)):
        A = rng.integers(0, q, (2, la))
        Bp = rng.integers(0, q, lb)
        Bp[-1] = 1
        Q, R = P.Divisor(F, Bp).divmod(A)
        back = P.fit(P.mul_rows(F, Q, np.tile(Bp, (2, 1))), la)
        back[:, : R.shape[1]] = F.add(back[:, : R.shape[1]], R)
        assert np.array_equal(P.fit(back, la), A)
        assert R.shape[1] <= lb - 1 or not R[:, lb - 1 :].any()


def test_series_inverse(rng):
    F = GF.get(13)
    a = rng.integers(0, 13, 30)
    a[0] = 5
    inv = P.series_inv(F, a, 30)
    prod = P.mul(F, a, inv)[:30]
    assert prod[0] == 1 and not prod[1:].any()
