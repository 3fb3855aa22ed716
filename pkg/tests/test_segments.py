import itertools

import numpy as np
import pytest

from multcode import segments as S


def test_rank_examples():
    C = S.deriv(2, 2, 2)
    assert C.size == 12
    assert C.rank((1, 1)) == 4
    I = S.simplex(2, 2)
    assert I.rank((2, 0)) == 5
    assert [tuple(x) for x in I.members] == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]
    for seg in (C, I, S.box((3, 4)), S.interval(5)):
        assert seg.rank((0,) * seg.n) == 0


def test_projection_examples():
    assert S.simplex(2, 2).project_pi(1) == S.simplex(2, 1)
    assert S.deriv(2, 2, 2).project_pi(2) == S.deriv(2, 1, 2)
    assert S.interval(5).project_pi(1).size == 1


def test_fiber_examples():
    I = S.simplex(2, 2)
    C = S.deriv(2, 2, 2)
    assert I.fiber_mu(1, (1,)).size == 2
    assert C.fiber_mu(1, (2,)).size == 2
    assert C.fiber_mu(1, (0,)).size == 4
    assert C.fiber_flat_indices(2, (0,)).tolist() == [0, 1, 3, 6]
    assert I.fiber_flat_indices(1, (2,)).tolist() == [3]
    assert S.interval(6).fiber_flat_indices(1, ()).tolist() == list(range(6))


def test_rejects_bad_queries():
    I = S.simplex(2, 2)
    with pytest.raises(S.SegmentError):
        I.fiber_mu(1, (3,))
    with pytest.raises(S.SegmentError):
        I.rank((3, 0))
    with pytest.raises(S.SegmentError):
        S.general([(1, 0)], 2)


def brute(kind, n, a, q=None):
    if kind == "simplex":
        pts = [x for x in itertools.product(range(a + 1), repeat=n) if sum(x) <= a]
    else:
        pts = [x for x in itertools.product(range(a * q), repeat=n) if sum(v // q for v in x) < a]
    return sorted(pts, key=lambda x: (sum(x), x))


CASES = [("simplex", n, d, None) for n in (1, 2, 3, 4) for d in (0, 1, 4, 9)]
CASES += [("deriv", n, s, q) for n in (1, 2, 3) for s in (1, 2, 3) for q in (2, 3, 5)]


def make(kind, n, a, q):
    return S.simplex(a, n) if kind == "simplex" else S.deriv(a, n, q)


@pytest.mark.parametrize("kind,n,a,q", CASES)
def test_segment_structure(kind, n, a, q):
    seg = make(kind, n, a, q)
    ref = brute(kind, n, a, q)
    assert [tuple(x) for x in seg.members] == ref
    assert seg.is_downward_closed()
    for r, pt in enumerate(ref):
        assert seg.rank(pt) == r
        assert seg.unrank(r) == pt
    assert np.array_equal(seg.rank_many(np.array(ref).reshape(-1, n)), np.arange(len(ref)))
    for ax in range(1, n + 1):
        total = 0
        seen = np.zeros(seg.size, dtype=int)
        for L, grp in seg.fibers(ax).items():
            assert grp.idx.shape[1] == L
            total += grp.idx.size
            seen[grp.idx.ravel()] += 1
            for key, row in zip(grp.keys, grp.idx):
                assert np.array_equal(seg.fiber_flat_indices(ax, key), row)
        assert total == seg.size
        assert np.all(seen == 1)
        assert seg.project_pi(ax).size == sum(g.idx.shape[0] for g in seg.fibers(ax).values())


def test_box_and_general():
    B = S.box((2, 3, 2))
    assert B.size == 12 and B.is_downward_closed()
    for r in range(B.size):
        assert B.rank(B.unrank(r)) == r
    G = S.general([(0, 0), (1, 0), (0, 1), (2, 0)], 2)
    assert G.rank((2, 0)) == 3
    assert G.fiber_mu(1, (0,)).size == 3
    assert G.project_pi(1).size == 2


def test_lam_rho():
    I = S.simplex(3, 3)
    assert I.lam((1,)).size == S.simplex(2, 2).size
    assert I.rho((1, 1)).size == 2


@pytest.mark.parametrize("d,s,n,q", [(2, 2, 2, 2), (0, 1, 2, 3), (5, 2, 2, 3), (5, 2, 3, 3), (8, 3, 2, 3)])
def test_residual_set(d, s, n, q):
    R = S.residual_set(d, s, n, q)
    C = S.deriv(s, n, q)
    assert R.size == C.size - S.simplex(d, n).size
    assert np.all(np.diff(R.c_index) > 0)
    for r in range(R.size):
        pt = R.unrank(r)
        assert sum(pt) > d and pt in C and R.rank(pt) == r
