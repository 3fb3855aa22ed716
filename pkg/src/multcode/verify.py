"""Oracle verification suite shared by `multcode verify` and the acceptance tests.

Each check walks the parameter grid, compares a fast path against the
brute-force oracle and returns a CheckResult. Nothing here is tolerant:
every comparison is exact equality over the field.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import code as K
from . import hermite_multi as HM
from . import hermite_uni as HU
from . import oracle as O
from . import poly as P
from . import segments as S
from .field import GF

GRID_Q = (2, 3, 4, 5, 7, 8, 9, 13, 16)
GRID_N = (1, 2, 3)
GRID_S = (1, 2, 3)


@dataclass
class CheckResult:
    name: str
    passed: bool
    points: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        extra = f" first failure: {self.failures[0]}" if self.failures else ""
        return f"{status}  {self.name}  ({self.points} cases, {self.seconds:.1f}s){extra}"


def grid(max_size=5000, qs=GRID_Q, ns=GRID_N, ss=GRID_S):
    """(q, n, s, d) with d in {0, sq div 2, sq - 1} and |C_{s,n}| <= max_size."""
    for q in qs:
        for n in ns:
            for s in ss:
                if comb(n + s - 1, n) * q**n > max_size:
                    continue
                for d in sorted({0, (s * q) // 2, s * q - 1}):
                    yield q, n, s, d


class _Runner:
    def __init__(self, name):
        self.res = CheckResult(name, True)
        self.t0 = time.perf_counter()

    def case(self, ok, label):
        self.res.points += 1
        if not ok:
            self.res.passed = False
            self.res.failures.append(label)

    def done(self):
        self.res.seconds = time.perf_counter() - self.t0
        return self.res


def _mono_dense(seg, polys):
    X = np.zeros((len(polys), seg.size), dtype=np.int64)
    for r, f in enumerate(polys):
        idx, c = f.arrays()
        if c.size:
            X[r, seg.rank_many(idx)] = c
    return X


def check_hermite(max_size=5000, npoly=20, seed=0, method=None):
    """Fast multivariate evaluation equals the oracle and interpolation inverts it."""
    run = _Runner("hermite eval/interp vs oracle")
    rng = np.random.default_rng(seed)
    for q, n, s, d in grid(max_size):
        F = GF.get(q)
        segs = [S.simplex(d, n)]
        if d == 0:
            segs.append(S.deriv(s, n, q))  # each C_{s,n} once per (q, n, s)
        for seg in segs:
            polys = [O.random_poly(F, seg.members, rng) for _ in range(npoly)]
            ref = O.naive_E_values(F, polys, seg.members)
            mono = _mono_dense(seg, polys)
            newton = HM.to_newton_array(F, seg, mono)
            ev = HM.eval_array(F, seg, newton, method=method)
            back = HM.interp_array(F, seg, ref, method=method)
            ok = np.array_equal(ev, ref) and np.array_equal(back, newton)
            ok = ok and np.array_equal(HM.to_monomial_array(F, seg, back), mono)
            run.case(ok, (q, n, s, d, seg.kind))
    return run.done()


def check_encoders(max_size=5000, nmsg=5, seed=1, infoset_max=2000, oracle_max_k=2000):
    """Both encoders equal the oracle encoder and are systematic; information sets are nonsingular."""
    run = _Runner("encoders vs oracle, systematic, information set")
    rng = np.random.default_rng(seed)
    for q, n, s, d in grid(max_size):
        p = K.code_params(q, n, s, d)
        m = rng.integers(0, q, (nmsg, p.k))
        lo = K.encode_low_rate(p, m)
        lo2 = K.encode_low_rate(p, m, fuse_conversions=False)
        hi = K.encode_high_rate(p, m)
        ok = np.array_equal(lo, hi) and np.array_equal(lo, lo2)
        ok = ok and np.array_equal(K.extract_message(p, lo), m)
        if p.k <= oracle_max_k:
            ok = ok and np.array_equal(O.naive_encode_many(p.F, n, s, d, m), lo)
        if p.k <= infoset_max:
            ok = ok and O.info_set_matrix_check(p.F, n, s, d)
        run.case(ok, (q, n, s, d))
    return run.done()


def check_residual(max_size=5000, nvec=5, seed=2, method=None):
    """Residual evaluation equals full evaluation restricted to R_{d,s,n}."""
    run = _Runner("residual evaluation vs full evaluation")
    rng = np.random.default_rng(seed)
    for q, n, s, d in grid(max_size):
        F = GF.get(q)
        C = S.deriv(s, n, q)
        R = S.residual_set(d, s, n, q)
        X = rng.integers(0, q, (nvec, R.size))
        full = np.zeros((nvec, C.size), dtype=np.int64)
        full[:, R.c_index] = X
        ref = HM.eval_array(F, C, full, method=method)[:, R.c_index]
        if n == 1:
            r = HU.residual_r(F, d)
            if R.size:
                U = P.trunc_pow_qm1(F, r, s - r)
                got = HU.eval_R_rows(F, X, d, s, U, method=method)
            else:
                got = X
        else:
            got = HM.multi_hermite_eval_R(d, s, HM.SegVector(F, R, X), method=method).data
        run.case(np.array_equal(got, ref), (q, n, s, d))
    # n = 1 with every d, covering r = 0 (d < q - 1) and r >= 1
    for q in (2, 3, 4, 5, 7, 8, 9):
        F = GF.get(q)
        for s in (1, 2, 3, 4):
            for d in range(-1, s * q - 1):
                L = s * q
                lo = max(d + 1, 0)
                X = rng.integers(0, q, (3, L - lo))
                full = np.zeros((3, L), dtype=np.int64)
                full[:, lo:] = X
                ref = HU.eval_rows(F, full, method=method)[:, lo:]
                got = HU.eval_R_rows(F, X, d, s, method=method)
                run.case(np.array_equal(got, ref), (q, 1, s, d))
    return run.done()


def check_newton_triangularity(qs=(2, 3, 4, 5), ns=(1, 2)):
    """E(N_i, j) = 0 unless i <= j componentwise, and E(N_j, j) != 0, over C_{2,n}."""
    run = _Runner("Newton basis triangularity")
    for q in qs:
        F = GF.get(q)
        for n in ns:
            pts = O.seg_points("deriv", n, 2, q)
            polys = [O.naive_newton(F, i) for i in pts]
            E = O.naive_E_values(F, polys, pts)  # E[i, j]
            P_ = np.array(pts)
            below = np.all(P_[:, None, :] <= P_[None, :, :], axis=2)
            ok = not np.any(E[~below]) and np.all(np.diag(E) != 0)
            run.case(bool(ok), (q, n))
    return run.done()


def check_distance(max_size=5000, ncw=100, seed=3):
    """Random nonzero codewords have at least ceil((1 - d/(sq)) q^n) nonzero blocks."""
    run = _Runner("designed distance")
    rng = np.random.default_rng(seed)
    for q, n, s, d in grid(max_size):
        p = K.code_params(q, n, s, d)
        m = rng.integers(0, q, (ncw, p.k))
        zero = ~m.any(axis=1)
        m[zero, rng.integers(0, p.k, zero.sum())] = 1
        c = K.encode(p, m)
        run.case(bool(np.all(K.nonzero_blocks(c) >= p.min_nonzero_blocks)), (q, n, s, d))
    return run.done()


def check_univariate(seed=4):
    """Taylor shift inverse pairs, basis-conversion round trips and N_{rq} = (X^q - X)^r."""
    run = _Runner("univariate kernels")
    rng = np.random.default_rng(seed)
    for q in GRID_Q:
        F = GF.get(q)
        for L in (1, 2, 5, 17, 40, 100):
            A = rng.integers(0, q, (4, L))
            a = int(rng.integers(0, q))
            back = P.taylor_shift_rows(F, P.taylor_shift_rows(F, A, a), int(F.negate(a)))
            run.case(np.array_equal(back, A), ("shift", q, L))
            nm = P.monomial_to_newton_rows(F, P.newton_to_monomial_rows(F, A))
            mn = P.newton_to_monomial_rows(F, P.monomial_to_newton_rows(F, A))
            run.case(np.array_equal(nm, A) and np.array_equal(mn, A), ("convert", q, L))
    for q in (2, 3, 4, 5):
        F = GF.get(q)
        Y = np.zeros(q + 1, dtype=np.int64)
        Y[q], Y[1] = 1, int(F.negate(1))
        for r in (1, 2, 3):
            Yr = np.array([1], dtype=np.int64)
            for _ in range(r):
                Yr = P.mul(F, Yr, Y)
            run.case(np.array_equal(P.newton_poly(F, r * q), Yr), ("N_rq", q, r))
    return run.done()


CHECKS = {
    "hermite": check_hermite,
    "encoders": check_encoders,
    "residual": check_residual,
    "triangularity": check_newton_triangularity,
    "distance": check_distance,
    "univariate": check_univariate,
}


def run_all(max_size=5000, names=None):
    out = []
    for name, fn in CHECKS.items():
        if names and name not in names:
            continue
        if name in ("triangularity", "univariate"):
            out.append(fn())
        else:
            out.append(fn(max_size=max_size))
    return out
