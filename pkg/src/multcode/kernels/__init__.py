"""Kernel dispatch. ``MULTCODE_KERNELS=numpy`` selects the numpy fallback.

Every wrapper takes the field object first and updates the multiplication
counter in ``multcode.instrument``.
"""

import numpy as np

from .. import _config, instrument

if _config.USE_NUMBA:
    from . import _nb as impl
else:
    from . import _np as impl

BACKEND = "numba" if _config.USE_NUMBA else "numpy"
_threads = 1


def set_threads(n):
    """Use n threads for constant-matrix products (numba backend only)."""
    global _threads
    _threads = max(1, int(n))
    if _config.USE_NUMBA and _threads > 1:
        import numba

        if numba.config.THREADING_LAYER == "default":
            numba.config.THREADING_LAYER = "workqueue"  # always available, no TBB version check
        numba.set_num_threads(min(_threads, numba.config.NUMBA_NUM_THREADS))


def _arr(x):
    return np.ascontiguousarray(x, dtype=np.int64)


def vadd(F, a, b):
    a, b = np.broadcast_arrays(_arr(a), _arr(b))
    return impl.vadd(_arr(a), _arr(b), F.ft)


def vsub(F, a, b):
    a, b = np.broadcast_arrays(_arr(a), _arr(b))
    return impl.vsub(_arr(a), _arr(b), F.ft)


def vneg(F, a):
    return F.neg[_arr(a)]


def vmul(F, a, b):
    a, b = np.broadcast_arrays(_arr(a), _arr(b))
    instrument.add(a.size)
    return impl.vmul(_arr(a), _arr(b), F.ft)


def vsmul(F, c, a):
    c = int(c)
    a = _arr(a)
    if c == 0:
        return np.zeros_like(a)
    if c == 1:
        return a.copy()
    if c == F.neg[1]:
        return F.neg[a]
    instrument.add(a.size)
    return impl.vsmul(np.int64(c), a, F.ft)


class ConstMatrix:
    """A constant matrix over F_q prepared for repeated batched products."""

    def __init__(self, F, M):
        self.F = F
        self.M = _arr(M)
        self.logM = np.where(self.M == 0, -1, F.log[self.M]).astype(np.int64)
        self.nnz = int(np.count_nonzero(self.M))
        self.shape = self.M.shape

    def apply(self, X):
        """Rows of X (..., c) mapped to rows of M @ x, shape (..., r)."""
        X = _arr(X)
        lead = X.shape[:-1]
        X2 = X.reshape(-1, X.shape[-1])
        instrument.add(X2.shape[0] * self.nnz)
        if X2.shape[0] == 0:
            return np.zeros(lead + (self.shape[0],), dtype=np.int64)
        fn = impl.cmatmul_par if _threads > 1 else impl.cmatmul
        out = fn(X2, self.M, self.logM, self.F.ft)
        return out.reshape(lead + (self.shape[0],))


def cmatmul(F, X, M):
    return ConstMatrix(F, M).apply(X)


def pmul(F, A, B):
    """Row-wise polynomial products. A is (R, la); B is (lb,), (1, lb) or (R, lb)."""
    A = _arr(A)
    B = _arr(B)
    if A.ndim == 1:
        A = A[None, :]
    if B.ndim == 1:
        B = B[None, :]
    if A.shape[0] == 0:
        return np.zeros((0, max(A.shape[1] + B.shape[1] - 1, 0)), dtype=np.int64)
    out, cnt = impl.pmul(A, B, _config.KARATSUBA_THRESHOLD, F.ft)
    instrument.add(cnt)
    return out


def divmod_monic(F, A, P):
    """Row-wise long division of A (R, la) by the monic polynomial P."""
    A = _arr(A)
    P = _arr(P)
    if A.ndim == 1:
        A = A[None, :]
    nq = max(A.shape[1] - P.shape[0] + 1, 0)
    instrument.add(A.shape[0] * nq * int(np.count_nonzero(P[:-1])))
    return impl.divmod_monic(A, P, F.ft)


def hasse_accumulate(F, dst, src, terms):
    """In place: dst[r, t, k-u] += W[k] * src[r, i, k] for each term (t, i, u, W)."""
    tt, ii, uu, W, cost = terms
    if ii.shape[0] == 0 or dst.shape[0] == 0:
        return
    instrument.add(dst.shape[0] * cost)
    impl.hasse_accumulate(dst, src, tt, ii, uu, W, F.ft)


def yadic_split(F, A, qq, nb):
    """Rows of A written in base Y = X^qq - X as (R, nb, qq) blocks (additions only)."""
    return impl.yadic_split(_arr(A), int(qq), int(nb), F.ft)


def yadic_join(F, Cb, m):
    """Inverse of yadic_split, truncated to length m (additions only)."""
    return impl.yadic_join(_arr(Cb), int(m), F.ft)
