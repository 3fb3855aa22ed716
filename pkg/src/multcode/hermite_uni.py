"""Univariate Hermite evaluation and interpolation over [m].

Slot j of a value vector holds E(F, j) = coefficient of X^(j div q) in
F(X + alpha_(j mod q)). Two interchangeable methods are provided:

blocked
    Write F = sum_i G_i Y^i with Y = X^q - X and deg G_i < q. On the Newton
    basis G_i's coefficients are just block i of F's coefficients. Since
    Y(a + Z) = Z^q - Z for every a in F_q, the order-t layer of values is one
    polynomial B_t evaluated at all points, where B_t is a fixed combination
    of Hasse derivatives of the G_i with prime-field binomial weights. The
    cost is a few q x q constant-matrix products per block of q values.

tree
    Remainder tree over the leaves (X - alpha_j)^mult_j, Taylor shift of each
    residue, and CRT recombination for interpolation. Basis conversions use a
    divide-and-conquer pass over the Newton product tree.

``auto`` picks blocked for q <= 64 and tree otherwise.
"""

from __future__ import annotations

import functools
import os

import numpy as np

from . import kernels as K
from . import poly as P
from .field import GF

NEWTON = P.NEWTON
MONOMIAL = P.MONOMIAL

BLOCKED_MAX_Q = 64
METHOD = os.environ.get("MULTCODE_UNI_METHOD", "auto").strip().lower()


class HermiteError(ValueError):
    pass


def pick_method(F, method=None):
    method = (method or METHOD).lower()
    if method == "auto":
        return "blocked" if F.q <= BLOCKED_MAX_Q else "tree"
    if method not in ("blocked", "tree"):
        raise HermiteError(f"unknown method {method!r}")
    return method


def _rows(A):
    A = np.ascontiguousarray(A, dtype=np.int64)
    return A[None, :] if A.ndim == 1 else A


# -- small dense linear algebra over F_q (workspace setup only)


def mat_inv(F, M):
    """Gauss-Jordan inverse of a square matrix over F_q."""
    M = np.array(M, dtype=np.int64)
    n = M.shape[0]
    A = np.concatenate([M, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        piv = np.flatnonzero(A[c:, c])
        if piv.size == 0:
            raise HermiteError("singular matrix")
        r = c + piv[0]
        if r != c:
            A[[c, r]] = A[[r, c]]
        A[c] = F.mul(A[c], F.inv(int(A[c, c])))
        col = A[:, c].copy()
        col[c] = 0
        nz = np.flatnonzero(col)
        if nz.size:
            A[nz] = F.sub(A[nz], F.mul(col[nz][:, None], A[c][None, :]))
    return A[:, n:]


# -- blocked method


class BlockedWorkspace:
    """Constant matrices and Hasse transfer terms for one field."""

    def __init__(self, F: GF):
        self.F = F
        q = F.q
        nm = np.zeros((q, q), dtype=np.int64)
        for j in range(q):
            c = P.newton_poly(F, j)
            nm[: c.size, j] = c
        vm = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for k in range(q):
                vm[a, k] = F.pow(a, k)
        lm = np.zeros((q, q), dtype=np.int64)
        for j in range(q):
            c = P.newton_poly(F, j)
            for a in range(q):
                lm[a, j] = P.DensePoly(F, c)(a)
        self.NM = K.ConstMatrix(F, nm)  # Newton block -> monomial
        self.MN = K.ConstMatrix(F, mat_inv(F, nm))
        self.VM = K.ConstMatrix(F, vm)  # monomial -> values at all points
        self.VMinv = K.ConstMatrix(F, mat_inv(F, vm))
        self._lm = lm
        self._partial = {}
        self._terms = {}

    def partial(self, rho):
        """Matrices for a last block holding only rho points."""
        hit = self._partial.get(rho)
        if hit is None:
            F = self.F
            lm = self._lm[:rho, :rho]
            hit = (
                K.ConstMatrix(F, self.VM.M[:rho]),
                K.ConstMatrix(F, mat_inv(F, lm)),
                K.ConstMatrix(F, self.NM.M[:rho, :rho]),
            )
            self._partial[rho] = hit
        return hit

    def terms(self, t_lo, t_hi, strict, nb=None):
        """Hasse transfer terms for targets t in [t_lo, t_hi); sources i <= t (i < t when strict), i < nb."""
        key = (t_lo, t_hi, strict, nb)
        hit = self._terms.get(key)
        if hit is not None:
            return hit
        F = self.F
        p, q = F.p, F.q
        tt, ii, uu, Ws = [], [], [], []
        cost = 0
        ks = np.arange(q)
        for t in range(t_lo, t_hi):
            top = t if strict else t + 1
            if nb is not None:
                top = min(top, nb)
            for i in range(top):
                for c in range(i + 1):
                    u = t - i - c * (q - 1)
                    if u < 0:
                        break
                    if u >= q:
                        continue
                    coef = F.binom(i, c)
                    if (i - c) % 2:
                        coef = (-coef) % p
                    if coef == 0:
                        continue
                    W = np.zeros(q, dtype=np.int64)
                    for k in range(u, q):
                        W[k] = coef * F.binom(k, u) % p
                    tt.append(t)
                    ii.append(i)
                    uu.append(u)
                    Ws.append(W)
                    cost += int(np.count_nonzero((W != 0) & (W != 1) & (W != p - 1)))
        hit = (
            np.asarray(tt, dtype=np.int64),
            np.asarray(ii, dtype=np.int64),
            np.asarray(uu, dtype=np.int64),
            np.asarray(Ws, dtype=np.int64).reshape(-1, q),
            cost,
        )
        self._terms[key] = hit
        return hit


@functools.lru_cache(maxsize=None)
def blocked_workspace(F):
    return BlockedWorkspace(F)


def _blocks(A, q, nb):
    R, m = A.shape
    out = np.zeros((R, nb * q), dtype=np.int64)
    out[:, :m] = A
    return out.reshape(R, nb, q)


def _sign_rows(F, X, t):
    return F.neg[X] if t % 2 else X


def blocked_eval(F, A, basis_in=NEWTON, nz=None):
    """Rows of coefficients (length m) to Hermite values over [m]."""
    ws = blocked_workspace(F)
    q = F.q
    A = _rows(A)
    R, m = A.shape
    T, rho = divmod(m, q)
    nb = T + (rho > 0)
    nz = m if nz is None else max(0, min(nz, m))
    nzb = -(-nz // q)
    out = np.zeros((R, nb, q), dtype=np.int64)
    if nzb == 0 or R == 0:
        return out.reshape(R, nb * q)[:, :m]
    if basis_in == NEWTON:
        G = _blocks(A[:, : min(nzb * q, m)], q, nzb)
        C = ws.NM.apply(G)
    else:
        C = K.yadic_split(F, A[:, :nz], q, nzb)
    B = np.zeros((R, nb, q), dtype=np.int64)
    K.hasse_accumulate(F, B, C, ws.terms(0, nb, False, nzb))
    if T:
        out[:, :T] = ws.VM.apply(B[:, :T])
    if rho:
        VMp, _, _ = ws.partial(rho)
        out[:, T, :rho] = VMp.apply(B[:, T])
    return out.reshape(R, nb * q)[:, :m]


def blocked_interp(F, V, basis_out=NEWTON):
    """Rows of Hermite values over [m] to coefficients."""
    ws = blocked_workspace(F)
    q = F.q
    V = _rows(V)
    R, m = V.shape
    T, rho = divmod(m, q)
    nb = T + (rho > 0)
    Vb = _blocks(V, q, nb)
    C = np.zeros((R, nb, q), dtype=np.int64)
    if T:
        Bf = ws.VMinv.apply(Vb[:, :T])
        for t in range(T):
            corr = np.zeros((R, nb, q), dtype=np.int64)
            K.hasse_accumulate(F, corr, C, ws.terms(t, t + 1, True))
            C[:, t] = _sign_rows(F, K.vsub(F, Bf[:, t], corr[:, t]), t)
    g_last = None
    if rho:
        VMp, Linv, NMp = ws.partial(rho)
        corr = np.zeros((R, nb, q), dtype=np.int64)
        K.hasse_accumulate(F, corr, C, ws.terms(T, T + 1, True))
        w = _sign_rows(F, K.vsub(F, Vb[:, T, :rho], VMp.apply(corr[:, T])), T)
        g_last = Linv.apply(w)
    if basis_out == NEWTON:
        G = np.zeros((R, nb, q), dtype=np.int64)
        if T:
            G[:, :T] = ws.MN.apply(C[:, :T])
        if rho:
            G[:, T, :rho] = g_last
        return G.reshape(R, nb * q)[:, :m]
    if rho:
        C[:, T, :rho] = NMp.apply(g_last)
    return K.yadic_join(F, C, m)


# -- tree method


class TreeWorkspace:
    """Subproduct tree for [m] plus the CRT data used by interpolation."""

    def __init__(self, F: GF, m: int):
        self.F, self.m = F, m
        q = F.q
        self.mults = [-(-(m - j) // q) for j in range(min(m, q))]
        self.tree = P.SubproductTree(F, self.mults)
        self._inv = None

    def inverses(self):
        if self._inv is None:
            F = self.F
            out = []
            for j, (e, c) in enumerate(zip(self.mults, self.tree.cofactors())):
                cs = P.fit(P.taylor_shift_rows(F, c, j), e)
                out.append(P.series_inv_rows(F, cs, e))
            self._inv = out
        return self._inv


@functools.lru_cache(maxsize=256)
def tree_workspace(F, m):
    return TreeWorkspace(F, m)


def tree_eval(F, A, basis_in=NEWTON, nz=None):
    A = _rows(A)
    R, m = A.shape
    q = F.q
    nz = m if nz is None else max(0, min(nz, m))
    out = np.zeros((R, m), dtype=np.int64)
    if nz == 0 or R == 0:
        return out
    if basis_in == NEWTON:
        mono = P.fit(P.newton_to_monomial_rows(F, A[:, :nz]), m)
    else:
        mono = A
    ws = tree_workspace(F, m)
    res = ws.tree.remainders(mono)
    for j, (e, r) in enumerate(zip(ws.mults, res)):
        out[:, j::q] = P.fit(P.taylor_shift_rows(F, r, j), e)
    return out


def tree_interp(F, V, basis_out=NEWTON):
    V = _rows(V)
    R, m = V.shape
    q = F.q
    if R == 0:
        return np.zeros((0, m), dtype=np.int64)
    ws = tree_workspace(F, m)
    parts = []
    for j, (e, inv) in enumerate(zip(ws.mults, ws.inverses())):
        sj = P.fit(K.pmul(F, V[:, j::q], inv), e)
        parts.append(P.taylor_shift_rows(F, sj, int(F.neg[j])))
    mono = P.fit(ws.tree.combine(parts), m)
    if basis_out == MONOMIAL:
        return mono
    return P.monomial_to_newton_rows(F, mono)


# -- dispatch


def eval_rows(F, A, basis_in=NEWTON, nz=None, method=None):
    """Batched evaluation; nz bounds the number of leading coefficients that may be nonzero."""
    A = _rows(A)
    if A.shape[1] == 0:
        return A.copy()
    if pick_method(F, method) == "blocked":
        return blocked_eval(F, A, basis_in, nz)
    return tree_eval(F, A, basis_in, nz)


def interp_rows(F, V, basis_out=NEWTON, method=None):
    V = _rows(V)
    if V.shape[1] == 0:
        return V.copy()
    if pick_method(F, method) == "blocked":
        return blocked_interp(F, V, basis_out)
    return tree_interp(F, V, basis_out)


def residual_r(F, d):
    return max((d + 1) // F.q, 0)


def eval_R_rows(F, A, d, s, U=None, method=None):
    """Values on R_{d,s,1} = {i : d < i < sq} of F = sum_{i in R} f_i N_i.

    A holds the Newton coefficients f_i, i = max(d+1,0) .. sq-1, one row per
    polynomial. U is (X^(q-1) - 1)^r mod X^(s-r) with r = max((d+1) div q, 0).
    """
    q = F.q
    if s < 1:
        raise HermiteError("s must be positive")
    if d + 1 >= s * q:
        raise HermiteError(f"need d + 1 < s q (d={d}, s={s}, q={q})")
    A = _rows(A)
    lo = max(d + 1, 0)
    nR = s * q - lo
    if A.shape[1] != nR:
        raise HermiteError(f"expected {nR} coefficients, got {A.shape[1]}")
    r = residual_r(F, d)
    k = s - r
    if U is None:
        U = P.trunc_pow_qm1(F, r, k)
    U = np.asarray(U, dtype=np.int64)
    if P.degree(U) >= k:
        raise HermiteError(f"U must have degree < s - r = {k}")
    U = P.fit(U, k)[0]
    R = A.shape[0]
    # Newton coefficients of Q = F / N_{rq}: f shifted down by rq
    Qc = np.zeros((R, k * q), dtype=np.int64)
    Qc[:, lo - r * q :] = A
    EQ = eval_rows(F, Qc, NEWTON, method=method)  # (R, k q): point j order t
    if r == 0 and lo == 0:
        return EQ
    # per point j: series in t, times U, read from X^(t-r)
    ser = EQ.reshape(R, k, q).transpose(0, 2, 1).reshape(R * q, k)
    if r > 0:
        ser = P.fit(K.pmul(F, ser, U), k)
    full = np.zeros((R, s, q), dtype=np.int64)
    full[:, r:, :] = ser.reshape(R, q, k).transpose(0, 2, 1)
    return full.reshape(R, s * q)[:, lo:]


# -- public single-vector API


def _check_basis(b):
    if b not in (NEWTON, MONOMIAL):
        raise HermiteError(f"unknown basis {b!r}")


def uni_hermite_eval(F, f, basis_in=NEWTON, method=None):
    """E(F, j) for j in [m], m = len(f); f holds the coefficients of F on basis_in."""
    _check_basis(basis_in)
    f = np.asarray(f, dtype=np.int64)
    if f.size == 0:
        raise HermiteError("empty segment")
    return eval_rows(F, f, basis_in, method=method)[0]


def uni_hermite_interp(F, v, basis_out=NEWTON, method=None):
    """The unique F of length m with E(F, j) = v_j, on basis_out."""
    _check_basis(basis_out)
    v = np.asarray(v, dtype=np.int64)
    if v.size == 0:
        raise HermiteError("empty segment")
    return interp_rows(F, v, basis_out, method=method)[0]


def uni_hermite_eval_R(F, d, s, f, U=None, method=None):
    return eval_R_rows(F, f, d, s, U, method=method)[0]
