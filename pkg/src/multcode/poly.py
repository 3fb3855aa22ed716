"""Dense univariate polynomials over F_q.

The ``*_rows`` functions work on a batch of polynomials stored as the rows of
an (R, len) int64 array, coefficient i in column i. Shared operands (divisors,
tree nodes, shift powers) are single 1-D arrays. The DensePoly wrappers are a
thin single-polynomial API on top.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import kernels as K
from .field import GF, FieldError

MONOMIAL = "monomial"
NEWTON = "newton"

NEG_INF = -(1 << 62)  # degree of the zero polynomial

_SHIFT_BASE = 16
_CONV_BASE = 16
_DIV_BASE = 32


def _rows(A):
    A = np.ascontiguousarray(A, dtype=np.int64)
    return A[None, :] if A.ndim == 1 else A


def degree(a) -> int:
    """Largest index with a nonzero coefficient (over all rows of a batch)."""
    a = np.asarray(a)
    nz = np.flatnonzero(a.any(axis=0) if a.ndim == 2 else a)
    return int(nz[-1]) if nz.size else NEG_INF


def fit(A, n):
    """Truncate or zero-pad the rows of A to length n."""
    A = _rows(A)
    if A.shape[1] >= n:
        return np.ascontiguousarray(A[:, :n])
    out = np.zeros((A.shape[0], n), dtype=np.int64)
    out[:, : A.shape[1]] = A
    return out


def linear(F: GF, a: int):
    """X - alpha_a."""
    return np.array([F.neg[a], 1], dtype=np.int64)


def power_of_linear(F: GF, a: int, e: int):
    """(X - alpha_a)^e by the binomial theorem; coefficients are binom(e,k) (-a)^(e-k)."""
    na = int(F.neg[a])
    out = np.zeros(e + 1, dtype=np.int64)
    for k in range(e + 1):
        b = F.binom(e, k)
        if b:
            out[k] = F.mul(b, F.pow(na, e - k))
    return out


def mul_rows(F, A, B):
    return K.pmul(F, A, B)


def mul(F, a, b):
    """Product of two 1-D coefficient vectors."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.size == 0 or b.size == 0:
        return np.zeros(0, dtype=np.int64)
    return K.pmul(F, a, b)[0]


# -- power series and division


def series_inv_rows(F, A, k):
    """Row-wise inverse of A modulo X^k; every A[:, 0] must be nonzero."""
    A = _rows(A)
    if np.any(A[:, 0] == 0):
        raise ZeroDivisionError("power series with zero constant term")
    g = F.inv(A[:, 0]).reshape(-1, 1).astype(np.int64)
    K_ = 1
    while K_ < k:
        K_ = min(2 * K_, k)
        ag = fit(K.pmul(F, fit(A, K_), g), K_)
        # g <- g (2 - a g) = g - g (a g - 1)
        ag[:, 0] = K.vsub(F, ag[:, 0], np.ones_like(ag[:, 0]))
        e = fit(K.pmul(F, g, ag), K_)
        g = K.vsub(F, fit(g, K_), e)
    return fit(g, k)


def series_inv(F, a, k):
    return series_inv_rows(F, a, k)[0]


class Divisor:
    """A monic polynomial prepared for repeated row-wise division."""

    def __init__(self, F, P):
        P = np.ascontiguousarray(P, dtype=np.int64)
        if P.size == 0 or P[-1] != 1:
            raise FieldError("divisor must be monic")
        self.F = F
        self.P = P
        self.deg = P.size - 1
        self._rinv = {}

    def _rev_inv(self, k):
        r = self._rinv.get(k)
        if r is None:
            r = series_inv(self.F, self.P[::-1].copy(), k)
            self._rinv[k] = r
        return r

    def divmod(self, A):
        F = self.F
        A = _rows(A)
        la = A.shape[1]
        dp = self.deg
        if la <= dp:
            return np.zeros((A.shape[0], 0), dtype=np.int64), fit(A, dp)
        nq = la - dp
        if dp == 0:
            return A.copy(), np.zeros((A.shape[0], 0), dtype=np.int64)
        if nq <= _DIV_BASE or dp <= _DIV_BASE // 2:
            return K.divmod_monic(F, A, self.P)
        revA = np.ascontiguousarray(A[:, ::-1][:, :nq])
        qrev = fit(K.pmul(F, revA, self._rev_inv(nq)), nq)
        Q = np.ascontiguousarray(qrev[:, ::-1])
        QP = fit(K.pmul(F, Q, self.P), dp)
        R = K.vsub(F, A[:, :dp], QP)
        return Q, R

    def rem(self, A):
        return self.divmod(A)[1]


def divmod_rows(F, A, P):
    return Divisor(F, P).divmod(A)


# -- Taylor shift


@functools.lru_cache(maxsize=4096)
def _shift_power(F, a, e):
    """(X + alpha_a)^e for e a power of two, as a read-only array."""
    if e == 1:
        out = np.array([a, 1], dtype=np.int64)
    else:
        h = _shift_power(F, a, e // 2)
        out = mul(F, h, h)
    out.setflags(write=False)
    return out


def _shift_base(F, A, a):
    # Horner: r <- r (X + a) + f_i
    R, n = A.shape
    r = np.zeros((R, n), dtype=np.int64)
    for i in range(n - 1, -1, -1):
        ar = K.vsmul(F, a, r)
        nr = np.zeros_like(r)
        nr[:, 1:] = r[:, :-1]
        nr = K.vadd(F, nr, ar)
        nr[:, 0] = K.vadd(F, nr[:, 0], A[:, i])
        r = nr
    return r


def taylor_shift_rows(F, A, a):
    """Rows f(X) -> f(X + alpha_a), divide and conquer on the top power of two."""
    A = _rows(A)
    n = A.shape[1]
    a = int(a)
    if a == 0 or n <= 1:
        return A.copy()
    if n <= _SHIFT_BASE:
        return _shift_base(F, A, a)
    h = 1
    while 2 * h < n:
        h *= 2
    lo = taylor_shift_rows(F, A[:, :h], a)
    hi = taylor_shift_rows(F, A[:, h:], a)
    prod = fit(K.pmul(F, hi, _shift_power(F, a, h)), n)
    prod[:, :h] = K.vadd(F, prod[:, :h], lo)
    return prod


def taylor_shift(F, f, a):
    return taylor_shift_rows(F, f, a)[0]


# -- (X^(q-1) - 1)^r mod X^k


def trunc_pow_qm1(F, r, k):
    """(X^(q-1) - 1)^r mod X^k by repeated shift-and-subtract (no multiplications)."""
    if r < 0 or k < 1:
        raise FieldError("need r >= 0 and k >= 1")
    q = F.q
    U = np.zeros(k, dtype=np.int64)
    U[0] = 1
    for _ in range(r):
        nu = F.neg[U]
        if q - 1 < k:
            nu[q - 1 :] = K.vadd(F, nu[q - 1 :], U[: k - q + 1])
        U = nu
    return U


def trunc_pow_family(F, rmax, k):
    """[U_0, ..., U_rmax] with U_r = (X^(q-1) - 1) U_(r-1) mod X^(k - r)."""
    out = [np.zeros(max(k, 1), dtype=np.int64)]
    out[0][0] = 1
    q = F.q
    for r in range(1, rmax + 1):
        kk = k - r
        if kk < 1:
            out.append(np.zeros(0, dtype=np.int64))
            continue
        prev = out[-1][:kk]
        nu = F.neg[prev]
        if q - 1 < kk:
            nu[q - 1 :] = K.vadd(F, nu[q - 1 :], prev[: kk - q + 1])
        out.append(nu)
    return out


# -- subproduct trees


@dataclass
class TreeNode:
    lo: int  # leaf range [lo, hi)
    hi: int
    poly: np.ndarray
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None
    div: Divisor | None = dc_field(default=None, repr=False)

    @property
    def is_leaf(self):
        return self.left is None

    def divisor(self, F):
        if self.div is None:
            self.div = Divisor(F, self.poly)
        return self.div


def _build(F, leaves, lo, hi):
    if hi - lo == 1:
        return TreeNode(lo, hi, leaves[lo])
    mid = (lo + hi) // 2
    L = _build(F, leaves, lo, mid)
    R = _build(F, leaves, mid, hi)
    return TreeNode(lo, hi, mul(F, L.poly, R.poly), L, R)


class SubproductTree:
    """Binary product tree over the leaves (X - alpha_j)^mult_j, zero multiplicities skipped."""

    def __init__(self, F: GF, mults):
        mults = [int(x) for x in mults]
        if any(x < 0 for x in mults):
            raise FieldError("negative multiplicity")
        if len(mults) > F.q:
            raise FieldError("more multiplicities than field points")
        self.F = F
        self.points = [j for j, e in enumerate(mults) if e > 0]
        if not self.points:
            raise FieldError("all multiplicities are zero")
        self.mults = [mults[j] for j in self.points]
        leaves = [power_of_linear(F, j, e) for j, e in zip(self.points, self.mults)]
        self.root = _build(F, leaves, 0, len(leaves))

    @property
    def degree(self):
        return sum(self.mults)

    def nodes(self):
        stack = [self.root]
        while stack:
            nd = stack.pop()
            yield nd
            if not nd.is_leaf:
                stack += [nd.right, nd.left]

    def leaves(self):
        return [nd for nd in self.nodes() if nd.is_leaf]

    def remainders(self, A):
        """Rows of A reduced modulo every leaf, returned in leaf order."""
        F = self.F
        out = [None] * len(self.points)

        def go(nd, X):
            if nd.is_leaf:
                out[nd.lo] = fit(X, nd.poly.size - 1)
                return
            go(nd.left, nd.left.divisor(F).rem(X))
            go(nd.right, nd.right.divisor(F).rem(X))

        A = _rows(A)
        go(self.root, self.root.divisor(F).rem(A) if A.shape[1] > self.degree else fit(A, self.degree))
        return out

    def cofactors(self):
        """(M / m_j) mod m_j for every leaf m_j, M the root product."""
        F = self.F
        out = [None] * len(self.points)

        def go(nd, c):
            if nd.is_leaf:
                out[nd.lo] = fit(c, nd.poly.size - 1)[0]
                return
            cl = nd.left.divisor(F).rem(mul(F, c, nd.right.poly)[None, :])
            cr = nd.right.divisor(F).rem(mul(F, c, nd.left.poly)[None, :])
            go(nd.left, cl[0])
            go(nd.right, cr[0])

        go(self.root, np.ones(1, dtype=np.int64))
        return out

    def combine(self, parts):
        """sum_j parts[j] * M / m_j, with parts given per leaf as row batches."""
        F = self.F

        def go(nd):
            if nd.is_leaf:
                return parts[nd.lo]
            L = go(nd.left)
            R = go(nd.right)
            a = K.pmul(F, L, nd.right.poly)
            b = K.pmul(F, R, nd.left.poly)
            n = nd.poly.size - 1
            return K.vadd(F, fit(a, n), fit(b, n))

        return go(self.root)


def build_subproduct_tree(F, mults):
    return SubproductTree(F, mults)


# -- Newton basis conversions


class NewtonTree:
    """Product tree over the Newton factors X - alpha_(j mod q), j in [0, L)."""

    def __init__(self, F, L):
        self.F = F
        self.L = L
        self.root = self._node(0, L) if L > 0 else None

    def _node(self, lo, hi):
        F = self.F
        if hi - lo <= _CONV_BASE:
            poly = np.ones(1, dtype=np.int64)
            for j in range(lo, hi):
                poly = mul(F, poly, linear(F, j % F.q))
            return TreeNode(lo, hi, poly)
        mid = (lo + hi) // 2
        L = self._node(lo, mid)
        R = self._node(mid, hi)
        return TreeNode(lo, hi, mul(F, L.poly, R.poly), L, R)

    def to_monomial(self, C):
        F, q = self.F, self.F.q

        def go(nd, X):
            if nd.is_leaf:
                n = nd.hi - nd.lo
                r = X[:, n - 1 : n].copy()
                for i in range(n - 2, -1, -1):
                    # r <- r (X - a) + c_i
                    a = (nd.lo + i) % q
                    nr = np.zeros((X.shape[0], r.shape[1] + 1), dtype=np.int64)
                    nr[:, 1:] = r
                    nr[:, :-1] = K.vsub(F, nr[:, :-1], K.vsmul(F, a, r))
                    nr[:, 0] = K.vadd(F, nr[:, 0], X[:, i])
                    r = nr
                return fit(r, n)
            k = nd.left.hi - nd.left.lo
            lo = go(nd.left, X[:, :k])
            hi = go(nd.right, X[:, k:])
            out = fit(K.pmul(F, hi, nd.left.poly), nd.hi - nd.lo)
            out[:, :k] = K.vadd(F, out[:, :k], lo)
            return out

        return go(self.root, _rows(C))

    def to_newton(self, A):
        F, q = self.F, self.F.q

        def go(nd, X):
            if nd.is_leaf:
                n = nd.hi - nd.lo
                out = np.zeros((X.shape[0], n), dtype=np.int64)
                cur = X
                for i in range(n):
                    # synthetic division by X - a: coefficient i is the remainder
                    a = (nd.lo + i) % q
                    m = cur.shape[1]
                    quo = np.zeros((X.shape[0], max(m - 1, 0)), dtype=np.int64)
                    acc = np.zeros(X.shape[0], dtype=np.int64)
                    for t in range(m - 1, -1, -1):
                        acc = K.vadd(F, cur[:, t], K.vsmul(F, a, acc))
                        if t > 0:
                            quo[:, t - 1] = acc
                    out[:, i] = acc
                    cur = quo
                return out
            k = nd.left.hi - nd.left.lo
            Q, R = nd.left.divisor(F).divmod(X)
            return np.concatenate([go(nd.left, R), go(nd.right, fit(Q, nd.hi - nd.lo - k))], axis=1)

        return go(self.root, _rows(A))


@functools.lru_cache(maxsize=256)
def newton_tree(F, L):
    return NewtonTree(F, L)


def newton_to_monomial_rows(F, C):
    C = _rows(C)
    if C.shape[1] == 0:
        return C.copy()
    return newton_tree(F, C.shape[1]).to_monomial(C)


def monomial_to_newton_rows(F, A, length=None):
    A = _rows(A)
    L = A.shape[1] if length is None else int(length)
    if degree(A) >= L:
        raise FieldError(f"degree {degree(A)} does not fit {L} Newton coefficients")
    if L == 0:
        return np.zeros((A.shape[0], 0), dtype=np.int64)
    return newton_tree(F, L).to_newton(fit(A, L))


def newton_poly(F, i):
    """Monomial coefficients of N_i = prod_{j<i} (X - alpha_(j mod q))."""
    out = np.ones(1, dtype=np.int64)
    for j in range(i):
        out = mul(F, out, linear(F, j % F.q))
    return out


# -- single-polynomial API


@dataclass
class DensePoly:
    F: GF
    coeffs: np.ndarray
    basis: str = MONOMIAL

    def __post_init__(self):
        self.coeffs = np.array(self.coeffs, dtype=np.int64).reshape(-1)
        if self.basis not in (MONOMIAL, NEWTON):
            raise FieldError(f"unknown basis {self.basis!r}")
        if self.coeffs.size and (self.coeffs.min() < 0 or self.coeffs.max() >= self.F.q):
            raise FieldError("coefficient out of range")

    @property
    def degree(self):
        return degree(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, DensePoly) or other.F != self.F or other.basis != self.basis:
            return NotImplemented
        n = max(self.coeffs.size, other.coeffs.size)
        return bool(np.array_equal(fit(self.coeffs, n), fit(other.coeffs, n)))

    def __call__(self, x):
        """Value at alpha_x (monomial basis only)."""
        if self.basis != MONOMIAL:
            return newton_to_monomial(self)(x)
        acc = 0
        for c in self.coeffs[::-1]:
            acc = self.F.add(self.F.mul(acc, int(x)), int(c))
        return acc


def _check_same(a, b):
    if a.F != b.F:
        raise FieldError("polynomials over different fields")


def poly_mul(a: DensePoly, b: DensePoly) -> DensePoly:
    _check_same(a, b)
    if a.basis != MONOMIAL or b.basis != MONOMIAL:
        raise FieldError("poly_mul expects monomial-basis inputs")
    return DensePoly(a.F, mul(a.F, a.coeffs, b.coeffs))


def poly_taylor_shift(f: DensePoly, a) -> DensePoly:
    if f.basis != MONOMIAL:
        raise FieldError("taylor_shift expects a monomial-basis input")
    return DensePoly(f.F, taylor_shift(f.F, f.coeffs, int(a)))


def monomial_to_newton(f: DensePoly, length: int) -> DensePoly:
    if f.basis != MONOMIAL:
        raise FieldError("input already on the Newton basis")
    return DensePoly(f.F, monomial_to_newton_rows(f.F, f.coeffs, length)[0], NEWTON)


def newton_to_monomial(f: DensePoly) -> DensePoly:
    if f.basis != NEWTON:
        raise FieldError("input is not on the Newton basis")
    return DensePoly(f.F, newton_to_monomial_rows(f.F, f.coeffs)[0], MONOMIAL)
