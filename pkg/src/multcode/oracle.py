"""Brute-force reference implementations, for testing only.

Nothing here touches the fast paths. Field arithmetic comes from full
addition/multiplication tables built by multiplying digit vectors modulo the
field modulus, binomials come from Pascal's triangle mod p, and Hasse
derivatives use H(X^i, t) = prod binom(i_l, t_l) X^(i - t) on the monomial
basis. The only shared convention is the field enumeration (p, m, modulus).
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

from . import _config

MAX_Q = 256
MAX_INTERP = 5000
MAX_INFOSET = 2000


class OracleError(ValueError):
    pass


def _maybe_jit(fn):
    if _config.USE_NUMBA:
        from numba import njit

        return njit(cache=True, nogil=True)(fn)
    return fn


class Tables:
    """Complete operation tables for F_q under the base-p digit enumeration."""

    def __init__(self, p, m, modulus):
        q = p**m
        if q > MAX_Q:
            raise OracleError(f"oracle tables limited to q <= {MAX_Q}")
        self.p, self.m, self.q = p, m, q
        digs = np.array([[(j // p**k) % p for k in range(m)] for j in range(q)], dtype=np.int64)
        w = p ** np.arange(m)
        add = ((digs[:, None, :] + digs[None, :, :]) % p) @ w
        # schoolbook product of digit vectors, then reduce by the monic modulus
        prod = np.zeros((q, q, 2 * m - 1), dtype=np.int64)
        for a in range(m):
            for b in range(m):
                prod[:, :, a + b] += digs[:, None, a] * digs[None, :, b]
        prod %= p
        mod = np.asarray(modulus, dtype=np.int64)
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[:, :, k].copy()
            for t in range(m + 1):
                prod[:, :, k - m + t] = (prod[:, :, k - m + t] - c * mod[t]) % p
        mul = prod[:, :, :m] @ w
        self.ADD = np.ascontiguousarray(add, dtype=np.int64)
        self.MUL = np.ascontiguousarray(mul, dtype=np.int64)
        self.NEG = np.array([int(np.flatnonzero(add[a] == 0)[0]) for a in range(q)], dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.flatnonzero(mul[a] == 1)[0])
        self.INV = inv
        self._pow = np.ones((q, 1), dtype=np.int64)
        self._bin = np.ones((1, 1), dtype=np.int64)

    def powers(self, emax):
        """POW[a, e] = alpha_a^e for e <= emax."""
        P = self._pow
        if P.shape[1] <= emax:
            P = np.ones((self.q, emax + 1), dtype=np.int64)
            P[0, 1:] = 0
            for e in range(1, emax + 1):
                P[:, e] = self.MUL[np.arange(self.q), P[:, e - 1]]
            self._pow = P
        return P

    def binomials(self, nmax):
        """BIN[n, k] = binom(n, k) mod p via Pascal's rule."""
        B = self._bin
        if B.shape[0] <= nmax:
            B = np.zeros((nmax + 1, nmax + 1), dtype=np.int64)
            B[:, 0] = 1
            for n in range(1, nmax + 1):
                B[n, 1 : n + 1] = (B[n - 1, 0:n] + B[n - 1, 1 : n + 1]) % self.p
            self._bin = B
        return B


@functools.lru_cache(maxsize=None)
def tables(p, m, modulus):
    return Tables(p, m, tuple(modulus))


def tables_for(F):
    return tables(F.p, F.m, tuple(F.modulus))


# -- compiled loops


def _e_entry(j, i, q, MUL, POW, BIN):
    # E(X^i, j) = prod_l binom(i_l, t_l) alpha_{a_l}^(i_l - t_l)
    v = 1
    for l in range(j.shape[0]):
        a = j[l] % q
        t = j[l] // q
        e = i[l] - t
        if e < 0:
            return 0
        b = BIN[i[l], t]
        if b == 0:
            return 0
        v = MUL[v, MUL[b, POW[a, e]]]
        if v == 0:
            return 0
    return v


_e_entry = _maybe_jit(_e_entry)


def _e_matrix(J, I, q, MUL, POW, BIN):
    out = np.zeros((J.shape[0], I.shape[0]), dtype=np.int64)
    for r in range(J.shape[0]):
        for c in range(I.shape[0]):
            out[r, c] = _e_entry(J[r], I[c], q, MUL, POW, BIN)
    return out


_e_matrix = _maybe_jit(_e_matrix)


def _apply(J, I, C, q, ADD, MUL, POW, BIN):
    # out[r, v] = sum_c E(X^{I_c}, J_r) C[c, v]
    nv = C.shape[1]
    out = np.zeros((J.shape[0], nv), dtype=np.int64)
    for r in range(J.shape[0]):
        for c in range(I.shape[0]):
            e = _e_entry(J[r], I[c], q, MUL, POW, BIN)
            if e != 0:
                for v in range(nv):
                    x = C[c, v]
                    if x != 0:
                        out[r, v] = ADD[out[r, v], MUL[e, x]]
    return out


_apply = _maybe_jit(_apply)


def _solve(M, B, ADD, MUL, NEG, INV):
    """Gauss-Jordan on [M | B]; returns (ok, X)."""
    n = M.shape[0]
    nv = B.shape[1]
    A = M.copy()
    X = B.copy()
    for c in range(n):
        piv = -1
        for r in range(c, n):
            if A[r, c] != 0:
                piv = r
                break
        if piv < 0:
            return False, X
        if piv != c:
            for k in range(n):
                tmp = A[c, k]
                A[c, k] = A[piv, k]
                A[piv, k] = tmp
            for k in range(nv):
                tmp = X[c, k]
                X[c, k] = X[piv, k]
                X[piv, k] = tmp
        iv = INV[A[c, c]]
        for k in range(n):
            A[c, k] = MUL[A[c, k], iv]
        for k in range(nv):
            X[c, k] = MUL[X[c, k], iv]
        for r in range(n):
            if r != c:
                f = A[r, c]
                if f != 0:
                    nf = NEG[f]
                    for k in range(c, n):
                        if A[c, k] != 0:
                            A[r, k] = ADD[A[r, k], MUL[nf, A[c, k]]]
                    for k in range(nv):
                        if X[c, k] != 0:
                            X[r, k] = ADD[X[r, k], MUL[nf, X[c, k]]]
    return True, X


_solve = _maybe_jit(_solve)


# -- sparse multivariate polynomials


class SparsePolyMV:
    """Polynomial on the monomial basis: {multi-index: coefficient}, no zero entries."""

    def __init__(self, F, n, terms=None):
        self.F = F
        self.n = n
        self.terms = {}
        for k, v in (terms or {}).items():
            k = tuple(int(x) for x in k)
            if len(k) != n:
                raise OracleError("multi-index length mismatch")
            v = int(v) % F.q if v >= 0 else int(v)
            if not 0 <= v < F.q:
                raise OracleError("coefficient out of range")
            if v:
                self.terms[k] = v

    def __eq__(self, other):
        return isinstance(other, SparsePolyMV) and self.n == other.n and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{v}*X^{k}" for k, v in sorted(self.terms.items()))

    def support(self):
        return set(self.terms)

    def arrays(self):
        if not self.terms:
            return np.zeros((0, self.n), dtype=np.int64), np.zeros(0, dtype=np.int64)
        keys = sorted(self.terms)
        return np.array(keys, dtype=np.int64).reshape(-1, self.n), np.array([self.terms[k] for k in keys], dtype=np.int64)

    @classmethod
    def from_arrays(cls, F, idx, coeffs):
        idx = np.asarray(idx, dtype=np.int64)
        n = idx.shape[1]
        return cls(F, n, {tuple(r): int(c) for r, c in zip(idx, coeffs) if c})


def _order(pts):
    """Graded-lex order, written independently of the segments module."""
    return sorted(pts, key=lambda x: (sum(x), tuple(x)))


def seg_points(kind, n, a, q=None):
    """Members of I_{a,n} ('simplex') or C_{a,n} ('deriv') in graded-lex order, by brute force."""
    if kind == "simplex":
        if a < 0:
            return []
        pts = [x for x in itertools.product(range(a + 1), repeat=n) if sum(x) <= a]
    elif kind == "deriv":
        pts = [x for x in itertools.product(range(a * q), repeat=n) if sum(v // q for v in x) < a]
    else:
        raise OracleError(kind)
    return _order(pts)


def naive_hasse(F, f: SparsePolyMV, t):
    """t-th Hasse derivative, coefficientwise."""
    T = tables_for(F)
    t = tuple(int(x) for x in t)
    if len(t) != f.n:
        raise OracleError("order length mismatch")
    nmax = max([0] + [max(k) for k in f.terms])
    B = T.binomials(max(nmax, max(t, default=0)))
    out = {}
    for i, c in f.terms.items():
        if any(il < tl for il, tl in zip(i, t)):
            continue
        v = c
        for il, tl in zip(i, t):
            v = int(T.MUL[v, B[il, tl]])
        if v:
            key = tuple(il - tl for il, tl in zip(i, t))
            out[key] = int(T.ADD[out.get(key, 0), v])
    return SparsePolyMV(F, f.n, out)


def naive_shift_expand(F, f: SparsePolyMV):
    """F(X + Z) expanded in Z: {t: polynomial in X}, t running over nonzero Z-coefficients.

    Each (X_l + Z_l)^e is built by repeated multiplication by (X_l + Z_l), with
    no binomial coefficients, so it checks naive_hasse through a separate route.
    """
    T = tables_for(F)
    n = f.n
    pw = {}

    def power(e):
        # {(x, z): c} for (X + Z)^e
        if e not in pw:
            cur = {(0, 0): 1}
            for _ in range(e):
                nxt = {}
                for (x, z), c in cur.items():
                    for key in ((x + 1, z), (x, z + 1)):
                        nxt[key] = int(T.ADD[nxt.get(key, 0), c])
                cur = {k: v for k, v in nxt.items() if v}
            pw[e] = cur
        return pw[e]

    out = {}
    for i, c in f.terms.items():
        acc = {((), ()): c}
        for il in i:
            nxt = {}
            for (xs, zs), v in acc.items():
                for (x, z), w in power(il).items():
                    key = (xs + (x,), zs + (z,))
                    nxt[key] = int(T.ADD[nxt.get(key, 0), T.MUL[v, w]])
            acc = nxt
        for (xs, zs), v in acc.items():
            if v:
                poly = out.setdefault(zs, {})
                poly[xs] = int(T.ADD[poly.get(xs, 0), v])
    return {t: SparsePolyMV(F, n, {k: v for k, v in p.items() if v}) for t, p in out.items()}


def _apply_many(F, J, I, C):
    T = tables_for(F)
    J = np.asarray(J, dtype=np.int64).reshape(-1, I.shape[1])
    if I.shape[0] == 0 or J.shape[0] == 0:
        return np.zeros((J.shape[0], C.shape[1]), dtype=np.int64)
    q = F.q
    emax = int(I.max()) if I.size else 0
    POW = T.powers(emax)
    BIN = T.binomials(max(emax, int((J // q).max()) if J.size else 0))
    return _apply(J, I, np.ascontiguousarray(C, dtype=np.int64), q, T.ADD, T.MUL, POW, BIN)


def naive_E_values(F, polys, points):
    """E(f, j) for several polynomials (same n) at the given multi-indices; shape (npoly, npoints)."""
    points = np.asarray(points, dtype=np.int64)
    n = points.shape[1]
    support = sorted(set().union(*[p.terms.keys() for p in polys]))
    I = np.array(support, dtype=np.int64).reshape(-1, n)
    C = np.zeros((I.shape[0], len(polys)), dtype=np.int64)
    pos = {k: r for r, k in enumerate(support)}
    for v, p in enumerate(polys):
        for k, c in p.terms.items():
            C[pos[k], v] = c
    return _apply_many(F, points, I, C).T


def naive_E_vector(F, f: SparsePolyMV, seg_pts):
    """(E(F, j))_{j in seg} with seg given as a list/array of members in order."""
    pts = np.asarray(seg_pts, dtype=np.int64).reshape(-1, f.n)
    members = {tuple(x) for x in pts.tolist()}
    if not f.support() <= members:
        raise OracleError("support not contained in the segment")
    return naive_E_values(F, [f], pts)[0]


def e_matrix(F, J, I):
    T = tables_for(F)
    J = np.asarray(J, dtype=np.int64)
    I = np.asarray(I, dtype=np.int64)
    q = F.q
    emax = int(I.max()) if I.size else 0
    POW = T.powers(emax)
    BIN = T.binomials(max(emax, int((J // q).max()) if J.size else 0))
    return _e_matrix(J, I, q, T.MUL, POW, BIN)


def naive_interpolate_many(F, seg_pts, V):
    """Monomial coefficient arrays (|seg|, nvec) of the interpolants of the columns of V."""
    pts = np.asarray(seg_pts, dtype=np.int64)
    k = pts.shape[0]
    if k > MAX_INTERP:
        raise OracleError(f"segment of size {k} exceeds the oracle guard {MAX_INTERP}")
    T = tables_for(F)
    M = e_matrix(F, pts, pts)
    ok, X = _solve(M, np.ascontiguousarray(V, dtype=np.int64), T.ADD, T.MUL, T.NEG, T.INV)
    if not ok:
        raise OracleError("interpolation matrix is singular")
    return X


def naive_interpolate(F, v, seg_pts) -> SparsePolyMV:
    """The unique F supported on seg with E(F, j) = v_j."""
    pts = np.asarray(seg_pts, dtype=np.int64)
    X = naive_interpolate_many(F, pts, np.asarray(v, dtype=np.int64).reshape(-1, 1))
    return SparsePolyMV.from_arrays(F, pts, X[:, 0])


def info_set_matrix_check(F, n, s, d):
    """True iff E restricted to I_{d,n} x I_{d,n} is nonsingular."""
    pts = np.array(seg_points("simplex", n, d), dtype=np.int64).reshape(-1, n)
    if pts.shape[0] > MAX_INFOSET:
        raise OracleError(f"dimension {pts.shape[0]} exceeds the guard {MAX_INFOSET}")
    if pts.shape[0] == 0:
        return True
    T = tables_for(F)
    M = e_matrix(F, pts, pts)
    ok, _ = _solve(M, np.zeros((pts.shape[0], 1), dtype=np.int64), T.ADD, T.MUL, T.NEG, T.INV)
    return bool(ok)


def codeword_positions(q, n, s):
    """(block, slot) layout as C-index points: blocks [q]^n, slots S_{s,n}, both graded-lex."""
    blocks = _order(list(itertools.product(range(q), repeat=n)))
    slots = seg_points("simplex", n, s - 1)
    pts = [[j[l] + t[l] * q for l in range(n)] for j in blocks for t in slots]
    return np.array(pts, dtype=np.int64).reshape(len(blocks), len(slots), n)


def naive_encode_many(F, n, s, d, msgs):
    """Codewords (nmsg, q^n, sigma) for the messages (nmsg, k), by interpolation + direct evaluation."""
    msgs = np.atleast_2d(np.asarray(msgs, dtype=np.int64))
    I = np.array(seg_points("simplex", n, d), dtype=np.int64).reshape(-1, n)
    coeffs = naive_interpolate_many(F, I, msgs.T)  # (k, nmsg)
    pos = codeword_positions(F.q, n, s)
    nb, ns, _ = pos.shape
    vals = _apply_many(F, pos.reshape(-1, n), I, coeffs)  # (nb*ns, nmsg)
    return vals.T.reshape(msgs.shape[0], nb, ns)


def naive_encode(F, n, s, d, msg):
    return naive_encode_many(F, n, s, d, msg)[0]


def naive_newton(F, i):
    """N_i(X) = prod_l prod_{j < i_l} (X_l - alpha_{j mod q}) as a SparsePolyMV."""
    T = tables_for(F)
    q = F.q
    n = len(i)
    factors = []
    for l, il in enumerate(i):
        c = [1]
        for j in range(il):
            a = T.NEG[j % q]
            nc = [0] * (len(c) + 1)
            for k, x in enumerate(c):
                nc[k + 1] = int(T.ADD[nc[k + 1], x])
                nc[k] = int(T.ADD[nc[k], T.MUL[x, a]])
            c = nc
        factors.append(c)
    terms = {}
    for combo in itertools.product(*[range(len(f)) for f in factors]):
        v = 1
        for l, e in enumerate(combo):
            v = int(T.MUL[v, factors[l][e]])
        if v:
            terms[combo] = v
    return SparsePolyMV(F, n, terms)


def random_poly(F, seg_pts, rng):
    pts = np.asarray(seg_pts, dtype=np.int64)
    c = rng.integers(0, F.q, size=pts.shape[0])
    return SparsePolyMV.from_arrays(F, pts, c)
