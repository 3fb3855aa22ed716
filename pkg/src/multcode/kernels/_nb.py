"""Compiled kernels. Field values are enumeration indices; ``ft`` is ``GF.ft``."""

import numpy as np
from numba import njit, prange

from .._config import numba_default

_opts = dict(numba_default)
_inline = dict(_opts, inline="always")
# cached recursive functions can crash when reloaded from the on-disk cache
_rec = dict(_opts, cache=False)


@njit(**_inline)
def fmul(a, b, kind, p, exp, log):
    if kind == 0:
        return (a * b) % p
    if a == 0 or b == 0:
        return 0
    return exp[log[a] + log[b]]


@njit(**_inline)
def fadd(a, b, kind, p, q, exp, log, zech):
    if kind == 0:
        s = a + b
        if s >= p:
            s -= p
        return s
    if kind == 1:
        return a ^ b
    if a == 0:
        return b
    if b == 0:
        return a
    la = log[a]
    k = log[b] - la
    if k < 0:
        k += q - 1
    z = zech[k]
    if z < 0:
        return 0
    return exp[la + z]


@njit(**_opts)
def vadd(a, b, ft):
    kind, p, q, exp, log, zech, neg = ft
    fa = a.ravel()
    fb = b.ravel()
    out = np.empty_like(fa)
    for i in range(fa.size):
        out[i] = fadd(fa[i], fb[i], kind, p, q, exp, log, zech)
    return out.reshape(a.shape)


@njit(**_opts)
def vsub(a, b, ft):
    kind, p, q, exp, log, zech, neg = ft
    fa = a.ravel()
    fb = b.ravel()
    out = np.empty_like(fa)
    for i in range(fa.size):
        out[i] = fadd(fa[i], neg[fb[i]], kind, p, q, exp, log, zech)
    return out.reshape(a.shape)


@njit(**_opts)
def vmul(a, b, ft):
    kind, p, q, exp, log, zech, neg = ft
    fa = a.ravel()
    fb = b.ravel()
    out = np.empty_like(fa)
    for i in range(fa.size):
        out[i] = fmul(fa[i], fb[i], kind, p, exp, log)
    return out.reshape(a.shape)


@njit(**_opts)
def vsmul(c, a, ft):
    kind, p, q, exp, log, zech, neg = ft
    fa = a.ravel()
    out = np.empty_like(fa)
    for i in range(fa.size):
        out[i] = fmul(c, fa[i], kind, p, exp, log)
    return out.reshape(a.shape)


@njit(**_opts)
def _cmat_row(x, M, logM, out, kind, p, q, exp, log, zech):
    r, c = M.shape
    if kind == 0:
        for i in range(r):
            acc = 0
            for k in range(c):
                acc += M[i, k] * x[k]
            out[i] = acc % p
    elif kind == 1:
        for i in range(r):
            acc = 0
            for k in range(c):
                xk = x[k]
                lm = logM[i, k]
                if xk != 0 and lm >= 0:
                    acc ^= exp[lm + log[xk]]
            out[i] = acc
    else:
        for i in range(r):
            acc = 0
            for k in range(c):
                xk = x[k]
                lm = logM[i, k]
                if xk != 0 and lm >= 0:
                    acc = fadd(acc, exp[lm + log[xk]], kind, p, q, exp, log, zech)
            out[i] = acc


@njit(**_opts)
def cmatmul(X, M, logM, ft):
    """out[b, i] = sum_k M[i, k] * X[b, k] for a batch of rows X."""
    kind, p, q, exp, log, zech, neg = ft
    R = X.shape[0]
    out = np.empty((R, M.shape[0]), dtype=np.int64)
    for b in range(R):
        _cmat_row(X[b], M, logM, out[b], kind, p, q, exp, log, zech)
    return out


@njit(parallel=True, nogil=True, cache=True)
def cmatmul_par(X, M, logM, ft):
    kind, p, q, exp, log, zech, neg = ft
    R = X.shape[0]
    out = np.empty((R, M.shape[0]), dtype=np.int64)
    for b in prange(R):
        _cmat_row(X[b], M, logM, out[b], kind, p, q, exp, log, zech)
    return out


@njit(**_opts)
def _school(a, ao, la, b, bo, lb, out, oo, kind, p, q, exp, log, zech):
    # out[oo:oo+la+lb-1] += a[ao:ao+la] * b[bo:bo+lb]
    if kind == 0:
        for i in range(la):
            ai = a[ao + i]
            if ai != 0:
                for j in range(lb):
                    out[oo + i + j] = (out[oo + i + j] + ai * b[bo + j]) % p
    else:
        for i in range(la):
            ai = a[ao + i]
            if ai != 0:
                l_a = log[ai]
                for j in range(lb):
                    bj = b[bo + j]
                    if bj != 0:
                        k = oo + i + j
                        out[k] = fadd(out[k], exp[l_a + log[bj]], kind, p, q, exp, log, zech)
    return la * lb


@njit(**_rec)
def _kara(a, ao, b, bo, n, out, oo, thr, kind, p, q, exp, log, zech, neg):
    """out[oo:] += a[ao:ao+n] * b[bo:bo+n]; returns the number of field multiplications."""
    if n <= thr:
        return _school(a, ao, n, b, bo, n, out, oo, kind, p, q, exp, log, zech)
    h = n // 2
    n1 = n - h
    z0 = np.zeros(2 * h - 1, dtype=np.int64)
    z2 = np.zeros(2 * n1 - 1, dtype=np.int64)
    cnt = _kara(a, ao, b, bo, h, z0, 0, thr, kind, p, q, exp, log, zech, neg)
    cnt += _kara(a, ao + h, b, bo + h, n1, z2, 0, thr, kind, p, q, exp, log, zech, neg)
    sa = np.empty(n1, dtype=np.int64)
    sb = np.empty(n1, dtype=np.int64)
    for i in range(n1):
        sa[i] = a[ao + h + i]
        sb[i] = b[bo + h + i]
    for i in range(h):
        sa[i] = fadd(sa[i], a[ao + i], kind, p, q, exp, log, zech)
        sb[i] = fadd(sb[i], b[bo + i], kind, p, q, exp, log, zech)
    z1 = np.zeros(2 * n1 - 1, dtype=np.int64)
    cnt += _kara(sa, 0, sb, 0, n1, z1, 0, thr, kind, p, q, exp, log, zech, neg)
    for i in range(z0.size):
        z1[i] = fadd(z1[i], neg[z0[i]], kind, p, q, exp, log, zech)
    for i in range(z2.size):
        z1[i] = fadd(z1[i], neg[z2[i]], kind, p, q, exp, log, zech)
    for i in range(z0.size):
        out[oo + i] = fadd(out[oo + i], z0[i], kind, p, q, exp, log, zech)
    for i in range(z1.size):
        out[oo + h + i] = fadd(out[oo + h + i], z1[i], kind, p, q, exp, log, zech)
    for i in range(z2.size):
        out[oo + 2 * h + i] = fadd(out[oo + 2 * h + i], z2[i], kind, p, q, exp, log, zech)
    return cnt


@njit(**_rec)
def _mul_into(a, la, b, lb, out, thr, kind, p, q, exp, log, zech, neg):
    # requires la >= lb; long operand chopped into lb-sized pieces
    if lb <= thr:
        return _school(a, 0, la, b, 0, lb, out, 0, kind, p, q, exp, log, zech)
    cnt = 0
    pos = 0
    while pos + lb <= la:
        cnt += _kara(a, pos, b, 0, lb, out, pos, thr, kind, p, q, exp, log, zech, neg)
        pos += lb
    rest = la - pos
    if rest > 0:
        if rest <= thr:
            cnt += _school(a, pos, rest, b, 0, lb, out, pos, kind, p, q, exp, log, zech)
        else:
            # pad the tail to a balanced product
            t = np.zeros(lb, dtype=np.int64)
            for i in range(rest):
                t[i] = a[pos + i]
            tmp = np.zeros(2 * lb - 1, dtype=np.int64)
            cnt += _kara(t, 0, b, 0, lb, tmp, 0, thr, kind, p, q, exp, log, zech, neg)
            for i in range(rest + lb - 1):
                out[pos + i] = fadd(out[pos + i], tmp[i], kind, p, q, exp, log, zech)
    return cnt


@njit(**_rec)
def pmul(A, B, thr, ft):
    """Row-wise products; B has one row or as many as A. Returns (out, mult count)."""
    kind, p, q, exp, log, zech, neg = ft
    R = A.shape[0]
    la = A.shape[1]
    lb = B.shape[1]
    n = max(la + lb - 1, 0)
    out = np.zeros((R, n), dtype=np.int64)
    cnt = 0
    if la == 0 or lb == 0:
        return out, cnt
    ra = np.empty(la, dtype=np.int64)
    rb = np.empty(lb, dtype=np.int64)
    ro = np.empty(n, dtype=np.int64)
    for r in range(R):
        br = r if B.shape[0] > 1 else 0
        for i in range(la):
            ra[i] = A[r, i]
        for i in range(lb):
            rb[i] = B[br, i]
        for i in range(n):
            ro[i] = 0
        if la >= lb:
            cnt += _mul_into(ra, la, rb, lb, ro, thr, kind, p, q, exp, log, zech, neg)
        else:
            cnt += _mul_into(rb, lb, ra, la, ro, thr, kind, p, q, exp, log, zech, neg)
        for i in range(n):
            out[r, i] = ro[i]
    return out, cnt


@njit(**_opts)
def divmod_monic(A, P, ft):
    """Row-wise long division by a shared monic P. Returns (quot, rem)."""
    kind, p, q, exp, log, zech, neg = ft
    R = A.shape[0]
    la = A.shape[1]
    lp = P.shape[0]
    nq = max(la - lp + 1, 0)
    quo = np.zeros((R, nq), dtype=np.int64)
    rem = np.zeros((R, lp - 1), dtype=np.int64)
    work = np.empty(la, dtype=np.int64)
    for r in range(R):
        for i in range(la):
            work[i] = A[r, i]
        for k in range(la - 1, lp - 2, -1):
            c = work[k]
            if c == 0:
                continue
            sh = k - lp + 1
            quo[r, sh] = c
            nc = neg[c]
            for t in range(lp - 1):
                if P[t] != 0:
                    work[sh + t] = fadd(work[sh + t], fmul(nc, P[t], kind, p, exp, log), kind, p, q, exp, log, zech)
            work[k] = 0
        for i in range(min(lp - 1, la)):
            rem[r, i] = work[i]
    return quo, rem


@njit(**_opts)
def hasse_accumulate(dst, src, tt, ii, uu, W, ft):
    """dst[r, t, k-u] += W[j, k] * src[r, i, k] for every term j = (t, i, u) and k >= u."""
    kind, p, q, exp, log, zech, neg = ft
    R = dst.shape[0]
    qq = dst.shape[2]
    nt = ii.shape[0]
    for r in range(R):
        for j in range(nt):
            t = tt[j]
            i = ii[j]
            u = uu[j]
            for k in range(u, qq):
                w = W[j, k]
                x = src[r, i, k]
                if w != 0 and x != 0:
                    dst[r, t, k - u] = fadd(dst[r, t, k - u], fmul(w, x, kind, p, exp, log), kind, p, q, exp, log, zech)


@njit(**_opts)
def yadic_split(A, qq, nb, ft):
    """Digits of each row in base Y = X^qq - X: out[r, i] holds block i (degree < qq)."""
    kind, p, q, exp, log, zech, neg = ft
    R = A.shape[0]
    m = A.shape[1]
    out = np.zeros((R, nb, qq), dtype=np.int64)
    w = np.empty(m, dtype=np.int64)
    quo = np.empty(m, dtype=np.int64)
    for r in range(R):
        for k in range(m):
            w[k] = A[r, k]
        L = m
        for i in range(nb):
            if L <= qq:
                for k in range(L):
                    out[r, i, k] = w[k]
                L = 0
                break
            for k in range(L - qq):
                quo[k] = 0
            # X^k = X^(k-qq) Y + X^(k-qq+1)
            for k in range(L - 1, qq - 1, -1):
                c = w[k]
                if c != 0:
                    quo[k - qq] = c
                    w[k - qq + 1] = fadd(w[k - qq + 1], c, kind, p, q, exp, log, zech)
            for k in range(qq):
                out[r, i, k] = w[k]
            L = L - qq
            for k in range(L):
                w[k] = quo[k]
    return out


@njit(**_opts)
def yadic_join(Cb, m, ft):
    """Inverse of yadic_split: sum_i Cb[r, i] Y^i truncated to length m."""
    kind, p, q, exp, log, zech, neg = ft
    R = Cb.shape[0]
    nb = Cb.shape[1]
    qq = Cb.shape[2]
    size = nb * qq + 1
    out = np.zeros((R, m), dtype=np.int64)
    acc = np.zeros(size, dtype=np.int64)
    nxt = np.zeros(size, dtype=np.int64)
    for r in range(R):
        for k in range(size):
            acc[k] = 0
        L = 0
        for i in range(nb - 1, -1, -1):
            # acc <- acc * (X^qq - X) + Cb[r, i]
            for k in range(L + qq):
                nxt[k] = 0
            for k in range(L):
                c = acc[k]
                if c != 0:
                    nxt[k + qq] = fadd(nxt[k + qq], c, kind, p, q, exp, log, zech)
                    nxt[k + 1] = fadd(nxt[k + 1], neg[c], kind, p, q, exp, log, zech)
            for k in range(qq):
                nxt[k] = fadd(nxt[k], Cb[r, i, k], kind, p, q, exp, log, zech)
            L = L + qq if L > 0 else qq
            for k in range(L):
                acc[k] = nxt[k]
        for k in range(min(m, L)):
            out[r, k] = acc[k]
    return out
