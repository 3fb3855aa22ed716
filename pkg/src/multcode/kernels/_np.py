"""Pure-numpy kernels with the same signatures as the compiled ones.

Products of field elements go through log/antilog tables (extension fields) or
integer arithmetic mod p (prime fields). Constant-matrix products expand every
field element into its F_p coordinates and use one integer matmul.
"""

import numpy as np

_cache = {}


def _mul(a, b, ft):
    kind, p, q, exp, log, zech, neg = ft
    if kind == 0:
        return (a * b) % p
    z = (a == 0) | (b == 0)
    r = exp[np.where(z, 0, log[a] + log[b])]
    return np.where(z, 0, r)


def _add(a, b, ft):
    kind, p, q, exp, log, zech, neg = ft
    if kind == 0:
        return (a + b) % p
    if kind == 1:
        return a ^ b
    a, b = np.broadcast_arrays(a, b)
    la = log[a]
    k = (log[b] - la) % (q - 1)
    z = zech[k]
    r = exp[np.where((z < 0) | (a == 0), 0, la + z)]
    r = np.where(z < 0, 0, r)
    return np.where(a == 0, b, np.where(b == 0, a, r))


def vadd(a, b, ft):
    return _add(a, b, ft)


def vsub(a, b, ft):
    return _add(a, ft[6][b], ft)


def vmul(a, b, ft):
    return _mul(a, b, ft)


def vsmul(c, a, ft):
    return _mul(np.int64(c), a, ft)


def _digit_info(ft):
    kind, p, q, exp, log, zech, neg = ft
    key = (p, q, id(exp))
    info = _cache.get(key)
    if info is None:
        m = 0
        w = 1
        while w < q:
            w *= p
            m += 1
        weights = p ** np.arange(m, dtype=np.int64)
        info = (m, weights)
        _cache[key] = info
    return info


def _to_digits(x, p, weights):
    return (x[..., None] // weights) % p


def _expand(M, ft):
    """F_p matrix of x -> M x acting on stacked digit vectors."""
    kind, p, q, exp, log, zech, neg = ft
    m, weights = _digit_info(ft)
    r, c = M.shape
    # column k of the block for entry M[i,j] holds the digits of M[i,j] * Y^k
    basis = weights  # alpha_{p^k} = Y^k
    prods = _mul(M[:, :, None], basis[None, None, :], ft)  # (r, c, m)
    dig = _to_digits(prods, p, weights)  # (r, c, m_in, m_out)
    big = dig.transpose(0, 3, 1, 2).reshape(r * m, c * m)
    return big


def cmatmul(X, M, logM, ft):
    kind, p, q, exp, log, zech, neg = ft
    if kind == 0:
        return (X @ M.T) % p
    key = ("mat", id(M), M.shape, ft[2])
    hit = _cache.get(key)
    if hit is not None and hit[0] is M:
        big = hit[1]
    else:
        big = _expand(M, ft)
        if len(_cache) > 512:
            _cache.clear()
        _cache[key] = (M, big)
    m, weights = _digit_info(ft)
    R, c = X.shape
    xd = _to_digits(X, p, weights).reshape(R, c * m)
    yd = (xd @ big.T) % p
    return yd.reshape(R, -1, m) @ weights


cmatmul_par = cmatmul


def pmul(A, B, thr, ft):
    R, la = A.shape
    lb = B.shape[1]
    out = np.zeros((R, max(la + lb - 1, 0)), dtype=np.int64)
    if la == 0 or lb == 0:
        return out, 0
    if la < lb:
        A, B = B, A
        la, lb = lb, la
        if A.shape[0] != R:
            A = np.broadcast_to(A, (R, la))
    for j in range(lb):
        col = B[:, j : j + 1]
        out[:, j : j + la] = _add(out[:, j : j + la], _mul(A, col, ft), ft)
    return out, R * la * lb


def divmod_monic(A, P, ft):
    neg = ft[6]
    R, la = A.shape
    lp = P.shape[0]
    nq = max(la - lp + 1, 0)
    work = A.copy()
    quo = np.zeros((R, nq), dtype=np.int64)
    Pl = P[: lp - 1]
    for k in range(la - 1, lp - 2, -1):
        c = work[:, k].copy()
        sh = k - lp + 1
        quo[:, sh] = c
        work[:, sh : sh + lp - 1] = _add(work[:, sh : sh + lp - 1], _mul(neg[c][:, None], Pl[None, :], ft), ft)
        work[:, k] = 0
    rem = np.zeros((R, lp - 1), dtype=np.int64)
    w = min(lp - 1, la)
    rem[:, :w] = work[:, :w]
    return quo, rem


def hasse_accumulate(dst, src, tt, ii, uu, W, ft):
    qq = dst.shape[2]
    for j in range(ii.shape[0]):
        t, i, u = int(tt[j]), int(ii[j]), int(uu[j])
        prod = _mul(src[:, i, u:], W[j, u:][None, :], ft)
        dst[:, t, : qq - u] = _add(dst[:, t, : qq - u], prod, ft)


def yadic_split(A, qq, nb, ft):
    neg = ft[6]
    R, m = A.shape
    out = np.zeros((R, nb, qq), dtype=np.int64)
    w = A.copy()
    L = m
    for i in range(nb):
        if L <= qq:
            out[:, i, :L] = w[:, :L]
            break
        quo = np.zeros((R, L - qq), dtype=np.int64)
        for k in range(L - 1, qq - 1, -1):
            c = w[:, k]
            quo[:, k - qq] = c
            w[:, k - qq + 1] = _add(w[:, k - qq + 1], c, ft)
        out[:, i, :] = w[:, :qq]
        L -= qq
        w = quo
    return out


def yadic_join(Cb, m, ft):
    neg = ft[6]
    R, nb, qq = Cb.shape
    acc = np.zeros((R, 0), dtype=np.int64)
    for i in range(nb - 1, -1, -1):
        L = acc.shape[1]
        nxt = np.zeros((R, max(L + qq, qq)), dtype=np.int64)
        if L:
            nxt[:, qq : qq + L] = acc
            nxt[:, 1 : 1 + L] = _add(nxt[:, 1 : 1 + L], neg[acc], ft)
        nxt[:, :qq] = _add(nxt[:, :qq], Cb[:, i, :], ft)
        acc = nxt
    out = np.zeros((R, m), dtype=np.int64)
    w = min(m, acc.shape[1])
    out[:, :w] = acc[:, :w]
    return out
