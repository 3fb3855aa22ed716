"""Finite initial segments of N^n in graded-lex order, and their axis fibers.

Members are ordered by weight |i|, ties broken lexicographically. Axes are
numbered 1..n in the public API. A fiber along axis l is the set of members
sharing all coordinates except i_l; since segments are downward closed each
fiber is an interval [0, L) in i_l.
"""

from __future__ import annotations

import functools
from math import comb

import numpy as np

__all__ = [
    "InitialSegment",
    "ResidualSet",
    "FiberGroup",
    "simplex",
    "deriv",
    "box",
    "interval",
    "general",
    "graded_lex_order",
]


class SegmentError(ValueError):
    pass


def graded_lex_order(pts):
    """Permutation sorting the rows of pts by weight, then lexicographically."""
    pts = np.asarray(pts, dtype=np.int64)
    if pts.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    keys = [pts[:, c] for c in range(pts.shape[1] - 1, -1, -1)]
    keys.append(pts.sum(axis=1))
    return np.lexsort(keys)


def _grid(bounds):
    if len(bounds) == 0:
        return np.zeros((1, 0), dtype=np.int64)
    axes = np.meshgrid(*[np.arange(b, dtype=np.int64) for b in bounds], indexing="ij")
    return np.stack([a.ravel() for a in axes], axis=1)


def _simplex_points(d, n):
    if d < 0:
        return np.zeros((0, n), dtype=np.int64)
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    # build by appending one coordinate at a time
    pts = np.arange(d + 1, dtype=np.int64)[:, None]
    for _ in range(n - 1):
        w = pts.sum(axis=1)
        reps = d + 1 - w
        base = np.repeat(pts, reps, axis=0)
        starts = np.cumsum(reps) - reps
        last = np.arange(base.shape[0]) - np.repeat(starts, reps)
        pts = np.concatenate([base, last[:, None]], axis=1)
    return pts


class FiberGroup:
    """All fibers of one length along an axis: ``idx`` (nf, L) ranks, ``keys`` (nf, n-1)."""

    __slots__ = ("length", "idx", "keys")

    def __init__(self, length, idx, keys):
        self.length = length
        self.idx = idx
        self.keys = keys

    def __repr__(self):
        return f"FiberGroup(length={self.length}, count={self.idx.shape[0]})"


class InitialSegment:
    """A finite downward-closed subset of N^n with closed-form ranking for the parametric kinds."""

    def __init__(self, kind, n, params, members=None):
        self.kind = kind
        self.n = int(n)
        self.params = params
        if members is None:
            members = self._generate()
        members = np.asarray(members, dtype=np.int64)
        if self.n > 0:
            members = members.reshape(-1, self.n)
        self.members = members[graded_lex_order(members)] if members.shape[0] else members
        self.members.setflags(write=False)
        self.size = self.members.shape[0]
        self._base = int(self.members.max()) + 1 if self.size and self.n else 1
        keys = self._encode(self.members)
        self._order = np.argsort(keys, kind="stable")
        self._sorted_keys = keys[self._order]
        self._fibers = {}
        for ax in range(1, self.n + 1):
            self._fibers[ax] = self._build_fibers(ax)

    # -- construction

    def _generate(self):
        n = self.n
        if self.kind == "simplex":
            return _simplex_points(self.params[0], n)
        if self.kind == "deriv":
            s, q = self.params
            if s < 1:
                return np.zeros((0, n), dtype=np.int64)
            t = _simplex_points(s - 1, n)
            j = _grid([q] * n)
            return (t[:, None, :] * q + j[None, :, :]).reshape(t.shape[0] * j.shape[0], n)
        if self.kind in ("box", "interval"):
            return _grid(self.params)
        raise SegmentError(f"kind {self.kind!r} needs explicit members")

    def _encode(self, pts):
        pts = np.asarray(pts, dtype=np.int64)
        if self.n == 0:
            return np.zeros(pts.shape[0], dtype=np.int64)
        w = self._base ** np.arange(self.n - 1, -1, -1, dtype=np.int64)
        return pts @ w

    def _build_fibers(self, ax):
        n = self.n
        c = ax - 1
        P = self.members
        rest = np.delete(P, c, axis=1)
        if self.size == 0:
            return {}
        keys = [P[:, c]] + [rest[:, k] for k in range(n - 2, -1, -1)] + [rest.sum(axis=1)]
        order = np.lexsort(keys)
        r = rest[order]
        brk = np.ones(self.size, dtype=bool)
        if self.size > 1:
            brk[1:] = np.any(r[1:] != r[:-1], axis=1)
        starts = np.flatnonzero(brk)
        lengths = np.diff(np.append(starts, self.size))
        groups = {}
        for L in np.unique(lengths):
            sel = starts[lengths == L]
            idx = order[sel[:, None] + np.arange(L)[None, :]]
            groups[int(L)] = FiberGroup(int(L), idx, r[sel])
        return groups

    # -- queries

    def __len__(self):
        return self.size

    def __iter__(self):
        return (tuple(int(x) for x in row) for row in self.members)

    def __contains__(self, i):
        return self._lookup(np.asarray([i], dtype=np.int64))[0] >= 0

    def __repr__(self):
        return f"InitialSegment({self.kind}, n={self.n}, params={self.params}, size={self.size})"

    def __eq__(self, other):
        return (
            isinstance(other, InitialSegment)
            and self.n == other.n
            and self.size == other.size
            and bool(np.array_equal(self.members, other.members))
        )

    def __hash__(self):
        return hash((self.kind, self.n, self.params, self.size))

    def _lookup(self, pts):
        pts = np.asarray(pts, dtype=np.int64)
        pts = pts.reshape(pts.shape[0] if self.n == 0 else -1, self.n)
        out = np.full(pts.shape[0], -1, dtype=np.int64)
        if self.size == 0:
            return out
        ok = np.all((pts >= 0) & (pts < self._base), axis=1)
        keys = self._encode(np.where(ok[:, None], pts, 0))
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, self.size - 1)
        hit = ok & (self._sorted_keys[pos] == keys)
        out[hit] = self._order[pos[hit]]
        return out

    def rank_many(self, pts):
        """Vectorized ranks; raises on any non-member."""
        r = self._lookup(pts)
        if np.any(r < 0):
            raise SegmentError("point not in segment")
        return r

    def rank(self, i):
        """0-based graded-lex position of i, computed combinatorially for the parametric kinds."""
        i = tuple(int(x) for x in i)
        if len(i) != self.n:
            raise SegmentError(f"expected a {self.n}-index")
        if i not in self:
            raise SegmentError(f"{i} is not a member")
        if self.kind == "general":
            return int(self._lookup(np.asarray([i]))[0])
        return _graded_rank(self._counter(), self.n, i)

    def unrank(self, r):
        if not 0 <= r < self.size:
            raise SegmentError("rank out of range")
        return tuple(int(x) for x in self.members[r])

    def _counter(self):
        n = self.n
        if self.kind == "simplex":
            return _SimplexCount(n)
        if self.kind == "deriv":
            s, q = self.params
            return _DerivCount(n, q, s - 1)
        return _BoxCount(tuple(self.params))

    # -- geometry

    def _axis(self, ax):
        if not 1 <= ax <= self.n:
            raise SegmentError(f"axis {ax} out of range 1..{self.n}")
        return ax - 1

    def project_pi(self, ax):
        """Drop coordinate ax; n = 1 gives the one-point segment in N^0."""
        c = self._axis(ax)
        if self.kind == "simplex":
            return simplex(self.params[0], self.n - 1)
        if self.kind == "deriv":
            return deriv(self.params[0], self.n - 1, self.params[1])
        if self.kind in ("box", "interval"):
            b = list(self.params)
            del b[c]
            return box(b)
        rest = np.unique(np.delete(self.members, c, axis=1), axis=0)
        return general(rest, self.n - 1)

    def fiber_mu(self, ax, k):
        """The fiber through k along ax, as an interval."""
        return interval(self._fiber_len(ax, k))

    def _fiber_len(self, ax, k):
        c = self._axis(ax)
        k = tuple(int(x) for x in k)
        if len(k) != self.n - 1:
            raise SegmentError("fiber key has the wrong length")
        if self.kind == "simplex":
            L = self.params[0] - sum(k) + 1
        elif self.kind == "deriv":
            s, q = self.params
            L = (s - sum(x // q for x in k)) * q
        else:
            pt = list(k)
            pt.insert(c, 0)
            L = 0
            while tuple(pt) in self:
                L += 1
                pt[c] += 1
        if any(x < 0 for x in k) or L <= 0:
            raise SegmentError(f"{k} is not in the projection")
        return L

    def fiber_flat_indices(self, ax, k):
        c = self._axis(ax)
        L = self._fiber_len(ax, k)
        pts = np.repeat(np.asarray([list(k)], dtype=np.int64), L, axis=0)
        pts = np.insert(pts, c, np.arange(L), axis=1)
        return self.rank_many(pts)

    def fibers(self, ax):
        """Fibers along ax grouped by length: {L: FiberGroup}, fibers within a group in key order."""
        self._axis(ax)
        return self._fibers[ax]

    def lam(self, i):
        """{j : (j, i) in I} for a trailing tuple i."""
        i = np.asarray(i, dtype=np.int64).reshape(-1)
        l = i.size
        if not 1 <= l < self.n:
            raise SegmentError("need 1 <= len(i) < n")
        P = self.members
        sel = np.all(P[:, self.n - l :] == i, axis=1)
        return general(P[sel, : self.n - l], self.n - l)

    def rho(self, i):
        """{j : (i, j) in I} for a leading tuple i."""
        i = np.asarray(i, dtype=np.int64).reshape(-1)
        l = i.size
        if not 1 <= l < self.n:
            raise SegmentError("need 1 <= len(i) < n")
        P = self.members
        sel = np.all(P[:, :l] == i, axis=1)
        return general(P[sel, l:], self.n - l)

    def is_downward_closed(self):
        P = self.members
        for c in range(self.n):
            lower = P.copy()
            lower[:, c] -= 1
            lower = lower[lower[:, c] >= 0]
            if np.any(self._lookup(lower) < 0):
                return False
        return True


# -- closed-form counting used by rank


class _SimplexCount:
    def __init__(self, n):
        self.n = n

    start = 0

    def step(self, state, pos, v):
        return state

    def count(self, k, W, state):
        if W < 0:
            return 0
        if k == 0:
            return 1 if W == 0 else 0
        return comb(W + k - 1, k - 1)


class _DerivCount:
    """Vectors with sum of (x bdiv q) at most a budget."""

    def __init__(self, n, q, budget):
        self.n, self.q = n, q
        self.start = budget

    def step(self, state, pos, v):
        nb = state - v // self.q
        return nb if nb >= 0 else None

    def count(self, k, W, state):
        return _deriv_count(self.q, k, W, state)


@functools.lru_cache(maxsize=None)
def _deriv_count(q, k, W, B):
    if W < 0 or B < 0:
        return 0
    if k == 0:
        return 1 if W == 0 else 0
    tot = 0
    for x in range(W + 1):
        t = x // q
        if t > B:
            break
        tot += _deriv_count(q, k - 1, W - x, B - t)
    return tot


class _BoxCount:
    def __init__(self, bounds):
        self.bounds = bounds
        self.n = len(bounds)

    start = 0

    def step(self, state, pos, v):
        return state + 1 if v < self.bounds[pos] else None

    def count(self, k, W, state):
        return _box_count(self.bounds[self.n - k :], W)


@functools.lru_cache(maxsize=None)
def _box_count(bounds, W):
    if W < 0:
        return 0
    if not bounds:
        return 1 if W == 0 else 0
    return sum(_box_count(bounds[1:], W - x) for x in range(min(bounds[0], W + 1)))


def _graded_rank(ctr, n, i):
    w = sum(i)
    r = sum(ctr.count(n, w2, ctr.start) for w2 in range(w))
    state = ctr.start
    W = w
    for pos in range(n):
        for v in range(i[pos]):
            st = ctr.step(state, pos, v)
            if st is not None:
                r += ctr.count(n - pos - 1, W - v, st)
        state = ctr.step(state, pos, i[pos])
        W -= i[pos]
    return r


# -- factories (cached: segments are immutable)


@functools.lru_cache(maxsize=512)
def simplex(d, n):
    """I_{d,n} = {i : |i| <= d}; empty for d < 0."""
    return InitialSegment("simplex", n, (int(d),))


@functools.lru_cache(maxsize=512)
def deriv(s, n, q):
    """C_{s,n} = {j + t q : j in [q]^n, |t| < s}."""
    return InitialSegment("deriv", n, (int(s), int(q)))


def box(bounds):
    bounds = tuple(int(b) for b in bounds)
    return _box(bounds)


@functools.lru_cache(maxsize=512)
def _box(bounds):
    return InitialSegment("box", len(bounds), bounds)


def interval(m):
    """[m] = {0, ..., m-1} in N^1."""
    return _interval(int(m))


@functools.lru_cache(maxsize=512)
def _interval(m):
    return InitialSegment("interval", 1, (m,))


def general(members, n=None):
    members = np.asarray(members, dtype=np.int64)
    if n is None:
        n = members.shape[1]
    if n > 0:
        members = members.reshape(-1, n)
    seg = InitialSegment("general", n, None, members)
    if not seg.is_downward_closed():
        raise SegmentError("member list is not downward closed")
    return seg


class ResidualSet:
    """R_{d,s,n} = C_{s,n} minus I_{d,n}, in the order inherited from C_{s,n}."""

    def __init__(self, d, s, n, q):
        self.d, self.s, self.n, self.q = int(d), int(s), int(n), int(q)
        self.C = deriv(s, n, q)
        w = self.C.members.sum(axis=1)
        self.mask = w > self.d
        self.c_index = np.flatnonzero(self.mask)  # C-rank of each R member
        self.c_to_r = np.full(self.C.size, -1, dtype=np.int64)
        self.c_to_r[self.c_index] = np.arange(self.c_index.size)
        self.members = self.C.members[self.c_index]
        self.size = self.c_index.size

    def __len__(self):
        return self.size

    def __contains__(self, i):
        i = tuple(int(x) for x in i)
        return i in self.C and sum(i) > self.d

    def rank(self, i):
        r = self.c_to_r[self.C.rank(i)]
        if r < 0:
            raise SegmentError(f"{tuple(i)} is not in the residual set")
        return int(r)

    def unrank(self, r):
        return tuple(int(x) for x in self.members[r])

    def __repr__(self):
        return f"ResidualSet(d={self.d}, s={self.s}, n={self.n}, q={self.q}, size={self.size})"


@functools.lru_cache(maxsize=256)
def residual_set(d, s, n, q):
    return ResidualSet(d, s, n, q)
