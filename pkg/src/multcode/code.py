"""Multiplicity-code parameters, codeword layout and the systematic encoders.

A codeword holds q^n blocks of sigma symbols. Block j (graded-lex rank of j in
[q]^n) slot t (graded-lex rank of t in S_{s,n} = {|t| < s}) carries
H(F, t)(alpha_j). In the derivative segment C_{s,n} the same value sits at
index i = j + t q, so the layout is a fixed permutation of C_{s,n}.

Because d < sq, the simplex I_{d,n} is exactly the prefix of C_{s,n} made of
the members of weight <= d. The message therefore occupies C-ranks 0..k-1.
"""

from __future__ import annotations

import functools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb

import numpy as np

from . import hermite_multi as HM
from . import hermite_uni as HU
from . import instrument
from . import poly as P
from . import segments as S
from .field import GF

HIGH_RATE_THRESHOLD = float(os.environ.get("MULTCODE_HIGH_RATE_THRESHOLD", "0.5"))

LOW = "low"
HIGH = "high"
AUTO = "auto"


class ParameterError(ValueError):
    pass


class LayoutError(ValueError):
    pass


@dataclass(frozen=True)
class CodeParams:
    F: GF
    n: int
    s: int
    d: int
    k: int = field(init=False)
    sigma: int = field(init=False)
    length: int = field(init=False)

    def __post_init__(self):
        q = self.F.q
        if self.n < 1:
            raise ParameterError("n must be >= 1")
        if self.s < 1:
            raise ParameterError("s must be >= 1")
        if self.d < 0:
            raise ParameterError("d must be >= 0")
        if self.d >= self.s * q:
            raise ParameterError(f"need d < s*q (d={self.d}, s={self.s}, q={q})")
        object.__setattr__(self, "k", comb(self.n + self.d, self.n))
        object.__setattr__(self, "sigma", comb(self.n + self.s - 1, self.n))
        object.__setattr__(self, "length", q**self.n)

    @property
    def q(self):
        return self.F.q

    @property
    def N(self):
        """Number of field symbols in a codeword."""
        return self.sigma * self.length

    @property
    def rate_fraction(self):
        return Fraction(self.k, self.N)

    @property
    def rate(self):
        return self.k / self.N

    @property
    def designed_distance(self):
        """(1 - d/(sq)) q^n, as a float; blocks, not symbols."""
        return float((1 - Fraction(self.d, self.s * self.q)) * self.length)

    @property
    def min_nonzero_blocks(self):
        return ceil((1 - Fraction(self.d, self.s * self.q)) * self.length)

    def as_dict(self):
        return {
            "q": self.q,
            "p": self.F.p,
            "m": self.F.m,
            "n": self.n,
            "s": self.s,
            "d": self.d,
            "k": self.k,
            "sigma": self.sigma,
            "length": self.length,
            "N": self.N,
            "rate": self.rate,
            "designed_distance": self.designed_distance,
        }


def code_params(q, n, s, d, modulus=None) -> CodeParams:
    F = q if isinstance(q, GF) else GF.get(int(q), modulus)
    return CodeParams(F, int(n), int(s), int(d))


# -- layout


@functools.lru_cache(maxsize=128)
def _layout(q, n, s):
    # perm[c] = flat codeword position of C-rank c
    C = S.deriv(s, n, q)
    blocks = S.box((q,) * n)
    slots = S.simplex(s - 1, n)
    j = C.members % q
    t = C.members // q
    perm = blocks.rank_many(j) * slots.size + slots.rank_many(t)
    perm.setflags(write=False)
    return perm


def seg_to_blocks(params: CodeParams, v):
    """Vectors over C_{s,n} (..., |C|) to codewords (..., q^n, sigma)."""
    v = np.asarray(v, dtype=np.int64)
    perm = _layout(params.q, params.n, params.s)
    if v.shape[-1] != perm.size:
        raise LayoutError(f"expected {perm.size} entries, got {v.shape[-1]}")
    out = np.empty(v.shape, dtype=np.int64)
    out[..., perm] = v
    return out.reshape(v.shape[:-1] + (params.length, params.sigma))


def blocks_to_seg(params: CodeParams, c):
    c = np.asarray(c, dtype=np.int64)
    if c.shape[-2:] != (params.length, params.sigma):
        raise LayoutError(f"expected blocks of shape ({params.length}, {params.sigma}), got {c.shape[-2:]}")
    flat = c.reshape(c.shape[:-2] + (params.N,))
    return flat[..., _layout(params.q, params.n, params.s)]


def systematic_positions(params: CodeParams):
    """(block, slot) of each message symbol, in message order."""
    perm = _layout(params.q, params.n, params.s)[: params.k]
    return np.stack([perm // params.sigma, perm % params.sigma], axis=1)


def _check_msg(params, m):
    m = np.asarray(m, dtype=np.int64)
    if m.shape[-1] != params.k:
        raise LayoutError(f"message must have {params.k} symbols, got {m.shape[-1]}")
    if m.size and (m.min() < 0 or m.max() >= params.q):
        raise LayoutError("message symbols must be field indices in [0, q)")
    return m


def _segs(params):
    return S.simplex(params.d, params.n), S.deriv(params.s, params.n, params.q)


# -- encoders


def encode_low_rate(params: CodeParams, m, fuse_conversions=True, method=None):
    """Interpolate over I_{d,n}, then evaluate over C_{s,n} with the degree bound d.

    With fuse_conversions the axis-1 transforms stay on the monomial basis
    across the interface instead of converting to Newton and back. The
    systematic slots are overwritten by m afterwards, which they already equal.
    """
    F = params.F
    m = _check_msg(params, m)
    I, C = _segs(params)
    basis = P.MONOMIAL if fuse_conversions else P.NEWTON
    instrument.note("encode_low")
    with instrument.phase("low.interp"):
        coeffs = HM.interp_array(F, I, m, basis_out=basis, method=method)
    ext = np.zeros(m.shape[:-1] + (C.size,), dtype=np.int64)
    ext[..., : params.k] = coeffs
    with instrument.phase("low.eval"):
        vals = HM.eval_array(F, C, ext, support_bound=params.d, basis_in=basis, method=method)
    vals[..., : params.k] = m
    return seg_to_blocks(params, vals)


def high_rate_internal(params: CodeParams, m, method=None):
    """Working vector of the high-rate encoder over C_{s,n}.

    Slots of I_{d,n} hold the Newton coefficients of the degree-d interpolant
    F_I; slots of R_{d,s,n} hold E(F_I, j).
    """
    F = params.F
    q, n, s, d = params.q, params.n, params.s, params.d
    m = _check_msg(params, m)
    C = S.deriv(s, n, q)
    R = S.residual_set(d, s, n, q)
    instrument.note("encode_high")
    ext = np.zeros(m.shape[:-1] + (C.size,), dtype=np.int64)
    ext[..., : params.k] = m
    with instrument.phase("high.interp"):
        X = HM.interp_array(F, C, ext, method=method)
    with instrument.phase("high.eval_R"):
        XR = F.negate(X[..., R.c_index])
        if R.size == 0:
            vals = XR
        elif n == 1:
            r = HU.residual_r(F, d)
            U = P.trunc_pow_qm1(F, r, s - r)
            vals = HU.eval_R_rows(F, XR.reshape(-1, R.size), d, s, U, method=method).reshape(XR.shape)
        else:
            vals = HM.eval_R_array(F, d, s, n, XR, method=method)
    X[..., R.c_index] = vals
    return X


def encode_high_rate(params: CodeParams, m, method=None):
    """Interpolate the zero-extended message over C_{s,n}, then evaluate only the residual part."""
    m = _check_msg(params, m)
    X = high_rate_internal(params, m, method)
    X[..., : params.k] = m
    return seg_to_blocks(params, X)


def choose_algo(params: CodeParams, threshold=None):
    threshold = HIGH_RATE_THRESHOLD if threshold is None else threshold
    return HIGH if params.rate > threshold else LOW


def encode(params: CodeParams, m, algo=AUTO, threshold=None, fuse_conversions=True, method=None):
    if algo == AUTO:
        algo = choose_algo(params, threshold)
    if algo == LOW:
        return encode_low_rate(params, m, fuse_conversions, method)
    if algo == HIGH:
        return encode_high_rate(params, m, method)
    raise ValueError(f"unknown algorithm {algo!r}")


def extract_message(params: CodeParams, c):
    return blocks_to_seg(params, c)[..., : params.k]


def nonzero_blocks(c):
    return np.count_nonzero(np.any(np.asarray(c) != 0, axis=-1), axis=-1)
