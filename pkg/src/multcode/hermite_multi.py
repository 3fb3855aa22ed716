"""Multivariate Hermite evaluation/interpolation by axis sweeps.

Each sweep along axis l gathers every fiber of the segment along l into a
batch, runs the univariate routine on the batch and scatters the results
back. Fibers of one sweep are disjoint, so the order of the batch is
irrelevant to the result.

Arrays may carry leading batch dimensions: data has shape (..., |seg|).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import hermite_uni as HU
from . import instrument
from . import poly as P
from .field import GF
from .segments import InitialSegment, ResidualSet, residual_set

NEWTON = HU.NEWTON
MONOMIAL = HU.MONOMIAL

DEBUG = os.environ.get("MULTCODE_DEBUG", "") not in ("", "0")

NEWTON_COEFFS = "newton_coeffs"
E_VALUES = "e_values"
MIXED = "mixed"


class SweepError(ValueError):
    pass


@dataclass
class SegVector:
    """Field values indexed by a segment in canonical order."""

    F: GF
    seg: object  # InitialSegment or ResidualSet
    data: np.ndarray
    meaning: str = NEWTON_COEFFS

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=np.int64)
        if self.data.shape[-1] != len(self.seg):
            raise SweepError(f"data length {self.data.shape[-1]} does not match |seg| = {len(self.seg)}")


def _flat(X, N):
    X = np.asarray(X, dtype=np.int64)
    if X.shape[-1] != N:
        raise SweepError(f"data length {X.shape[-1]} does not match segment size {N}")
    lead = X.shape[:-1]
    return np.array(X.reshape(int(np.prod(lead, dtype=np.int64)), N)), lead


def _apply_groups(X, idx, fn):
    # gather fibers (B, nf, L) -> (B*nf, L), transform, scatter back
    B = X.shape[0]
    nf, L = idx.shape
    rows = X[:, idx].reshape(B * nf, L)
    X[:, idx] = fn(rows).reshape(B, nf, L)


def eval_array(F, seg: InitialSegment, X, support_bound=None, basis_in=NEWTON, method=None, on_sweep=None):
    """Hermite evaluation over seg of the coefficient arrays X (..., |seg|).

    basis_in applies to axis 1 only; the other axes are always Newton.
    With support_bound=d the input must vanish outside I_{d,n}: fibers whose
    untouched trailing coordinates already weigh more than d are skipped and
    the remaining ones get the degree hint d - (trailing weight).
    """
    X, lead = _flat(X, seg.size)
    n = seg.n
    instrument.note("multi_eval")
    for ax in range(1, n + 1):
        basis = basis_in if ax == 1 else NEWTON
        for L, grp in seg.fibers(ax).items():
            if support_bound is None:
                _apply_groups(X, grp.idx, lambda R: HU.eval_rows(F, R, basis, method=method))
                continue
            tail = grp.keys[:, ax - 1 :].sum(axis=1)
            nz = support_bound - tail + 1
            for h in np.unique(nz):
                sel = nz == h
                idx = grp.idx[sel]
                if h <= 0:
                    if DEBUG and np.any(X[:, idx]):
                        raise SweepError("support bound violated: skipped fiber is nonzero")
                    continue
                if DEBUG and np.any(X[:, idx[:, h:]]):
                    raise SweepError("support bound violated: coefficient beyond the degree hint")
                _apply_groups(X, idx, lambda R, h=int(h): HU.eval_rows(F, R, basis, nz=h, method=method))
        if on_sweep is not None:
            on_sweep(ax, X.reshape(lead + (seg.size,)))
    return X.reshape(lead + (seg.size,))


def interp_array(F, seg: InitialSegment, X, basis_out=NEWTON, method=None, on_sweep=None):
    """Inverse of eval_array: axes swept n..1; basis_out applies to axis 1 only."""
    X, lead = _flat(X, seg.size)
    n = seg.n
    instrument.note("multi_interp")
    for ax in range(n, 0, -1):
        basis = basis_out if ax == 1 else NEWTON
        for L, grp in seg.fibers(ax).items():
            _apply_groups(X, grp.idx, lambda R: HU.interp_rows(F, R, basis, method=method))
        if on_sweep is not None:
            on_sweep(ax, X.reshape(lead + (seg.size,)))
    return X.reshape(lead + (seg.size,))


def eval_R_array(F, d, s, n, X, method=None):
    """Values on R_{d,s,n} of F = sum_{i in R} f_i N_i, from the coefficients X (..., |R|)."""
    q = F.q
    if n < 1:
        raise SweepError("n must be >= 1")
    if d >= s * q:
        raise SweepError(f"need d < s q (d={d}, s={s}, q={q})")
    Rset = residual_set(d, s, n, q)
    X, lead = _flat(X, Rset.size)
    instrument.note("multi_eval_R")
    rmax = HU.residual_r(F, d)
    Ufam = P.trunc_pow_family(F, rmax, s)
    C = Rset.C
    c_to_r = Rset.c_to_r
    for ax in range(1, n + 1):
        for L, grp in C.fibers(ax).items():
            sp = L // q
            kw = grp.keys.sum(axis=1)
            for dd in np.unique(d - kw):
                dd = int(dd)
                lo = max(dd + 1, 0)
                if lo >= L:
                    continue  # R_{d',s',1} is empty
                sel = (d - kw) == dd
                ridx = c_to_r[grp.idx[sel][:, lo:]]
                r = HU.residual_r(F, dd)
                U = Ufam[r][: sp - r]
                _apply_groups(X, ridx, lambda R, dd=dd, U=U: HU.eval_R_rows(F, R, dd, sp, U, method=method))
    return X.reshape(lead + (Rset.size,))


def _convert(F, seg, X, fn):
    X, lead = _flat(X, seg.size)
    for ax in range(1, seg.n + 1):
        for L, grp in seg.fibers(ax).items():
            _apply_groups(X, grp.idx, fn)
    return X.reshape(lead + (seg.size,))


def to_newton_array(F, seg, X):
    """Monomial coefficients over seg to Newton coefficients, one axis at a time."""
    return _convert(F, seg, X, lambda R: P.monomial_to_newton_rows(F, R))


def to_monomial_array(F, seg, X):
    return _convert(F, seg, X, lambda R: P.newton_to_monomial_rows(F, R))


# -- SegVector API


def multi_hermite_eval(v: SegVector, support_bound=None, basis_in=NEWTON, method=None, on_sweep=None) -> SegVector:
    out = eval_array(v.F, v.seg, v.data, support_bound, basis_in, method, on_sweep)
    return SegVector(v.F, v.seg, out, E_VALUES)


def multi_hermite_interp(v: SegVector, basis_out=NEWTON, method=None, on_sweep=None) -> SegVector:
    out = interp_array(v.F, v.seg, v.data, basis_out, method, on_sweep)
    return SegVector(v.F, v.seg, out, NEWTON_COEFFS if basis_out == NEWTON else MIXED)


def multi_hermite_eval_R(d, s, v: SegVector, method=None) -> SegVector:
    seg = v.seg
    if not isinstance(seg, ResidualSet):
        raise SweepError("expected a vector over a residual set")
    if seg.n < 2:
        raise SweepError("multi_hermite_eval_R needs n >= 2; use hermite_uni.uni_hermite_eval_R")
    if (seg.d, seg.s) != (d, s):
        raise SweepError("residual set parameters do not match d, s")
    out = eval_R_array(v.F, d, s, seg.n, v.data, method)
    return SegVector(v.F, seg, out, E_VALUES)
