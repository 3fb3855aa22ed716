"""Scaling sweeps for the two encoders: wall time and field-multiplication counts."""

from __future__ import annotations

import csv
import io
import json
import time

import numpy as np

from . import code as K
from . import instrument

COLUMNS = ("q", "n", "s", "d", "N", "algo", "wall_ns", "mult_count")


def degree_for(q, s, frac=0.75):
    """d = floor(frac * s * q), clipped to the valid range."""
    return min(int(frac * s * q), s * q - 1)


def run_one(params, algo, repeats=3, seed=0):
    rng = np.random.default_rng(seed)
    m = rng.integers(0, params.q, params.k)
    K.encode(params, m, algo)  # warm caches and compiled kernels
    best = None
    for _ in range(repeats):
        t0 = time.perf_counter_ns()
        with instrument.counting() as tally:
            K.encode(params, m, algo)
        dt = time.perf_counter_ns() - t0
        best = dt if best is None else min(best, dt)
    return {
        "q": params.q,
        "n": params.n,
        "s": params.s,
        "d": params.d,
        "N": params.N,
        "algo": algo,
        "wall_ns": best,
        "mult_count": tally.mults,
        "phases": dict(tally.phases),
    }


def sweep(q, n, s_values, algos=("low", "high"), frac=0.75, repeats=3):
    rows = []
    for algo in algos:
        for s in s_values:
            p = K.code_params(q, n, s, degree_for(q, s, frac))
            rows.append(run_one(p, algo, repeats))
    return rows


def loglog_slope(x, y):
    x = np.log(np.asarray(x, dtype=float))
    y = np.log(np.asarray(y, dtype=float))
    if x.size < 2 or np.ptp(x) == 0:
        return float("nan")
    return float(np.polyfit(x, y, 1)[0])


def slopes(rows):
    out = {}
    for algo in sorted({r["algo"] for r in rows}):
        rs = [r for r in rows if r["algo"] == algo]
        N = [r["N"] for r in rs]
        out[algo] = {
            "mult_slope": loglog_slope(N, [r["mult_count"] for r in rs]),
            "wall_slope": loglog_slope(N, [r["wall_ns"] for r in rs]),
        }
    return out


def to_csv(rows, fits=None):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow([r[c] for c in COLUMNS])
    for algo, f in (fits or {}).items():
        buf.write(f"# {algo} mult_slope={f['mult_slope']:.4f} wall_slope={f['wall_slope']:.4f}\n")
    return buf.getvalue()


def to_json(rows, fits=None):
    return json.dumps({"rows": [{c: r[c] for c in COLUMNS} for r in rows], "slopes": fits or {}}, indent=2)
