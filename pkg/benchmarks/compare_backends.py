"""Time the numba kernels against the pure-numpy fallback.

Each backend runs in its own interpreter because MULTCODE_KERNELS is read at
import time. Codewords are hashed so the two backends can be checked for
identical output.

    python3 benchmarks/compare_backends.py --cases 16:2:2:24 16:2:4:48 7:3:2:10
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time, hashlib
import numpy as np
from multcode import code as K, kernels
out = []
for case in json.loads(sys.argv[1]):
    q, n, s, d = case
    p = K.code_params(q, n, s, d)
    m = np.random.default_rng(0).integers(0, q, (8, p.k))
    for algo in ("low", "high"):
        K.encode(p, m[:1], algo)
        best = None
        for _ in range(int(sys.argv[2])):
            t0 = time.perf_counter()
            c = K.encode(p, m, algo)
            dt = time.perf_counter() - t0
            best = dt if best is None else min(best, dt)
        out.append({"case": case, "algo": algo, "seconds": best, "N": p.N,
                    "digest": hashlib.sha1(c.astype("<i8").tobytes()).hexdigest()})
print(json.dumps({"backend": kernels.BACKEND, "rows": out}))
"""


def run_backend(name, cases, repeats):
    env = dict(os.environ, MULTCODE_KERNELS=name)
    res = subprocess.run([sys.executable, "-c", WORKER, json.dumps(cases), str(repeats)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


def parse_case(text):
    q, n, s, d = (int(x) for x in text.split(":"))
    return [q, n, s, d]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cases", nargs="+", type=parse_case,
                    default=[[16, 2, 1, 12], [16, 2, 2, 24], [16, 2, 4, 48], [7, 3, 2, 10], [256, 1, 4, 700]])
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args(argv)

    nb = run_backend("numba", args.cases, args.repeats)
    npy = run_backend("numpy", args.cases, args.repeats)
    print(f"{'q:n:s:d':>14} {'algo':>5} {'N':>7} {'numba s':>9} {'numpy s':>9} {'speedup':>8}  same")
    mismatch = 0
    for a, b in zip(nb["rows"], npy["rows"]):
        same = a["digest"] == b["digest"]
        mismatch += not same
        tag = ":".join(str(x) for x in a["case"])
        print(f"{tag:>14} {a['algo']:>5} {a['N']:>7} {a['seconds']:9.4f} {b['seconds']:9.4f} "
              f"{b['seconds'] / a['seconds']:8.2f}  {'yes' if same else 'NO'}")
    return 1 if mismatch else 0


if __name__ == "__main__":
    sys.exit(main())
