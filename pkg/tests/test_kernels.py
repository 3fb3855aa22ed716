import os
import subprocess
import sys

import numpy as np
import pytest

from multcode import instrument
from multcode import kernels as K
from multcode.field import GF


def test_const_matrix_counts(rng):
    F = GF.get(5)
    M = np.array([[1, 0, 2], [0, 4, 3]])
    cm = K.ConstMatrix(F, M)
    X = rng.integers(0, 5, (7, 3))
    with instrument.counting() as t:
        Y = cm.apply(X)
    want = F.add(F.add(F.mul(X[:, 0:1], M[:, 0]), F.mul(X[:, 1:2], M[:, 1])), F.mul(X[:, 2:3], M[:, 2]))
    assert np.array_equal(Y, want)
    assert t.mults == 7 * 4


def test_free_scalars():
    F = GF.get(7)
    with instrument.counting() as t:
        K.vsmul(F, 6, np.arange(7))
        K.vsmul(F, 1, np.arange(7))
    assert t.mults == 0
    with instrument.counting() as t:
        K.vsmul(F, 3, np.arange(7))
    assert t.mults == 7


def test_counting_nests():
    F = GF.get(7)
    with instrument.counting() as outer:
        K.vmul(F, np.arange(4), np.arange(4))
        with instrument.counting() as inner:
            with instrument.phase("x"):
                K.vmul(F, np.arange(3), np.arange(3))
    assert inner.mults == 3 and inner.phases["x"] == 3
    assert outer.mults == 7 and outer.phases["x"] == 3


def test_pmul_and_divmod(rng):
    F = GF.get(16)
    A = rng.integers(0, 16, (3, 90))
    B = rng.integers(0, 16, (3, 70))
    C = K.pmul(F, A, B)
    for r in range(3):
        want = np.zeros(159, dtype=np.int64)
        for i in range(90):
            want[i : i + 70] = F.add(want[i : i + 70], F.mul(A[r, i], B[r]))
        assert np.array_equal(C[r], want)


SCRIPT = """
import hashlib
import numpy as np
from multcode import code as K, kernels
p = K.code_params(13, 2, 2, 18)
m = np.random.default_rng(5).integers(0, 13, (3, p.k))
print(kernels.BACKEND, K.encode_low_rate(p, m).sum(), K.encode_high_rate(p, m).sum(), hashlib.sha1(K.encode(p, m).tobytes()).hexdigest())
"""


@pytest.mark.slow
def test_backends_agree():
    outs = {}
    for name in ("numba", "numpy"):
        env = dict(os.environ, MULTCODE_KERNELS=name)
        res = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True, text=True, check=True)
        backend, *rest = res.stdout.split()
        assert backend == name
        outs[name] = rest
    assert outs["numba"] == outs["numpy"]
