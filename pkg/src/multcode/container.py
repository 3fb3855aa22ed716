"""MLT1 container: messages and codewords on disk.

Layout, all integers little-endian:

    magic   4  b"MLT1"
    version 1  = 1
    kind    1  0 message, 1 codeword
    p       2
    m       1
    modulus m+1 coefficients, low to high, one byte each
    n       1
    s       2
    d       4
    count   8
    payload count x uint16, field enumeration indices < q

A message holds binom(n+d, n) symbols in graded-lex order on I_{d,n}. A
codeword holds sigma * q^n symbols, block after block.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from math import comb

import numpy as np

MAGIC = b"MLT1"
VERSION = 1
MESSAGE = 0
CODEWORD = 1

_HEAD = struct.Struct("<4sBBHB")
_TAIL = struct.Struct("<BHIQ")


class ContainerError(ValueError):
    pass


@dataclass
class Container:
    kind: int
    p: int
    m: int
    modulus: tuple
    n: int
    s: int
    d: int
    payload: np.ndarray

    @property
    def q(self):
        return self.p**self.m

    def expected_count(self):
        if self.kind == MESSAGE:
            return comb(self.n + self.d, self.n)
        if self.kind == CODEWORD:
            return comb(self.n + self.s - 1, self.n) * self.q**self.n
        raise ContainerError(f"unknown kind {self.kind}")

    def validate(self):
        if len(self.modulus) != self.m + 1:
            raise ContainerError(f"modulus needs {self.m + 1} coefficients, got {len(self.modulus)}")
        if self.q > 1 << 16:
            raise ContainerError("q must fit in 16 bits")
        if any(not 0 <= c < min(self.p, 256) for c in self.modulus):
            raise ContainerError("modulus coefficient out of range")
        count = self.expected_count()
        if self.payload.shape != (count,):
            raise ContainerError(f"kind {self.kind} needs {count} symbols, payload has {self.payload.size}")
        if self.payload.size and int(self.payload.max()) >= self.q:
            raise ContainerError("payload symbol >= q")
        return self

    def to_bytes(self):
        self.validate()
        head = _HEAD.pack(MAGIC, VERSION, self.kind, self.p, self.m)
        mod = bytes(int(c) for c in self.modulus)
        tail = _TAIL.pack(self.n, self.s, self.d, self.payload.size)
        return head + mod + tail + self.payload.astype("<u2").tobytes()

    @classmethod
    def from_bytes(cls, buf):
        buf = bytes(buf)
        if len(buf) < _HEAD.size:
            raise ContainerError("truncated header")
        magic, version, kind, p, m = _HEAD.unpack_from(buf, 0)
        if magic != MAGIC:
            raise ContainerError(f"bad magic {magic!r}")
        if version != VERSION:
            raise ContainerError(f"unsupported version {version}")
        off = _HEAD.size
        if len(buf) < off + m + 1 + _TAIL.size:
            raise ContainerError("truncated header")
        modulus = tuple(buf[off : off + m + 1])
        off += m + 1
        n, s, d, count = _TAIL.unpack_from(buf, off)
        off += _TAIL.size
        if len(buf) != off + 2 * count:
            raise ContainerError(f"payload is {len(buf) - off} bytes, header promises {2 * count}")
        payload = np.frombuffer(buf, dtype="<u2", offset=off, count=count).astype(np.int64)
        return cls(kind, p, m, modulus, n, s, d, payload).validate()


def for_params(params, kind, payload):
    F = params.F
    return Container(kind, F.p, F.m, tuple(F.modulus), params.n, params.s, params.d, np.asarray(payload, dtype=np.int64).ravel())


def read(path):
    with open(path, "rb") as fh:
        return Container.from_bytes(fh.read())


def write(path, c: Container):
    data = c.to_bytes()
    with open(path, "wb") as fh:
        fh.write(data)


# -- raw byte packing for --pad


def bits_per_symbol(q):
    return q.bit_length() - 1


def pack_bytes(data, q, k):
    """Pack bytes MSB-first into floor(log2 q)-bit symbols, zero-filled to k symbols."""
    b = bits_per_symbol(q)
    bits = np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8))
    nsym = -(-bits.size // b)
    if nsym > k:
        raise ContainerError(f"{len(data)} bytes need {nsym} symbols, message holds {k}")
    bits = np.concatenate([bits, np.zeros(k * b - bits.size, dtype=np.uint8)])
    w = 1 << np.arange(b - 1, -1, -1, dtype=np.int64)
    return bits.reshape(k, b).astype(np.int64) @ w


def unpack_bytes(symbols, q):
    """Inverse of pack_bytes; returns every whole byte, so zero fill may leave trailing NULs."""
    b = bits_per_symbol(q)
    s = np.asarray(symbols, dtype=np.int64)
    if s.size and int(s.max()) >= 1 << b:
        raise ContainerError("symbol does not fit the packing width")
    bits = ((s[:, None] >> np.arange(b - 1, -1, -1)) & 1).astype(np.uint8).ravel()
    nbytes = bits.size // 8
    return np.packbits(bits[: nbytes * 8]).tobytes()
