"""Finite fields F_q, q = p^m <= 2^16, with a fixed public enumeration.

Element j of the enumeration is:
  * m == 1: the residue j mod p
  * m > 1: the polynomial whose power-basis coefficients are the base-p digits
    of j (digit k multiplies Y^k) reduced modulo the field modulus.

Field values are stored as int64 enumeration indices everywhere. Elements of
the prime subfield keep their natural index, so c in F_p is index c.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GF",
    "FieldElement",
    "FieldError",
    "binom_mod_p",
    "fq_arith",
    "default_modulus",
    "is_irreducible",
]

MAX_Q = 1 << 16

PRIME = 0
BINARY_EXT = 1
ODD_EXT = 2


class FieldError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for k in range(2, math.isqrt(p) + 1):
        if p % k == 0:
            return False
    return True


# --- tiny dense polynomial helpers over F_p (coefficient lists, low degree first)


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, b, p):
    a = _trim(a)
    b = _trim(b)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        sh = len(a) - len(b)
        for k in range(len(b)):
            a[sh + k] = (a[sh + k] - c * b[k]) % p
        a = _trim(a)
    return a


def _monic_polys(p, deg):
    """All monic polynomials of exact degree deg over F_p."""
    for v in range(p**deg):
        low = [(v // p**k) % p for k in range(deg)]
        yield low + [1]


def is_irreducible(modulus, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    f = _trim(modulus)
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    for deg in range(1, m // 2 + 1):
        for g in _monic_polys(p, deg):
            if not _pmod(f, g, p):
                return False
    return True


def default_modulus(p: int, m: int) -> tuple:
    """Smallest monic irreducible of degree m, comparing coefficients from the top down."""
    if m == 1:
        return (0, 1)
    for v in range(p**m):
        low = [(v // p**k) % p for k in range(m)]
        cand = low + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible polynomial of degree {m} over F_{p}")  # unreachable


@functools.lru_cache(maxsize=None)
def _fact_table(p: int):
    f = np.ones(p, dtype=np.int64)
    for k in range(1, p):
        f[k] = f[k - 1] * k % p
    finv = np.ones(p, dtype=np.int64)
    finv[p - 1] = pow(int(f[p - 1]), p - 2, p)
    for k in range(p - 1, 0, -1):
        finv[k - 1] = finv[k] * k % p
    return f, finv


def binom_mod_p(nn: int, kk: int, p: int) -> int:
    """binom(nn, kk) mod p by Lucas' theorem."""
    if nn < 0 or kk < 0:
        raise FieldError("binom_mod_p needs nonnegative arguments")
    if kk > nn:
        return 0
    f, finv = _fact_table(p)
    r = 1
    while kk:
        a, b = nn % p, kk % p
        if b > a:
            return 0
        r = r * int(f[a]) % p * int(finv[b]) % p * int(finv[a - b]) % p
        nn //= p
        kk //= p
    return r


class GF:
    """The field F_{p^m}. Immutable once built; use ``GF.get`` for a cached instance."""

    def __init__(self, p: int, m: int = 1, modulus=None):
        p, m = int(p), int(m)
        if not _is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if m < 1:
            raise FieldError("extension degree must be >= 1")
        q = p**m
        if q > MAX_Q:
            raise FieldError(f"q = {q} exceeds 2^16")
        if modulus is None or (m == 1 and len(modulus) == 0):
            modulus = default_modulus(p, m)
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1 or any(not 0 <= c < p for c in modulus):
            raise FieldError(f"modulus must be {m + 1} coefficients in [0,{p}) with leading 1")
        if m == 1:
            if modulus != (0, 1):
                raise FieldError("prime fields use the modulus X, i.e. (0, 1)")
        elif not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over F_{p}")
        self.p, self.m, self.q = p, m, q
        self.modulus = modulus
        if m == 1:
            self.kind = PRIME
        elif p == 2:
            self.kind = BINARY_EXT
        else:
            self.kind = ODD_EXT
        self._build_tables()
        for a in (self.exp, self.log, self.zech, self.neg, self.inv_table):
            a.setflags(write=False)

    @classmethod
    @functools.lru_cache(maxsize=None)
    def get(cls, q: int, modulus=None) -> "GF":
        p, m = factor_prime_power(q)
        return cls(p, m, modulus)

    # -- construction

    def _digits(self, j):
        p = self.p
        return [(j // p**k) % p for k in range(self.m)]

    def _from_digits(self, dig):
        v = 0
        for k in reversed(range(self.m)):
            v = v * self.p + dig[k]
        return v

    def _mul_by_digits(self, a, g):
        # multiply digit vectors mod modulus
        p, m = self.p, self.m
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, gj in enumerate(g):
                    prod[i + j] = (prod[i + j] + ai * gj) % p
        mod = self.modulus
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c:
                for t in range(m + 1):
                    prod[k - m + t] = (prod[k - m + t] - c * mod[t]) % p
        return prod[:m]

    def _build_tables(self):
        p, m, q = self.p, self.m, self.q
        exp = np.zeros(2 * q, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        # first candidate whose powers hit every nonzero element
        order = list(range(1, q)) if m == 1 else [p] + [c for c in range(1, q) if c != p]
        for cand in order:
            if m == 1:
                seq = [1]
                x = 1
                for _ in range(q - 2):
                    x = x * cand % p
                    if x == 1:
                        break
                    seq.append(x)
            else:
                g = self._digits(cand)
                cur = [1] + [0] * (m - 1)
                seq = [1]
                for _ in range(q - 2):
                    cur = self._mul_by_digits(cur, g)
                    v = self._from_digits(cur)
                    if v == 1:
                        break
                    seq.append(v)
            if len(seq) == q - 1:
                break
        else:  # q == 2
            seq = [1]
            cand = 1
        self.generator = cand
        seq = np.asarray(seq, dtype=np.int64)
        n1 = q - 1
        exp[:] = np.resize(seq, 2 * q)
        log[seq] = np.arange(n1)
        self.exp, self.log = exp, log

        # negation: digitwise
        idx = np.arange(q, dtype=np.int64)
        neg = np.zeros(q, dtype=np.int64)
        w = 1
        for _ in range(m):
            dgt = (idx // w) % p
            neg += ((p - dgt) % p) * w
            w *= p
        self.neg = neg

        inv = np.zeros(q, dtype=np.int64)
        nz = idx[1:]
        inv[1:] = exp[(n1 - log[nz]) % n1]
        self.inv_table = inv

        # zech[k] = log(1 + g^k), -1 when 1 + g^k = 0
        one_plus = self._add_digitwise(np.ones(n1, dtype=np.int64), seq)
        zech = np.where(one_plus == 0, -1, log[one_plus])
        self.zech = zech.astype(np.int64)

    def _add_digitwise(self, a, b):
        p = self.p
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        w = 1
        for _ in range(self.m):
            out += (((a // w) % p + (b // w) % p) % p) * w
            w *= p
        return out

    # -- kernel descriptor

    @property
    def ft(self):
        """Tuple handed to compiled kernels."""
        return (self.kind, self.p, self.q, self.exp, self.log, self.zech, self.neg)

    # -- vectorized arithmetic on index arrays (also works on Python ints)

    def _wrap(self, x, like):
        if np.ndim(like) == 0 and not isinstance(like, np.ndarray):
            return int(x)
        return x

    def add(self, a, b):
        a_, b_ = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.kind == PRIME:
            r = (a_ + b_) % self.p
        elif self.kind == BINARY_EXT:
            r = a_ ^ b_
        else:
            r = self._zech_add(a_, b_)
        return self._wrap(r, a if np.ndim(a) else b)

    def _zech_add(self, a, b):
        a, b = np.broadcast_arrays(a, b)
        n1 = self.q - 1
        la = self.log[a]
        lb = self.log[b]
        k = (lb - la) % n1
        z = self.zech[k]
        r = np.where(z < 0, 0, self.exp[np.where(z < 0, 0, la + z) % n1])
        r = np.where(a == 0, b, np.where(b == 0, a, r))
        return r

    def negate(self, a):
        return self._wrap(self.neg[np.asarray(a, dtype=np.int64)], a)

    def sub(self, a, b):
        return self.add(a, self.negate(b))

    def mul(self, a, b):
        a_, b_ = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.kind == PRIME:
            r = (a_ * b_) % self.p
        else:
            a_, b_ = np.broadcast_arrays(a_, b_)
            r = self.exp[np.where((a_ == 0) | (b_ == 0), 0, self.log[a_] + self.log[b_])]
            r = np.where((a_ == 0) | (b_ == 0), 0, r)
        return self._wrap(r, a if np.ndim(a) else b)

    def inv(self, a):
        a_ = np.asarray(a, dtype=np.int64)
        if np.any(a_ == 0):
            raise ZeroDivisionError("inverse of zero in F_q")
        return self._wrap(self.inv_table[a_], a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        a = int(a)
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 0
        n1 = self.q - 1
        return int(self.exp[(int(self.log[a]) * e) % n1])

    def scalar(self, c: int) -> int:
        """Image of the integer c in the prime subfield."""
        return int(c) % self.p

    def binom(self, nn: int, kk: int) -> int:
        return binom_mod_p(nn, kk, self.p)

    def elements(self):
        return np.arange(self.q, dtype=np.int64)

    def element(self, idx: int) -> "FieldElement":
        return FieldElement(self, idx)

    def digits(self, idx: int):
        """Power-basis coefficients of alpha_idx."""
        if not 0 <= idx < self.q:
            raise FieldError(f"index {idx} out of range for F_{self.q}")
        return tuple(self._digits(idx))

    def index(self, digits) -> int:
        digits = list(digits) + [0] * (self.m - len(digits))
        if len(digits) != self.m or any(not 0 <= c < self.p for c in digits):
            raise FieldError(f"bad coefficient vector {digits}")
        return self._from_digits(digits)

    def random(self, rng, size=None):
        return rng.integers(0, self.q, size=size, dtype=np.int64)

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={self.modulus})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))


def factor_prime_power(q: int):
    q = int(q)
    if q < 2:
        raise FieldError(f"q = {q} is not a prime power")
    for p in range(2, math.isqrt(q) + 1):
        if q % p == 0:
            m = 0
            r = q
            while r % p == 0:
                r //= p
                m += 1
            if r != 1:
                raise FieldError(f"q = {q} is not a prime power")
            return p, m
    return q, 1


@dataclass(frozen=True)
class FieldElement:
    """A single field value; ``idx`` is its enumeration index."""

    field: GF
    idx: int

    def __post_init__(self):
        if not 0 <= int(self.idx) < self.field.q:
            raise FieldError(f"index {self.idx} out of range for F_{self.field.q}")
        object.__setattr__(self, "idx", int(self.idx))

    def _other(self, b):
        if isinstance(b, FieldElement):
            if b.field != self.field:
                raise FieldError("elements from different fields")
            return b.idx
        return self.field.scalar(b)

    def __add__(self, b):
        return FieldElement(self.field, self.field.add(self.idx, self._other(b)))

    def __sub__(self, b):
        return FieldElement(self.field, self.field.sub(self.idx, self._other(b)))

    def __mul__(self, b):
        return FieldElement(self.field, self.field.mul(self.idx, self._other(b)))

    def __truediv__(self, b):
        return FieldElement(self.field, self.field.div(self.idx, self._other(b)))

    def __neg__(self):
        return FieldElement(self.field, self.field.negate(self.idx))

    def __pow__(self, e):
        return FieldElement(self.field, self.field.pow(self.idx, int(e)))

    __radd__ = __add__
    __rmul__ = __mul__

    def inv(self):
        return FieldElement(self.field, self.field.inv(self.idx))

    def __int__(self):
        return self.idx

    def __repr__(self):
        return f"a{self.idx}"


def fq_arith(F: GF, a: int, b: int = 0, op: str = "add") -> int:
    """Scalar dispatcher over {add, sub, mul, div, inv, pow} on enumeration indices."""
    for x in (a,) if op in ("inv", "pow") else (a, b):
        if not 0 <= int(x) < F.q:
            raise FieldError(f"index {x} out of range for F_{F.q}")
    if op == "add":
        return F.add(int(a), int(b))
    if op == "sub":
        return F.sub(int(a), int(b))
    if op == "mul":
        return F.mul(int(a), int(b))
    if op == "div":
        if int(b) == 0:
            raise ZeroDivisionError("division by zero in F_q")
        return F.div(int(a), int(b))
    if op == "inv":
        return F.inv(int(a))
    if op == "pow":
        return F.pow(int(a), int(b))
    raise FieldError(f"unknown op {op!r}")
