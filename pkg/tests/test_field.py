import numpy as np
import pytest

from multcode.field import GF, FieldElement, FieldError, binom_mod_p, default_modulus, fq_arith, is_irreducible

FIELDS = [2, 3, 4, 5, 7, 8, 9, 13, 16, 25, 27, 32, 49, 64, 81, 125, 243, 256]


def test_prime_field_examples():
    F = GF.get(5)
    assert fq_arith(F, 2, 4, "add") == 1
    assert fq_arith(F, 3, 4, "mul") == 2
    assert fq_arith(F, 2, op="inv") == 3


def test_gf4_product():
    F = GF.get(4)
    assert F.modulus == (1, 1, 1)
    assert F.mul(2, 3) == 1


def test_binomials():
    assert binom_mod_p(5, 2, 2) == 0
    assert binom_mod_p(4, 2, 3) == 0
    assert binom_mod_p(10, 3, 7) == 120 % 7
    for p in (2, 3, 5):
        assert binom_mod_p(17, 0, p) == 1
    assert binom_mod_p(2, 5, 3) == 0


def test_default_moduli():
    assert default_modulus(2, 3) == (1, 1, 0, 1)
    assert default_modulus(2, 4) == (1, 1, 0, 0, 1)
    assert default_modulus(3, 2) == (1, 0, 1)
    assert is_irreducible((1, 1, 1), 2)
    assert not is_irreducible((1, 0, 1), 2)


def test_bad_fields():
    with pytest.raises(FieldError):
        GF(6)
    with pytest.raises(FieldError):
        GF(2, 2, (1, 0, 1))
    with pytest.raises(FieldError):
        GF(2, 17)
    F = GF.get(5)
    with pytest.raises(ZeroDivisionError):
        fq_arith(F, 1, 0, "div")
    with pytest.raises(FieldError):
        fq_arith(F, 7, 1, "add")


@pytest.mark.parametrize("q", FIELDS)
def test_axioms(q, rng):
    F = GF.get(q)
    a, b, c = (rng.integers(0, q, 10_000) for _ in range(3))
    assert np.array_equal(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)))
    assert np.array_equal(F.add(F.add(a, b), c), F.add(a, F.add(b, c)))
    assert np.array_equal(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)))
    assert np.array_equal(F.add(a, b), F.add(b, a))
    assert np.array_equal(F.mul(a, b), F.mul(b, a))
    nz = a[a != 0]
    assert np.all(F.mul(nz, F.inv(nz)) == 1)
    assert np.all(F.add(a, F.negate(a)) == 0)
    assert np.array_equal(F.sub(F.add(a, b), b), a)
    # characteristic: p-fold sum vanishes
    acc = np.zeros_like(a)
    for _ in range(F.p):
        acc = F.add(acc, a)
    assert not acc.any()


@pytest.mark.parametrize("q", FIELDS)
def test_enumeration(q):
    F = GF.get(q)
    for j in range(q):
        assert F.index(F.digits(j)) == j
    # prime subfield keeps its indices
    for c in range(F.p):
        assert F.scalar(c) == c
    # the generator has order q - 1
    g = F.generator
    assert F.pow(g, q - 1) == 1
    for r in range(1, q - 1):
        if (q - 1) % r == 0:
            assert F.pow(g, r) != 1


def test_digit_addition_matches_index_addition():
    F = GF.get(27)
    for a in range(27):
        for b in range(27):
            da, db = F.digits(a), F.digits(b)
            assert F.add(a, b) == F.index([(x + y) % 3 for x, y in zip(da, db)])


def test_field_element_ops():
    F = GF.get(9)
    x, y = FieldElement(F, 5), FieldElement(F, 7)
    assert (x * y) / y == x
    assert x + y - y == x
    assert -x + x == FieldElement(F, 0)
    assert x * x.inv() == FieldElement(F, 1)
    assert x**8 == FieldElement(F, 1)
    with pytest.raises(FieldError):
        FieldElement(F, 9)


def test_tables_are_read_only():
    F = GF.get(8)
    with pytest.raises(ValueError):
        F.exp[0] = 3
