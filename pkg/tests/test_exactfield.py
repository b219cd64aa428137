from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from algdet.errors import AlgdetError, ParseError, SpecMismatchError
from algdet.exactfield import GF, QQ, FieldSpec, is_prime, parse_field
from algdet import linalg

PRIMES = [2, 3, 5, 7, 13, 101, 2147483647]
fields = st.sampled_from([QQ] + [GF(p) for p in PRIMES])


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("bad", [0, 1, 4, 9, 91, 2**31 + 11])
def test_gf_rejects_non_primes_and_large(bad):
    with pytest.raises(ValueError):
        GF(bad)


def test_gf_accepts_largest_prime_below_2_31():
    assert GF(2147483647).p == 2147483647


def test_basic_arithmetic_gf7():
    F = GF(7)
    assert (F(3) + F(5)).value == 1
    assert (F(3) * F(5)).value == 1
    assert (F(3) - F(5)).value == 5
    assert F(3).inv().value == 5
    assert (F(1) / F(3)).value == 5
    assert (F(2) ** -1).value == 4
    assert F(-1).value == 6


def test_rationals_exact():
    x = QQ("1/3") + QQ("1/6")
    assert x.value == Fraction(1, 2)
    assert QQ(Fraction(2, 4)).value == Fraction(1, 2)


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        GF(5)(0).inv()
    with pytest.raises(ZeroDivisionError):
        QQ(0).inv()


def test_mixing_fields_raises():
    with pytest.raises(SpecMismatchError):
        GF(5)(1) + GF(7)(1)
    with pytest.raises(SpecMismatchError):
        QQ(1) * GF(7)(1)


@pytest.mark.parametrize("text", ["", "x", "1.5", "1/0", "--2", "3/"])
def test_parse_raw_rejects(text):
    with pytest.raises(ParseError):
        GF(7).parse_raw(text)


def test_parse_raw_fraction_mod_p():
    assert GF(7).parse_raw("1/3") == 5
    assert GF(7).parse_raw("-1") == 6


@pytest.mark.parametrize("tokens, want", [(["GF", "7"], GF(7)), (["7"], GF(7)), (["QQ"], QQ),
                                          (["gf", "5"], GF(5))])
def test_parse_field(tokens, want):
    assert parse_field(tokens) == want


@pytest.mark.parametrize("tokens", [["GF"], ["GF", "8"], ["RR"], []])
def test_parse_field_rejects(tokens):
    with pytest.raises((ParseError, ValueError)):
        parse_field(tokens)


def test_signed_representative():
    F = GF(7)
    assert [F.signed(x) for x in range(7)] == [0, 1, 2, 3, -3, -2, -1]


@given(fields, st.integers(), st.integers(), st.integers())
def test_field_axioms(F, a, b, c):
    x, y, z = F(a), F(b), F(c)
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == F(0)
    if x:
        assert x * x.inv() == F(1)


@given(fields, st.integers(-10**6, 10**6))
def test_format_parse_round_trip(F, a):
    raw = F.reduce(a)
    assert F.parse_raw(F.format_raw(raw)) == raw


# -- exact linear algebra ----------------------------------------------------

def test_rank_and_nullspace_gf5():
    F = GF(5)
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert linalg.rank(rows, F) == 2
    ns = linalg.nullspace(rows, 3, F)
    assert len(ns) == 1
    v = ns[0]
    for r in rows:
        assert sum(a * b for a, b in zip(r, v)) % 5 == 0


def test_solve_inconsistent_raises():
    with pytest.raises(AlgdetError):
        linalg.solve([[1, 1], [1, 1]], [1, 2], 2, QQ)


def test_inverse_and_det_qq():
    a = [[Fraction(2), Fraction(1)], [Fraction(7), Fraction(4)]]
    inv = linalg.inverse(a, QQ)
    assert linalg.matmul(a, inv, QQ) == linalg.identity(2, QQ)
    assert linalg.det(a, QQ) == 1


@given(st.sampled_from([3, 5, 7, 13]), st.lists(st.integers(0, 100), min_size=9, max_size=9),
       st.lists(st.integers(0, 100), min_size=9, max_size=9))
def test_det_multiplicative_mod_p(p, xs, ys):
    F = GF(p)
    a = [[F.reduce(v) for v in xs[i:i + 3]] for i in (0, 3, 6)]
    b = [[F.reduce(v) for v in ys[i:i + 3]] for i in (0, 3, 6)]
    assert linalg.det(linalg.matmul(a, b, F), F) == linalg.det(a, F) * linalg.det(b, F) % p


def test_fieldspec_equality_and_hash():
    assert GF(7) == FieldSpec(7) and hash(GF(7)) == hash(FieldSpec(7))
    assert GF(7) != QQ
