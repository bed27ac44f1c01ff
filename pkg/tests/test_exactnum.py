from __future__ import annotations

from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from facekit.exactnum import (
    ConductorMismatch,
    Cyclotomic,
    SingularMatrixError,
    cyc,
    cyclotomic_polynomial,
    format_cyclotomic,
    identity,
    inverse,
    matmul,
    matvec,
    nullspace,
    parse_cyclotomic,
    rank,
    solve,
    totient,
)

z3, z4, z5, z8 = (Cyclotomic.zeta(n) for n in (3, 4, 5, 8))
CONDUCTORS = (1, 3, 4, 5, 8, 12)


def cyclotomics(n=None):
    conductor = st.sampled_from(CONDUCTORS) if n is None else st.just(n)
    small = st.fractions(min_value=-5, max_value=5, max_denominator=6)

    @st.composite
    def build(draw):
        k = draw(conductor)
        coeffs = draw(st.lists(small, min_size=k, max_size=k))
        x = Cyclotomic.rational(0, k)
        for e, c in enumerate(coeffs):
            if c:
                x = x + Cyclotomic.zeta(k, e) * Cyclotomic.rational(c, k)
        return x

    return build()


# ---------------------------------------------------------------- field basics
def test_defining_relations():
    assert z4 * z4 == -1
    assert 1 + z5 + z5**2 + z5**3 + z5**4 == 0
    assert (z8 + z8 ** -1) ** 2 == 2


def test_inverse_examples():
    assert Cyclotomic.rational(1).inverse() == 1
    assert z3.inverse() == z3**2
    assert (1 + z3).inverse() == -z3
    assert (1 + z3) * (-z3) == 1


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        Cyclotomic(5).inverse()
    with pytest.raises(ZeroDivisionError):
        z5 / 0


def test_cyclotomic_polynomials_and_totient():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(5) == (1, 1, 1, 1, 1)
    assert cyclotomic_polynomial(8) == (1, 0, 0, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    assert [totient(n) for n in (1, 2, 3, 4, 5, 8, 12)] == [1, 1, 2, 2, 4, 4, 4]


def test_canonical_vector_length_is_degree():
    for n in (3, 4, 5, 8, 12, 15):
        assert len(Cyclotomic.zeta(n).c) == totient(n)


def test_auto_lift_on_divisibility():
    x = z4 + z8
    assert x.n == 8
    assert x == z8**2 + z8
    assert z3 * Cyclotomic.rational(Fraction(1, 2)) == z3 / 2


def test_incompatible_conductors():
    with pytest.raises(ConductorMismatch):
        z3 + z5


def test_rational_detection():
    x = z5 + z5**4 + z5**2 + z5**3
    assert x.is_rational() and x.rational_value() == -1
    assert not z5.is_rational()
    with pytest.raises(ValueError):
        z5.rational_value()


def test_equality_with_plain_numbers():
    assert Cyclotomic.rational(3, 5) == 3
    assert Cyclotomic.rational(Fraction(1, 2), 8) == mpq(1, 2)
    assert Cyclotomic.rational(3) != "3"


def test_golden_ratio_in_q_zeta5():
    phi_inv = z5 + z5**4
    assert phi_inv * phi_inv + phi_inv == 1
    assert abs(phi_inv.to_complex() - (5**0.5 - 1) / 2) < 1e-12


# ---------------------------------------------------------------- literals
@pytest.mark.parametrize("text,n", [
    ("1/2 - 1/2*q^2", 5),
    ("0", 1),
    ("-3/2", 1),
    ("q", 8),
    ("1 + q^3", 8),
])
def test_literal_roundtrip(text, n):
    x = parse_cyclotomic(text, n)
    assert parse_cyclotomic(format_cyclotomic(x), n) == x


def test_literal_values():
    assert cyc("q^2", 4) == -1
    assert cyc("1/2 - 1/2*q^2", 4) == 1
    assert cyc("2*q", 3) == 2 * z3
    assert format_cyclotomic(Cyclotomic(7)) == "0"


@pytest.mark.parametrize("bad", ["", "1 +", "q^", "2**q", "x", "1/0"])
def test_malformed_literals(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_cyclotomic(bad, 5)


@given(cyclotomics())
def test_format_parse_roundtrip_property(x):
    assert parse_cyclotomic(format_cyclotomic(x), x.n) == x


# ---------------------------------------------------------------- field axioms
@settings(max_examples=60, deadline=None)
@given(st.data())
def test_field_axioms(data):
    n = data.draw(st.sampled_from(CONDUCTORS))
    a, b, c = (data.draw(cyclotomics(n)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0
    if a:
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@given(cyclotomics())
def test_canonicalization_idempotent(x):
    assert x.canonical() == x
    assert x.canonical().canonical().c == x.canonical().c
    y = Cyclotomic(x.n, list(x.c))
    assert y == x and hash(y) == hash(x)


@settings(max_examples=40, deadline=None)
@given(cyclotomics(12), cyclotomics(12))
def test_equality_iff_coefficients(x, y):
    assert (x == y) == (x.c == y.c)


@settings(max_examples=40, deadline=None)
@given(cyclotomics(8), cyclotomics(8))
def test_galois_is_a_field_automorphism(x, y):
    for k in (3, 5, 7):
        assert (x * y).galois(k) == x.galois(k) * y.galois(k)
        assert (x + y).galois(k) == x.galois(k) + y.galois(k)


@given(cyclotomics())
def test_complex_embedding_is_a_homomorphism(x):
    y = x * x + 1
    assert abs(y.to_complex() - (x.to_complex() ** 2 + 1)) < 1e-6 * (1 + abs(y.to_complex()))


@given(cyclotomics(4))
def test_lift_preserves_value(x):
    assert x.lift(8) == x
    assert abs(x.lift(12).to_complex() - x.to_complex()) < 1e-9


# ---------------------------------------------------------------- linear algebra
def test_solve_identity():
    b = [z3, 1 + z3, cyc(2)]
    sol = solve(identity(3), b)
    assert sol is not None and sol.particular == b and sol.nullspace == []


def test_solve_one_by_one():
    sol = solve([[1 + z3]], [cyc(1, 3)])
    assert sol.particular == [-z3]


def test_solve_inconsistent():
    assert solve([[cyc(1)], [cyc(1)]], [cyc(1), cyc(2)]) is None


def test_solve_underdetermined_returns_nullspace():
    sol = solve([[cyc(1), cyc(1)]], [cyc(2)])
    assert len(sol.nullspace) == 1
    assert matvec([[1, 1]], sol.particular) == [2]
    assert matvec([[1, 1]], sol.nullspace[0]) == [0]


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        solve([[1, 2], [3, 4]], [1])
    with pytest.raises(ValueError):
        solve([[1, 2], [3]], [1, 2])


def test_nullspace_examples():
    zero = Cyclotomic(3)
    assert len(nullspace([[zero, zero], [zero, zero]])) == 2
    assert nullspace(identity(3)) == []
    (v,) = nullspace([[cyc(1, 3), cyc(1, 3)], [z3, z3]])
    assert v[0] + v[1] == 0 and v[0] != 0


def test_inverse_and_singular():
    A = [[1 + z3, z3], [cyc(1, 3), cyc(2, 3)]]
    assert matmul(A, inverse(A)) == identity(2)
    with pytest.raises(SingularMatrixError):
        inverse([[cyc(1, 3), z3], [cyc(1, 3), z3]])


def test_integer_input_stays_exact():
    sol = solve([[3]], [1])
    assert sol.particular[0] == Fraction(1, 3)
    assert inverse([[2]])[0][0] == Fraction(1, 2)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_solve_and_nullspace_by_substitution(data):
    rows = data.draw(st.integers(1, 4))
    cols = data.draw(st.integers(1, 4))
    entry = cyclotomics(3)
    A = [[data.draw(entry) for _ in range(cols)] for _ in range(rows)]
    b = [data.draw(entry) for _ in range(rows)]
    basis = nullspace(A)
    assert len(basis) == cols - rank(A)
    for v in basis:
        assert all(x == 0 for x in matvec(A, v))
    sol = solve(A, b)
    if sol is not None:
        assert matvec(A, sol.particular) == b
    else:
        # inconsistent: augmenting raises the rank
        assert rank([row + [x] for row, x in zip(A, b)]) == rank(A) + 1
