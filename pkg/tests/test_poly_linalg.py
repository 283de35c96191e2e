import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nbc.linalg import EchelonGF2, EchelonGF3, EchelonGFp, echelon, encode_row, is_zero, rank
from nbc.poly import (
    FieldError,
    FieldPolynomial,
    divides,
    field_name,
    format_monomial,
    is_prime,
    monomials_of_degree,
    parse_field,
    product,
)


@pytest.mark.parametrize("text, modulus", [("gf2", 2), ("GF3", 3), ("gf7", 7), (5, 5), ("2", 2), ("gf(11)", 11)])
def test_parse_field(text, modulus):
    assert parse_field(text) == modulus
    assert field_name(modulus) == f"gf{modulus}"


@pytest.mark.parametrize("text", ["gf4", "gf1", "gfx", 9, "q7"])
def test_parse_field_rejects(text):
    with pytest.raises(FieldError):
        parse_field(text)


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_monomials_of_degree():
    mons = monomials_of_degree(3, 2)
    assert len(mons) == 6 and len(set(mons)) == 6
    assert all(sum(m) == 2 for m in mons)
    assert monomials_of_degree(0, 0) == ((),)


def test_format_and_divides():
    assert format_monomial((2, 0, 1)) == "x1^2*x3"
    assert format_monomial((0, 0)) == "1"
    assert divides((1, 0), (2, 1)) and not divides((0, 2), (2, 1))


def test_polynomial_arithmetic_gf2():
    x1 = FieldPolynomial.variable(2, 2, 1)
    x2 = FieldPolynomial.variable(2, 2, 2)
    s = x1 + x2
    assert s * s == x1 * x1 + x2 * x2  # Frobenius
    assert s + s == FieldPolynomial(2, 2)
    assert not (s - s)


def test_polynomial_arithmetic_gf3():
    x1 = FieldPolynomial.variable(3, 2, 1)
    x2 = FieldPolynomial.variable(3, 2, 2)
    s = x1 - x2
    sq = s * s
    assert sq.coefficient((1, 1)) == 1  # -2 = 1 mod 3
    assert sq.signed_coefficient((1, 1)) == 1
    assert (-x1).signed_coefficient((1, 0)) == -1
    assert str(s) == "x1 - x2"
    assert sq.is_homogeneous() and sq.degree == 2


def test_substitute_project_set_zero():
    x = [FieldPolynomial.variable(5, 3, i) for i in (1, 2, 3)]
    f = x[0] * x[2] + x[1] * x[1]
    g = f.substitute(3, x[0] + x[1])
    assert g == x[0] * x[0] + x[0] * x[1] + x[1] * x[1]
    assert f.set_zero(2) == x[0] * x[2]
    assert g.project(2).nvars == 2
    with pytest.raises(ValueError):
        f.project(2)


def test_product_of_empty_is_one():
    one = product([], 3, 2)
    assert one == FieldPolynomial.monomial(3, (0, 0))


# ---------------------------------------------------------------------------
# echelon forms against a plain dense elimination


def dense_rank(rows: list[list[int]], p: int) -> int:
    m = [[v % p for v in r] for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [v * inv % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        r += 1
    return r


matrices = st.integers(1, 12).flatmap(
    lambda ncols: st.lists(st.lists(st.integers(0, 10), min_size=ncols, max_size=ncols), min_size=0, max_size=14)
)


@settings(max_examples=150, deadline=None)
@given(matrices, st.sampled_from([2, 3, 5, 7]))
def test_rank_matches_dense(rows, p):
    dict_rows = [{c: v for c, v in enumerate(r) if v % p} for r in rows]
    assert rank(p, dict_rows) == dense_rank(rows, p)


@settings(max_examples=100, deadline=None)
@given(matrices, st.sampled_from([2, 3, 5]))
def test_reduce_detects_span(rows, p):
    ech = echelon(p)
    encoded = [encode_row(p, {c: v for c, v in enumerate(r)}) for r in rows]
    for row in encoded:
        ech.add(row)
    # every input row reduces to zero once the echelon holds all of them
    assert all(is_zero(ech.reduce(row)) for row in encoded)
    if rows:
        combo = {c: sum(r[c] for r in rows) for c in range(len(rows[0]))}
        assert is_zero(ech.reduce(encode_row(p, combo)))


def test_echelon_kinds_and_copy():
    assert isinstance(echelon(2), EchelonGF2)
    assert isinstance(echelon(3), EchelonGF3)
    assert isinstance(echelon(5), EchelonGFp)
    ech = echelon(3)
    assert ech.add(encode_row(3, {0: 1, 1: 2}))
    snap = ech.copy()
    assert ech.add(encode_row(3, {1: 1}))
    assert snap.rank == 1 and ech.rank == 2
    assert not ech.add(encode_row(3, {0: 2, 1: 1}))
