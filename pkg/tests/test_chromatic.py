import random

import pytest

from nbc.chromatic import (
    ComplexUndefined,
    acyclic_count,
    acyclic_count_bruteforce,
    chromatic_polynomial,
    f_h_vectors,
    h_from_polynomial,
    nbc_f_vector_bruteforce,
    peval,
    proper_colorings_bruteforce,
)
from nbc.families import complete_graph, k2t, phi_nt, theta_nt
from nbc.graph import GraphError, OrderedGraph, minor

from .conftest import EXAMPLE, oracle_suite, random_connected_graph

TRIANGLE = OrderedGraph(3, ((1, 2), (2, 3), (1, 3)))


@pytest.fixture(scope="module")
def suite():
    return oracle_suite()


def test_triangle_polynomial():
    data = chromatic_polynomial(TRIANGLE)
    assert data.coefficients == (0, 2, -3, 1)
    for lam in range(1, 5):
        assert data(lam) == proper_colorings_bruteforce(TRIANGLE, lam)


def test_k23_polynomial():
    data = chromatic_polynomial(k2t(3))
    for lam in range(-3, 7):
        expected = lam * (lam - 1) ** 3 + lam * (lam - 1) * (lam - 2) ** 3
        assert data(lam) == expected


def test_loop_is_zero():
    loop = OrderedGraph(1, ((1, 1),))
    assert not any(chromatic_polynomial(loop).coefficients)
    assert acyclic_count(loop) == 0
    with pytest.raises(ComplexUndefined, match="chromatic zero, complex undefined"):
        f_h_vectors(loop)


def test_example_vectors():
    data = f_h_vectors(EXAMPLE)
    assert data.h_vector == (1, 3, 4, 2, 0, 0)
    assert data.f_vector == nbc_f_vector_bruteforce(EXAMPLE)
    assert data.alpha == 60 == acyclic_count_bruteforce(EXAMPLE)


def test_triangle_vectors():
    data = f_h_vectors(TRIANGLE)
    assert data.f_vector == (1, 3, 2, 0)
    assert data.h_vector == (1, 1, 0, 0)
    assert nbc_f_vector_bruteforce(TRIANGLE) == (1, 3, 2, 0)


@pytest.mark.parametrize("p", range(1, 8))
def test_tree_h_vector(p):
    path = OrderedGraph(p, tuple((i, i + 1) for i in range(1, p)))
    assert f_h_vectors(path).h_vector == (1,) + (0,) * p
    assert acyclic_count(path) == 2 ** (p - 1)


@pytest.mark.parametrize(
    "g, alpha",
    [(TRIANGLE, 6), (k2t(3), 46), (EXAMPLE, 60), (complete_graph(4), 24), (theta_nt(2, 2), 14)],
)
def test_acyclic_counts(g, alpha):
    assert acyclic_count(g) == alpha == acyclic_count_bruteforce(g)


def test_edgeless_f_vector():
    g = OrderedGraph(3, ())
    assert nbc_f_vector_bruteforce(g) == (1, 0, 0, 0)


def test_bruteforce_cap():
    with pytest.raises(GraphError):
        nbc_f_vector_bruteforce(phi_nt(4, 7), cap=20)


def test_connected_required():
    with pytest.raises(GraphError):
        f_h_vectors(OrderedGraph(3, ((1, 2),)))


def test_h_from_polynomial_basis():
    # lam (lam-1)^2 - 2 lam (lam-1) + 0 => h = (1, 2, 0, 0)
    p = 3
    coeffs = [0, 2 + 1, -2 - 2, 1]  # lam^3 - 4 lam^2 + 3 lam
    assert peval(coeffs, 5) == 5 * 16 - 2 * 5 * 4
    assert h_from_polynomial(coeffs, p) == (1, 2, 0, 0)


# ---------------------------------------------------------------------------
# oracle suite


def test_suite_size(suite):
    assert len(suite) >= 200
    assert all(g.q <= 10 for g in suite)


def test_whitney(suite):
    for g in suite:
        assert f_h_vectors(g).f_vector == nbc_f_vector_bruteforce(g), g


def test_stanley(suite):
    for g in suite:
        data = f_h_vectors(g)
        assert data.alpha == acyclic_count_bruteforce(g), g
        assert data.alpha == sum(h << (g.p - d - 1) for d, h in enumerate(data.h_vector) if d < g.p)


def test_h_nonnegative_and_alternating(suite):
    for g in suite:
        data = f_h_vectors(g)
        assert min(data.h_vector) >= 0
        c = data.coefficients
        assert c[g.p] == 1
        assert all(c[g.p - i] * (-1) ** i >= 0 for i in range(g.p + 1))
        assert data(g.p) > 0


def test_deletion_contraction(suite):
    for g in suite[:120]:
        for e in range(1, g.q + 1):
            whole = chromatic_polynomial(g)
            d = chromatic_polynomial(minor(g, "delete", e))
            c = chromatic_polynomial(minor(g, "contract", e))
            for lam in range(-2, 5):
                assert whole(lam) == d(lam) - c(lam)


def test_h_recurrence_example():
    d = chromatic_polynomial(minor(EXAMPLE, "delete", 7)).h_vector
    c = chromatic_polynomial(minor(EXAMPLE, "contract", 7)).h_vector
    assert d[:4] == (1, 2, 1, 0)
    assert c[:3] == (1, 3, 2)
    assert EXAMPLE.p == 5
    assert f_h_vectors(EXAMPLE).h_vector[:4] == (1, 3, 4, 2)


def test_larger_whitney_and_stanley():
    rng = random.Random(7)
    for _ in range(25):
        g = random_connected_graph(rng, max_q=12)
        assert f_h_vectors(g).f_vector == nbc_f_vector_bruteforce(g)
    for g in (phi_nt(4, 5), theta_nt(3, 4), complete_graph(5)):
        assert acyclic_count(g) == acyclic_count_bruteforce(g)


def test_chromatic_deterministic_under_relabeling():
    g = EXAMPLE
    for perm in ((7, 6, 5, 4, 3, 2, 1), (2, 1, 4, 3, 6, 5, 7)):
        assert chromatic_polynomial(g.reorder(perm)).coefficients == chromatic_polynomial(g).coefficients


def test_h_recurrence_every_edge(suite):
    for g in suite:
        h = chromatic_polynomial(g).h_vector
        for e in range(1, g.q + 1):
            hd = chromatic_polynomial(minor(g, "delete", e)).h_vector
            hc = chromatic_polynomial(minor(g, "contract", e)).h_vector
            for i in range(g.p + 1):
                below = hc[i - 1] if 1 <= i <= len(hc) else 0
                assert h[i] == hd[i] + below, (g, e, i)
