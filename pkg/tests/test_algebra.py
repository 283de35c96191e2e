import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nbc.algebra import (
    CARDINALITY_MISMATCH,
    DEFAULT_ORIENTATION,
    SPANNING_FAILURE,
    VERIFIED,
    NbcCertificate,
    NbcInputError,
    Orientation,
    broken_circuits,
    candidate_basis,
    canonical_json,
    chosen_monomials,
    degree_slice,
    graded_slices,
    lower_ideal_by_degree,
    minimal_generators,
    quotient_dimension,
    reduced_generators,
    theta_system,
    verify_nbc,
)
from nbc.bounds import l_vector
from nbc.chromatic import f_h_vectors
from nbc.families import complete_graph, phi_graph, theta_graph, theta_nt
from nbc.graph import OrderedGraph, enumerate_circuits, minor
from nbc.poly import FieldPolynomial

from .conftest import EXAMPLE

TRIANGLE = OrderedGraph(3, ((1, 2), (2, 3), (1, 3)))


def lin(k, *idx, modulus=2):
    return FieldPolynomial.linear(modulus, k, {i: 1 for i in idx})


def var(k, i, modulus=2):
    return FieldPolynomial.variable(modulus, k, i)


def mono(*exps):
    return tuple(exps)


# the worked example, keyed by circuit edge set
EXAMPLE_P = {
    (1, 4, 5, 6): lin(3, 1, 2) * lin(3, 1, 3) * lin(3, 1, 2, 3),
    (2, 4, 6): lin(3, 1, 2) * lin(3, 1, 2, 3),
    (3, 5, 6, 7): var(3, 3) * lin(3, 1, 3) * lin(3, 1, 2, 3),
    (1, 2, 5): var(3, 2) * lin(3, 1, 3),
    (1, 3, 4, 7): var(3, 3) * var(3, 3) * lin(3, 1, 2),
    (2, 3, 4, 5, 7): var(3, 3) * var(3, 3) * lin(3, 1, 2) * lin(3, 1, 3),
    (1, 2, 3, 6, 7): var(3, 2) * var(3, 3) * var(3, 3) * lin(3, 1, 2, 3),
}
EXAMPLE_M = {
    (1, 4, 5, 6): mono(3, 0, 0),
    (2, 4, 6): mono(0, 2, 0),
    (3, 5, 6, 7): mono(0, 0, 3),
    (1, 2, 5): mono(1, 1, 0),
    (1, 3, 4, 7): mono(1, 0, 2),
    (2, 3, 4, 5, 7): mono(2, 0, 2),
    (1, 2, 3, 6, 7): mono(1, 1, 2),
}
EXAMPLE_L = {
    mono(0, 0, 0),
    mono(1, 0, 0), mono(0, 1, 0), mono(0, 0, 1),
    mono(2, 0, 0), mono(0, 0, 2), mono(1, 0, 1), mono(0, 1, 1),
    mono(2, 0, 1), mono(0, 1, 2),
}


def test_broken_circuits():
    pairs = {c.edges: b for c, b in broken_circuits(EXAMPLE)}
    assert pairs[(2, 4, 6)] == (4, 6)
    assert pairs[(1, 2, 5)] == (2, 5)
    pair = OrderedGraph(2, ((1, 2), (1, 2)))
    assert [b for _, b in broken_circuits(pair)] == [(2,)]
    with pytest.raises(NbcInputError):
        broken_circuits(OrderedGraph(1, ((1, 1),)))


def test_example_theta_system():
    theta = theta_system(EXAMPLE)
    assert theta == {
        4: lin(7, 4, 1, 2),
        5: lin(7, 5, 1, 3),
        6: lin(7, 6, 1, 2, 3),
        7: lin(7, 7, 3),
    }


def test_deleted_example_theta_system():
    theta = theta_system(minor(EXAMPLE, "delete", 7))
    assert theta == {3: lin(6, 3), 4: lin(6, 4, 1, 2), 5: lin(6, 5, 1), 6: lin(6, 6, 1, 2)}


def test_theta_system_needs_orientation_over_odd_field():
    with pytest.raises(NbcInputError):
        theta_system(EXAMPLE, 3)
    signed = theta_system(EXAMPLE, 3, DEFAULT_ORIENTATION)
    for j, th in signed.items():
        assert th.coefficient(tuple(int(i == j - 1) for i in range(7))) in (1, 2)
        assert {sum(m) for m, _ in th} == {1}


def test_bridge_cocircuit():
    path = OrderedGraph(3, ((1, 2), (2, 3)))
    assert theta_system(path) == {1: lin(2, 1), 2: lin(2, 2)}


def test_example_generators():
    gens = reduced_generators(EXAMPLE)
    assert {c.edges: p for c, p in gens.items()} == EXAMPLE_P


def test_triangle_generator():
    (p,) = reduced_generators(TRIANGLE).values()
    assert p == var(1, 1) * var(1, 1)


def test_example_chosen_monomials():
    chosen = chosen_monomials(EXAMPLE)
    assert {c.edges: m for c, m in chosen.items()} == EXAMPLE_M
    gens = reduced_generators(EXAMPLE)
    for c, m in chosen.items():
        assert m in gens[c].support


def test_example_candidate_basis():
    basis = candidate_basis(EXAMPLE)
    assert set(basis.monomials) == EXAMPLE_L
    assert len(basis) == 10
    assert [basis.count(d) for d in range(5)] == [1, 3, 4, 2, 0]
    # x_1^2 x_3^2 is divisible by x_1 x_3^2, so the pruned generator set drops it
    assert mono(2, 0, 2) not in basis.generators
    assert set(basis.generators) == {mono(3, 0, 0), mono(0, 2, 0), mono(0, 0, 3), mono(1, 1, 0), mono(1, 0, 2)}


def test_displayed_generator_variant_gives_same_basis():
    # x_1^2 x_3^3 in place of x_1^2 x_3^2: both are multiples of x_1 x_3^2, so L(G) is unchanged
    chosen = chosen_monomials(EXAMPLE)
    variant = {c: (mono(2, 0, 3) if c.edges == (2, 3, 4, 5, 7) else m) for c, m in chosen.items()}
    assert candidate_basis(EXAMPLE, variant) == candidate_basis(EXAMPLE)


def test_deleted_example_basis():
    basis = candidate_basis(minor(EXAMPLE, "delete", 7))
    assert set(basis.monomials) == {mono(0, 0), mono(1, 0), mono(0, 1), mono(2, 0)}
    assert set(basis.generators) == {mono(3, 0), mono(0, 2), mono(1, 1)}


def test_contracted_example_basis():
    basis = candidate_basis(minor(EXAMPLE, "contract", 7))
    assert set(basis.monomials) == {
        mono(0, 0, 0), mono(1, 0, 0), mono(0, 1, 0), mono(0, 0, 1), mono(2, 0, 0), mono(0, 1, 1)
    }
    assert set(basis.generators) == {
        mono(3, 0, 0), mono(0, 2, 0), mono(0, 0, 2), mono(1, 1, 0), mono(1, 0, 1)
    }


@pytest.mark.parametrize("field", [2, 3, 5, 7])
def test_example_verifies(field):
    cert = verify_nbc(EXAMPLE, field)
    assert cert.verdict == VERIFIED
    assert cert.quotient_dims[:4] == (1, 3, 4, 2)
    assert cert.dimension == 10
    assert all(r.ok for r in cert.records)


def test_triangle_verifies():
    cert = verify_nbc(TRIANGLE)
    assert cert.verified
    assert cert.basis_L == (((0,),), ((1,),))
    assert cert.records[2].ideal_rank == 1 == cert.records[2].monomial_dim


def test_theta23_verifies():
    assert verify_nbc(theta_nt(2, 3)).verified


def test_k4_star_ordering_verifies():
    assert verify_nbc(complete_graph(4)).verified


def test_k5_star_ordering_cardinality_mismatch():
    cert = verify_nbc(complete_graph(5))
    assert cert.verdict == CARDINALITY_MISMATCH
    assert [(r.basis_count, r.h) for r in cert.records[:4]] == [(1, 1), (6, 6), (11, 11), (5, 6)]


K5_SPANNING_FAILURE = OrderedGraph(
    5, ((4, 5), (3, 4), (2, 3), (1, 5), (1, 3), (1, 4), (2, 4), (1, 2), (3, 5), (2, 5))
)


def test_k5_spanning_failure():
    cert = verify_nbc(K5_SPANNING_FAILURE)
    assert cert.verdict == SPANNING_FAILURE
    r3 = cert.records[3]
    # the counts line up but L_3 is dependent modulo J_3
    assert (r3.basis_count, r3.h, r3.ideal_rank, r3.monomial_dim) == (6, 6, 50, 56)
    assert not r3.independent


@pytest.mark.parametrize(
    "g",
    [
        OrderedGraph(2, ((1, 1), (1, 2))),  # loop
        OrderedGraph(3, ((1, 2), (1, 2))),  # disconnected
        OrderedGraph(3, ((2, 3), (1, 2), (1, 2))),  # last two edges are parallel
    ],
    ids=["loop", "disconnected", "not-standard"],
)
def test_verify_input_errors(g):
    with pytest.raises(NbcInputError):
        verify_nbc(g)


def test_certificate_round_trip():
    cert = verify_nbc(EXAMPLE, 3)
    text = cert.to_json()
    again = NbcCertificate.from_json(text)
    assert again == cert
    assert again.to_json() == text
    assert verify_nbc(again.graph(), again.field).to_json() == text
    data = cert.to_dict()
    assert canonical_json(data) == text
    orders = []
    json.loads(text, object_pairs_hook=lambda pairs: orders.append([k for k, _ in pairs]))
    assert all(keys == sorted(keys) for keys in orders)
    assert set(data) == {"graph", "ordering", "field", "generators_U", "L_by_degree", "degree_records", "verdict"}


def test_certificate_is_byte_stable():
    assert verify_nbc(EXAMPLE).to_json() == verify_nbc(EXAMPLE).to_json()
    assert verify_nbc(EXAMPLE).to_json().endswith("}\n")


def test_candidate_independent_of_field():
    for g in (EXAMPLE, theta_nt(2, 4), phi_graph([4, 3, 5])):
        a, b = verify_nbc(g, 2), verify_nbc(g, 5)
        assert a.basis_L == b.basis_L and a.generators_U == b.generators_U


def test_orientation_flips_keep_verdict():
    flips = Orientation(flipped=frozenset({4, 6}))
    directions = Orientation(directions=tuple((v, u) for u, v in EXAMPLE.edges))
    for o in (flips, directions):
        cert = verify_nbc(EXAMPLE, 3, o)
        assert cert.verified


def test_bad_orientation():
    bad = Orientation(directions=((1, 3),) * 7)
    with pytest.raises(NbcInputError):
        theta_system(EXAMPLE, 3, bad)


def test_quotient_dimension_matches_alpha_free_count():
    g = theta_graph([2, 3, 2])
    assert quotient_dimension(g) == sum(f_h_vectors(g).h_vector)


def test_staircase_bound():
    for g in (EXAMPLE, theta_nt(3, 3), phi_graph([4, 5])):
        cert = verify_nbc(g)
        lv = l_vector(g)
        assert all(len(level) <= lv[d] for d, level in enumerate(cert.basis_L))


def test_lower_ideal_and_minimal_generators():
    gens = minimal_generators([(2, 0), (0, 2), (2, 1), (1, 1)])
    assert set(gens) == {(2, 0), (0, 2), (1, 1)}
    assert lower_ideal_by_degree(2, gens) == (((0, 0),), ((1, 0), (0, 1)))
    assert lower_ideal_by_degree(2, [(1, 0)], max_degree=3)[3] == ((0, 3),)


# ---------------------------------------------------------------------------
# the incremental graded slices span the same space as the full product matrices


def _slice_ranks_direct(g, modulus, top):
    gens = list(reduced_generators(g, modulus, DEFAULT_ORIENTATION if modulus != 2 else None).values())
    return [degree_slice(g.k, gens, d, modulus)[0].rank for d in range(top + 1)]


def _slice_ranks_graded(g, modulus, top):
    gens = list(reduced_generators(g, modulus, DEFAULT_ORIENTATION if modulus != 2 else None).values())
    return [ech.rank for _, ech, _ in graded_slices(g.k, gens, top, modulus)]


@pytest.mark.parametrize(
    "g",
    [EXAMPLE, complete_graph(4), theta_graph([1, 2, 3]), phi_graph([3, 4, 3]), complete_graph(5)],
    ids=["example", "k4", "theta123", "phi343", "k5"],
)
@pytest.mark.parametrize("modulus", [2, 3, 5])
def test_graded_slices_match_direct(g, modulus):
    top = 6
    direct = _slice_ranks_direct(g, modulus, top)
    graded = _slice_ranks_graded(g, modulus, top)
    # graded_slices stops once a degree is full; every later degree is full too
    assert graded == direct[: len(graded)]
    assert all(r == full for r, full in zip(direct[len(graded):], _dims(g.k, len(graded), top)))


def _dims(k, lo, hi):
    from nbc.algebra import monomial_count

    return [monomial_count(k, d) for d in range(lo, hi + 1)]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=2, max_size=4), st.sampled_from([2, 3]))
def test_theta_instances_verify(lengths, modulus):
    assert verify_nbc(theta_graph(lengths), modulus).verified


def test_circuit_order_is_deterministic():
    a = [c.edges for c in enumerate_circuits(EXAMPLE)]
    b = [c.edges for c in enumerate_circuits(EXAMPLE)]
    assert a == b
