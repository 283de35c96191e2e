"""Structural checks around the candidate basis: the degree-two splitting,
parallel-edge reduction, and the non-Groebner example."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    DEFAULT_ORIENTATION,
    NbcInputError,
    candidate_basis,
    degree_slice,
    in_ideal,
    reduced_generators,
    verify_nbc,
)
from .graph import OrderedGraph, is_block, minor
from .poly import FieldPolynomial, Monomial, parse_field


class HypothesisError(NbcInputError):
    """A precondition of a structural check does not hold."""


def degree_two_vertex(g: OrderedGraph) -> int:
    """The vertex w whose only edges are e_k and e_q, or raise."""
    if not g.is_standard:
        raise HypothesisError("hypothesis failed: ordering is not standard")
    if g.k < 1:
        raise HypothesisError("hypothesis failed: no cotree edge (k = 0)")
    if not is_block(g):
        raise HypothesisError("hypothesis failed: graph is not a block")
    ek, eq = set(g.edge(g.k)), set(g.edge(g.q))
    if ek == eq:
        raise HypothesisError("hypothesis failed: e_k and e_q are parallel, so G / e_q has a loop")
    for w in sorted(ek & eq):
        touching = [i for i, e in enumerate(g.edges, 1) if w in e]
        if sorted(touching) == [g.k, g.q] and g.degrees()[w] == 2:
            return w
    raise HypothesisError(
        f"hypothesis failed: no degree-2 vertex whose edges are e_{g.k} and e_{g.q}"
    )


@dataclass(frozen=True)
class SplittingReport:
    w: int
    L: tuple[Monomial, ...]
    L_deleted: tuple[Monomial, ...]  # in k-1 variables
    L_contracted: tuple[Monomial, ...]  # in k variables
    holds: bool

    @property
    def sizes(self) -> tuple[int, int, int]:
        return len(self.L), len(self.L_deleted), len(self.L_contracted)


def check_splitting(g: OrderedGraph) -> SplittingReport:
    """Compare L(G) with L(G - e_q) plus x_k * L(G / e_q)."""
    w = degree_two_vertex(g)
    k = g.k
    L = candidate_basis(g).monomials
    deleted = minor(g, "delete", g.q)
    contracted = minor(g, "contract", g.q)
    L_del = candidate_basis(deleted).monomials
    L_con = candidate_basis(contracted).monomials
    lifted_del = {m + (0,) for m in L_del}
    lifted_con = {m[: k - 1] + (m[k - 1] + 1,) for m in L_con}
    holds = (
        not (lifted_del & lifted_con)
        and lifted_del | lifted_con == set(L)
        and len(L) == len(L_del) + len(L_con)
    )
    return SplittingReport(w, L, L_del, L_con, holds)


def _same_up_to_sign(a: FieldPolynomial, b: FieldPolynomial) -> bool:
    return a == b or a == -b


def check_deletion_generators(g: OrderedGraph, field: int | str = 2) -> bool:
    """Generators of J(G - e_q) are those of J(G) with x_k set to zero."""
    degree_two_vertex(g)
    modulus = parse_field(field)
    orientation = None if modulus == 2 else DEFAULT_ORIENTATION
    k = g.k
    gens = reduced_generators(g, modulus, orientation)
    deleted = minor(g, "delete", g.q)
    sub = reduced_generators(deleted, modulus, orientation)
    sub_by_edges = {c.edges: p for c, p in sub.items()}
    for c, p in gens.items():
        cut = p.set_zero(k)
        if k in c.edges:
            if cut:
                return False
            continue
        other = sub_by_edges.pop(c.edges, None)
        if other is None or not _same_up_to_sign(cut.project(k - 1), other):
            return False
    return not sub_by_edges


def check_contraction_generators(g: OrderedGraph, field: int | str = 2) -> bool:
    """p_C = x_k * p~_{C/e_q} for circuits through e_q, p_C = p~_C otherwise."""
    degree_two_vertex(g)
    modulus = parse_field(field)
    orientation = None if modulus == 2 else DEFAULT_ORIENTATION
    k, q = g.k, g.q
    gens = reduced_generators(g, modulus, orientation)
    contracted = minor(g, "contract", q)
    sub = reduced_generators(contracted, modulus, orientation)
    sub_by_edges = {c.edges: p for c, p in sub.items()}
    xk = FieldPolynomial.variable(modulus, k, k)
    for c, p in gens.items():
        if q in c.edges:
            other = sub_by_edges.pop(tuple(e for e in c.edges if e != q), None)
            if other is None or not _same_up_to_sign(p, xk * other):
                return False
        else:
            other = sub_by_edges.pop(c.edges, None)
            if other is None or not _same_up_to_sign(p, other):
                return False
    return not sub_by_edges


# ---------------------------------------------------------------------------
# parallel cotree edges


def multiedge_reduce(g: OrderedGraph) -> OrderedGraph:
    """G - e_k when e_{k-1} and e_k are parallel."""
    if not g.is_standard:
        raise HypothesisError("hypothesis failed: ordering is not standard")
    if g.k < 2:
        raise HypothesisError("hypothesis failed: fewer than two cotree edges")
    a, b = g.edge(g.k - 1), g.edge(g.k)
    if set(a) != set(b) or a[0] == a[1]:
        raise HypothesisError(f"hypothesis failed: e_{g.k - 1} = {a} and e_{g.k} = {b} are not parallel")
    return minor(g, "delete", g.k)


def multiedge_dimensions(g: OrderedGraph, field: int | str = 2) -> tuple[int, int]:
    """(dim R(G), dim R(G - e_k)) from graded ranks; equal when the reduction is valid."""
    reduced = multiedge_reduce(g)
    return verify_nbc(g, field).dimension, verify_nbc(reduced, field).dimension


# ---------------------------------------------------------------------------
# the three-path theta example


def groebner_gap_generators(field: int | str = 3) -> list[FieldPolynomial]:
    """x1(x1+x2)^2, x2(x1+x2)^2, x1 x2^2 over GF(field)."""
    modulus = parse_field(field)
    x1 = FieldPolynomial.variable(modulus, 2, 1)
    x2 = FieldPolynomial.variable(modulus, 2, 2)
    s = x1 + x2
    return [x1 * s * s, x2 * s * s, x1 * x2 * x2]


GROEBNER_CHOSEN = ((3, 0), (0, 3), (1, 2))


@dataclass(frozen=True)
class GroebnerGapReport:
    field: int
    slice_rank: int
    slice_dim: int
    membership: dict[str, bool]
    chosen_in_support: bool

    @property
    def gap(self) -> bool:
        """Neither pure cube lies in J, so no term order has the chosen monomials as leading terms."""
        return not self.membership["x1^3"] and not self.membership["x2^3"] and self.chosen_in_support


def groebner_gap_check(field: int | str = 3) -> GroebnerGapReport:
    """Degree-3 membership tests for the fixed three-generator ideal.

    Over GF(2) the sum of the first and third generators is x1^3, so the
    gap only appears in odd characteristic; the default field is GF(3).
    """
    modulus = parse_field(field)
    gens = groebner_gap_generators(modulus)
    ech, _ = degree_slice(2, gens, 3, modulus)
    tests = {
        "x1^3": FieldPolynomial.monomial(modulus, (3, 0)),
        "x2^3": FieldPolynomial.monomial(modulus, (0, 3)),
        "x1*x2^2": FieldPolynomial.monomial(modulus, (1, 2)),
        "0": FieldPolynomial(modulus, 2),
    }
    membership = {name: in_ideal(gens, f) for name, f in tests.items()}
    chosen_ok = all(gen.coefficient(m) != 0 for gen, m in zip(gens, GROEBNER_CHOSEN))
    return GroebnerGapReport(modulus, ech.rank, 4, membership, chosen_ok)

