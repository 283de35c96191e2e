"""Broken-circuit ideals modulo Brown's linear system of parameters.

For a standard ordering with tree T = {e_{k+1}, ..., e_q}, each tree edge
e_j gives a linear form theta_j over its fundamental cocircuit.  Solving
theta_j = 0 for x_j and substituting into the broken-circuit monomials gives
generators p_C of an ideal J in k variables; the candidate monomial basis
L is everything outside the upper ideal U generated by one chosen monomial
m_C per circuit.  ``verify_nbc`` decides, degree by degree, whether L is a
basis of F[x_1..x_k]/J.
"""

from __future__ import annotations

import hashlib
import json
from math import comb
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .chromatic import f_h_vectors
from .graph import (
    DEFAULT_CIRCUIT_CAP,
    Circuit,
    GraphError,
    OrderedGraph,
    enumerate_circuits,
    format_graph,
    fundamental_cocircuit,
    is_connected,
    tree_side,
)
from .linalg import echelon, encode_row, is_zero
from .poly import (
    FieldPolynomial,
    Monomial,
    divides,
    field_name,
    monomials_of_degree,
    parse_field,
    product,
    unit,
)

VERIFIED = "verified"
CARDINALITY_MISMATCH = "cardinality-mismatch"
SPANNING_FAILURE = "spanning-failure"


class NbcInputError(GraphError):
    pass


# ---------------------------------------------------------------------------
# orientation


@dataclass(frozen=True)
class Orientation:
    """Edge directions plus a direction for every fundamental cocircuit.

    ``directions[i-1]`` is (tail, head) of e_i; ``None`` keeps each edge as
    written.  Cocircuit D_j points toward the component of T - e_j holding
    the larger endpoint of e_j, unless j is in ``flipped``.
    """

    directions: tuple[tuple[int, int], ...] | None = None
    flipped: frozenset[int] = frozenset()

    def direction(self, g: OrderedGraph, i: int) -> tuple[int, int]:
        if self.directions is None:
            return g.edge(i)
        tail, head = self.directions[i - 1]
        if {tail, head} != set(g.edge(i)):
            raise NbcInputError(f"direction {tail}->{head} does not match edge {i} = {g.edge(i)}")
        return tail, head


DEFAULT_ORIENTATION = Orientation()


def _validate(g: OrderedGraph) -> None:
    if g.has_loop:
        raise NbcInputError("graph has a loop")
    if not is_connected(g):
        raise NbcInputError("graph is disconnected; split it into blocks first")
    if not g.is_standard:
        raise NbcInputError("ordering is not standard")


def cocircuit_signs(g: OrderedGraph, j: int, orientation: Orientation) -> dict[int, int]:
    """epsilon_{i,j} for every e_i in D_j."""
    target = tree_side(g, j)
    if j in orientation.flipped:
        target = frozenset(range(1, g.p + 1)) - target
    signs = {}
    for i in fundamental_cocircuit(g, j):
        tail, head = orientation.direction(g, i)
        signs[i] = 1 if head in target and tail not in target else -1
    return signs


def broken_circuits(g: OrderedGraph, circuit_cap: int = DEFAULT_CIRCUIT_CAP) -> list[tuple[Circuit, tuple[int, ...]]]:
    """Every circuit paired with its broken circuit C - min C."""
    if g.has_loop:
        raise NbcInputError("graph has a loop; its broken circuit would be empty")
    return [(c, c.broken) for c in enumerate_circuits(g, circuit_cap)]


def theta_system(
    g: OrderedGraph, field: int | str = 2, orientation: Orientation | None = None
) -> dict[int, FieldPolynomial]:
    """theta_j = sum over D_j of epsilon_{i,j} x_i, in q variables, for every tree edge j."""
    _validate(g)
    modulus = parse_field(field)
    if modulus != 2 and orientation is None:
        raise NbcInputError("an orientation is required over odd characteristic")
    orientation = orientation or DEFAULT_ORIENTATION
    return {
        j: FieldPolynomial.linear(modulus, g.q, cocircuit_signs(g, j, orientation))
        for j in range(g.k + 1, g.q + 1)
    }


def tree_substitutions(
    g: OrderedGraph, field: int | str = 2, orientation: Orientation | None = None
) -> dict[int, FieldPolynomial]:
    """x_j (j > k) written in x_1..x_k using theta_j = 0."""
    modulus = parse_field(field)
    thetas = theta_system(g, modulus, orientation)
    subs = {}
    for j, theta in thetas.items():
        own = theta.coefficient(unit(g.q, j))
        coeffs = {}
        for m, c in theta:
            i = m.index(1)
            if i + 1 != j:
                coeffs[i + 1] = -c * own  # own = +-1 is its own inverse
        subs[j] = FieldPolynomial.linear(modulus, g.k, coeffs)
    return subs


def reduced_generators(
    g: OrderedGraph,
    field: int | str = 2,
    orientation: Orientation | None = None,
    circuits: Sequence[Circuit] | None = None,
) -> dict[Circuit, FieldPolynomial]:
    """p_C: the broken-circuit monomial of C with every tree variable eliminated."""
    modulus = parse_field(field)
    subs = tree_substitutions(g, modulus, orientation)
    if circuits is None:
        circuits = enumerate_circuits(g)
    out = {}
    for c in circuits:
        factors = [
            FieldPolynomial.variable(modulus, g.k, e) if e <= g.k else subs[e] for e in c.broken
        ]
        out[c] = product(factors, modulus, g.k)
    return out


def selection_indices(g: OrderedGraph) -> dict[int, int]:
    """d_j: j itself for cotree edges, the smallest edge of D_j for tree edges."""
    d = {i: i for i in range(1, g.k + 1)}
    for j in range(g.k + 1, g.q + 1):
        d[j] = min(fundamental_cocircuit(g, j))
    return d


def chosen_monomials(g: OrderedGraph, circuits: Sequence[Circuit] | None = None) -> dict[Circuit, Monomial]:
    """m_C: x_i^{|C|-1} for fundamental C_i, else the product of x_{d_j} over the broken circuit."""
    _validate(g)
    if circuits is None:
        circuits = enumerate_circuits(g)
    d = selection_indices(g)
    out = {}
    for c in circuits:
        if c.is_fundamental:
            (i,) = [e for e in c.edges if e <= g.k]
            out[c] = unit(g.k, i, len(c.broken))
        else:
            exps = [0] * g.k
            for e in c.broken:
                exps[d[e] - 1] += 1
            out[c] = tuple(exps)
    return out


# ---------------------------------------------------------------------------
# candidate basis


def minimal_generators(monomials) -> tuple[Monomial, ...]:
    """Drop monomials divisible by another one in the set."""
    kept: list[Monomial] = []
    for m in sorted(set(monomials), key=lambda m: (sum(m), tuple(-x for x in m))):
        if not any(divides(g, m) for g in kept):
            kept.append(m)
    return tuple(kept)


def lower_ideal_by_degree(k: int, generators: Sequence[Monomial], max_degree: int | None = None):
    """Monomials in k variables divisible by no generator, grouped by degree.

    Grows degree d+1 from degree d, so the generators must include a pure
    power of every variable (otherwise the set is infinite) unless
    ``max_degree`` is given.
    """
    levels = [[(0,) * k]]
    while True:
        d = len(levels)
        if max_degree is not None and d > max_degree:
            break
        nxt = set()
        for m in levels[-1]:
            for i in range(k):
                n = m[:i] + (m[i] + 1,) + m[i + 1:]
                if not any(divides(g, n) for g in generators):
                    nxt.add(n)
        if not nxt:
            break
        levels.append(sorted(nxt, reverse=True))
    return tuple(tuple(level) for level in levels)


@dataclass(frozen=True)
class CandidateBasis:
    k: int
    generators: tuple[Monomial, ...]  # minimal generators of U(G)
    by_degree: tuple[tuple[Monomial, ...], ...]  # L(G) split by total degree

    @property
    def monomials(self) -> tuple[Monomial, ...]:
        return tuple(m for level in self.by_degree for m in level)

    def __len__(self) -> int:
        return sum(len(level) for level in self.by_degree)

    def count(self, d: int) -> int:
        return len(self.by_degree[d]) if 0 <= d < len(self.by_degree) else 0

    def __contains__(self, m) -> bool:
        m = tuple(m)
        return sum(m) < len(self.by_degree) and m in self.by_degree[sum(m)]


def candidate_basis(g: OrderedGraph, chosen: Mapping[Circuit, Monomial] | None = None) -> CandidateBasis:
    if chosen is None:
        chosen = chosen_monomials(g)
    gens = minimal_generators(chosen.values())
    for i in range(1, g.k + 1):
        if not any(sum(m) == m[i - 1] for m in gens if m[i - 1]):
            raise AssertionError(f"x_{i} has no pure-power generator; staircase unbounded")
    return CandidateBasis(g.k, gens, lower_ideal_by_degree(g.k, gens))


# ---------------------------------------------------------------------------
# certification


@dataclass(frozen=True)
class DegreeRecord:
    degree: int
    monomial_dim: int
    ideal_rank: int
    basis_count: int
    h: int
    independent: bool
    implied: bool = False

    @property
    def quotient_dim(self) -> int:
        return self.monomial_dim - self.ideal_rank

    @property
    def ok(self) -> bool:
        return (
            self.basis_count == self.h
            and self.ideal_rank + self.basis_count == self.monomial_dim
            and self.independent
        )

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "monomial_dim": self.monomial_dim,
            "ideal_rank": self.ideal_rank,
            "basis_count": self.basis_count,
            "h": self.h,
            "independent": self.independent,
            "implied": self.implied,
        }


@dataclass(frozen=True)
class NbcCertificate:
    p: int
    edges: tuple[tuple[int, int], ...]
    field: int
    generators_U: tuple[Monomial, ...]
    basis_L: tuple[tuple[Monomial, ...], ...]
    records: tuple[DegreeRecord, ...]
    verdict: str
    graph_hash: str = field(default="")

    @property
    def verified(self) -> bool:
        return self.verdict == VERIFIED

    @property
    def quotient_dims(self) -> tuple[int, ...]:
        return tuple(r.quotient_dim for r in self.records)

    @property
    def dimension(self) -> int:
        return sum(self.quotient_dims)

    def graph(self) -> OrderedGraph:
        return OrderedGraph(self.p, self.edges)

    def to_dict(self) -> dict:
        return {
            "graph": {"p": self.p, "q": len(self.edges), "k": len(self.edges) - self.p + 1, "sha256": self.graph_hash},
            "ordering": [list(e) for e in self.edges],
            "field": field_name(self.field),
            "generators_U": [list(m) for m in self.generators_U],
            "L_by_degree": [[list(m) for m in level] for level in self.basis_L],
            "degree_records": [r.to_dict() for r in self.records],
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "NbcCertificate":
        return cls(
            p=data["graph"]["p"],
            edges=tuple(tuple(e) for e in data["ordering"]),
            field=parse_field(data["field"]),
            generators_U=tuple(tuple(m) for m in data["generators_U"]),
            basis_L=tuple(tuple(tuple(m) for m in level) for level in data["L_by_degree"]),
            records=tuple(DegreeRecord(**r) for r in data["degree_records"]),
            verdict=data["verdict"],
            graph_hash=data["graph"]["sha256"],
        )

    @classmethod
    def from_json(cls, text: str) -> "NbcCertificate":
        return cls.from_dict(json.loads(text))


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def graph_hash(g: OrderedGraph) -> str:
    return hashlib.sha256(format_graph(g).encode()).hexdigest()


def monomial_count(k: int, d: int) -> int:
    """Dimension of the degree-d part of a polynomial ring in k variables."""
    if k == 0:
        return 1 if d == 0 else 0
    return comb(d + k - 1, k - 1)


def degree_slice(
    k: int, generators: Sequence[FieldPolynomial], d: int, modulus: int
):
    """Echelon form of the degree-d part of the ideal, plus the column index.

    Monomials are packed into integers in base d+1 so that multiplying two
    monomials of total degree at most d is a single integer addition.
    """
    cols = monomials_of_degree(k, d)
    index = {m: i for i, m in enumerate(cols)}
    base = d + 1
    weights = [base ** (k - 1 - i) for i in range(k)]

    def pack(m: Monomial) -> int:
        return sum(e * w for e, w in zip(m, weights))

    packed_index = {pack(m): i for i, m in enumerate(cols)}
    ech = echelon(modulus)
    full = len(cols)
    for gen in generators:
        e = gen.degree
        if e > d or e < 0:
            continue
        terms = [(pack(t), c) for t, c in gen]
        for mult in monomials_of_degree(k, d - e):
            if ech.rank == full:
                return ech, index
            shift = pack(mult)
            ech.add(encode_row(modulus, {packed_index[shift + t]: c for t, c in terms}))
    return ech, index


def graded_slices(k: int, generators: Sequence[FieldPolynomial], top: int, modulus: int):
    """Yield (d, echelon of J_d, column index) for d = 0, 1, ... up to ``top``.

    Rows are products m * p_C as in ``degree_slice``, but J_d is built as
    x_1 J_{d-1} + ... + x_k J_{d-1} plus the generators of degree d, using
    only the products that were independent one degree lower.  The row space
    is the same; the redundant multiples are never formed.
    """
    base = top + 2
    weights = [base ** (k - 1 - i) for i in range(k)]

    def pack(m: Monomial) -> int:
        return sum(e * w for e, w in zip(m, weights))

    terms = [[(pack(t), c) for t, c in gen] for gen in generators]
    degrees = [gen.degree for gen in generators]
    independent: list[tuple[int, int]] = []  # (generator, packed multiplier)
    for d in range(top + 1):
        cols = monomials_of_degree(k, d)
        index = {m: i for i, m in enumerate(cols)}
        packed_index = {pack(m): i for i, m in enumerate(cols)}
        full = len(cols)
        candidates = sorted({(j, s + w) for j, s in independent for w in weights})
        candidates += [(j, 0) for j, e in enumerate(degrees) if e == d]
        ech = echelon(modulus)
        independent = []
        for j, s in candidates:
            if ech.rank == full:
                break
            row = encode_row(modulus, {packed_index[s + t]: c for t, c in terms[j]})
            if ech.add(row):
                independent.append((j, s))
        yield d, ech, index


def in_ideal(generators: Sequence[FieldPolynomial], f: FieldPolynomial) -> bool:
    """Membership of a homogeneous polynomial in the ideal of homogeneous generators."""
    if not f:
        return True
    if not f.is_homogeneous():
        raise ValueError("membership test needs a homogeneous polynomial")
    ech, index = degree_slice(f.nvars, generators, f.degree, f.modulus)
    row = encode_row(f.modulus, {index[m]: c for m, c in f})
    return is_zero(ech.reduce(row))


def verify_nbc(
    g: OrderedGraph,
    field: int | str = 2,
    orientation: Orientation | None = None,
    circuit_cap: int = DEFAULT_CIRCUIT_CAP,
) -> NbcCertificate:
    """Certify (or refute) that L(G) is a basis of R(G) over GF(field).

    For each degree d the ideal slice J_d is spanned by the products m * p_C
    of total degree d (see ``graded_slices``).  The verdict needs |L_d| = h_d, rank J_d + |L_d| = dim Mon_d,
    and L_d independent modulo J_d, for every d up to one past the staircase
    bound.  Once J_d fills a whole degree, every higher degree is full too
    (multiplying by the variables stays in the ideal), so those records are
    filled in without further elimination and marked ``implied``.
    """
    _validate(g)
    modulus = parse_field(field)
    if orientation is None and modulus != 2:
        orientation = DEFAULT_ORIENTATION
    h = f_h_vectors(g).h_vector
    if any(x < 0 for x in h):
        raise RuntimeError(f"negative h-vector {h}: chromatic computation is broken")
    circuits = enumerate_circuits(g, circuit_cap)
    gens = reduced_generators(g, modulus, orientation, circuits)
    chosen = chosen_monomials(g, circuits)
    basis = candidate_basis(g, chosen)

    k = g.k
    d_max = sum(len(c) - 2 for c in circuits if c.is_fundamental)
    top = max(d_max + 1, max((i for i, x in enumerate(h) if x), default=0))
    ordered_gens = [gens[c] for c in circuits]
    records = []
    slices = graded_slices(k, ordered_gens, top, modulus)
    vanished = False
    for d in range(top + 1):
        dim = monomial_count(k, d)
        h_d = h[d] if d < len(h) else 0
        n_basis = basis.count(d)
        if vanished:
            records.append(DegreeRecord(d, dim, dim, n_basis, h_d, n_basis == 0, implied=True))
            continue
        _, ech, index = next(slices)
        r = ech.rank
        independent = True
        for m in basis.by_degree[d] if d < len(basis.by_degree) else ():
            if not ech.add(encode_row(modulus, {index[m]: 1})):
                independent = False
                break
        records.append(DegreeRecord(d, dim, r, n_basis, h_d, independent))
        vanished = r == dim

    sizes = [len(c) for c in circuits if c.is_fundamental]
    assert all(m[i] <= sizes[i] - 2 for m in basis.monomials for i in range(k)), "L(G) left the staircase"

    if any(rec.basis_count != rec.h for rec in records):
        verdict = CARDINALITY_MISMATCH
    elif all(rec.ok for rec in records):
        verdict = VERIFIED
    else:
        verdict = SPANNING_FAILURE
    return NbcCertificate(
        p=g.p,
        edges=g.edges,
        field=modulus,
        generators_U=basis.generators,
        basis_L=basis.by_degree,
        records=tuple(records),
        verdict=verdict,
        graph_hash=graph_hash(g),
    )


def quotient_dimension(g: OrderedGraph, field: int | str = 2) -> int:
    """dim R(G), summed from the graded ranks."""
    return verify_nbc(g, field).dimension
