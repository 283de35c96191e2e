"""Chromatic polynomials by deletion-contraction, f/h-vectors, acyclic orientations.

Integer polynomials are coefficient lists, lowest degree first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .graph import DEFAULT_CIRCUIT_CAP, GraphError, OrderedGraph, enumerate_circuits, is_connected

Poly = list[int]


class ComplexUndefined(GraphError):
    pass


# ---------------------------------------------------------------------------
# integer polynomial helpers


def _trim(a: Poly) -> Poly:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def padd(a: Poly, b: Poly) -> Poly:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def psub(a: Poly, b: Poly) -> Poly:
    return padd(a, [-c for c in b])


def pmul(a: Poly, b: Poly) -> Poly:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def ppow(a: Poly, n: int) -> Poly:
    out = [1]
    for _ in range(n):
        out = pmul(out, a)
    return out


def peval(a: Poly, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def pdiv_exact(a: Poly, b: Poly) -> Poly:
    """Exact division of integer polynomials; raises if there is a remainder."""
    a = list(a)
    lead = b[-1]
    out = [0] * max(len(a) - len(b) + 1, 1)
    for i in range(len(a) - len(b), -1, -1):
        c, r = divmod(a[i + len(b) - 1], lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[i] = c
        for j, y in enumerate(b):
            a[i + j] -= c * y
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return _trim(out)


LAMBDA = [0, 1]
LAMBDA_MINUS_1 = [-1, 1]


# ---------------------------------------------------------------------------
# chromatic data


@dataclass(frozen=True)
class ChromaticData:
    p: int
    coefficients: tuple[int, ...]  # P(G; lambda) = sum c_j lambda^j, j = 0..p
    f_vector: tuple[int, ...] = field(init=False)
    h_vector: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        coeffs = tuple(self.coefficients) + (0,) * (self.p + 1 - len(self.coefficients))
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "f_vector", f_from_polynomial(coeffs, self.p))
        object.__setattr__(self, "h_vector", h_from_polynomial(coeffs, self.p))

    def __call__(self, x: int) -> int:
        return peval(list(self.coefficients), x)

    @property
    def alpha(self) -> int:
        """Number of acyclic orientations, (-1)^p P(-1)."""
        return (-1) ** self.p * self(-1)


def f_from_polynomial(coeffs: Iterable[int], p: int) -> tuple[int, ...]:
    """f_i with P = f_0 lam^p - f_1 lam^(p-1) + ... + (-1)^p f_p."""
    c = list(coeffs)
    return tuple((-1) ** i * c[p - i] for i in range(p + 1))


def h_from_polynomial(coeffs: Iterable[int], p: int) -> tuple[int, ...]:
    """h_i with P = h_0 lam(lam-1)^(p-1) - h_1 lam(lam-1)^(p-2) + ... + (-1)^p h_p.

    Divide by lambda, then re-expand in powers of (lambda - 1) by repeated
    synthetic division.
    """
    c = _trim(list(coeffs))
    h = [0] * (p + 1)
    h[p] = (-1) ** p * c[0]
    if not any(c[1:]):
        return tuple(h)
    rest = c[1:]  # (P - P(0)) / lambda
    taylor = []
    while any(rest):
        # divide by (lambda - 1): remainder is the next Taylor coefficient at 1
        quo = [0] * (len(rest) - 1)
        acc = 0
        for i in range(len(rest) - 1, -1, -1):
            acc = acc + rest[i]
            if i:
                quo[i - 1] = acc
        taylor.append(acc)
        rest = quo
    if len(taylor) > p:
        raise ArithmeticError("polynomial degree exceeds vertex count")
    for j, b in enumerate(taylor):
        i = p - 1 - j
        h[i] = (-1) ** i * b
    return tuple(h)


# ---------------------------------------------------------------------------
# deletion-contraction


def chromatic_polynomial(g: OrderedGraph) -> ChromaticData:
    """Exact P(G; lambda) by deletion-contraction.

    Parallel edges are collapsed and loops give the zero polynomial.  The
    graph is split into connected components and blocks; inside a block the
    recursion pivots on the highest-indexed edge.  Pendant vertices, trees
    and cycles are closed forms.
    """
    if g.has_loop:
        return ChromaticData(g.p, (0,) * (g.p + 1))
    simple: dict[frozenset[int], int] = {}
    for idx, (u, v) in enumerate(g.edges, start=1):
        simple[frozenset((u, v))] = max(idx, simple.get(frozenset((u, v)), 0))
    edges = {(min(e), max(e)): idx for e, idx in simple.items()}
    memo: dict[frozenset, Poly] = {}
    poly = _components(set(range(1, g.p + 1)), edges, memo)
    return ChromaticData(g.p, tuple(poly))


def _components(vertices: set[int], edges: dict[tuple[int, int], int], memo) -> Poly:
    adj: dict[int, set[int]] = {x: set() for x in vertices}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    result = [1]
    seen: set[int] = set()
    for root in sorted(vertices):
        if root in seen:
            continue
        comp = {root}
        stack = [root]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        sub = {e: i for e, i in edges.items() if e[0] in comp}
        result = pmul(result, _connected(comp, sub, memo))
    return result


def _connected(vertices: set[int], edges: dict[tuple[int, int], int], memo) -> Poly:
    n = len(vertices)
    factor = [1]
    edges = dict(edges)
    vertices = set(vertices)
    # strip pendant vertices: each contributes (lambda - 1)
    deg: dict[int, int] = {x: 0 for x in vertices}
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    leaves = [x for x in vertices if deg[x] == 1]
    while leaves and len(vertices) > 1:
        x = leaves.pop()
        if deg[x] != 1:
            continue
        e = next(e for e in edges if x in e)
        del edges[e]
        y = e[0] if e[1] == x else e[1]
        vertices.discard(x)
        deg[y] -= 1
        factor = pmul(factor, LAMBDA_MINUS_1)
        if deg[y] == 1:
            leaves.append(y)
    n = len(vertices)
    if len(edges) == n - 1:
        return pmul(factor, pmul(LAMBDA, ppow(LAMBDA_MINUS_1, n - 1)))
    if len(edges) == n and all(d == 2 for x, d in deg.items() if x in vertices):
        cyc = padd(ppow(LAMBDA_MINUS_1, n), [(-1) ** n * c for c in LAMBDA_MINUS_1])
        return pmul(factor, cyc)
    key = _canonical_key(vertices, edges)
    if key not in memo:
        memo[key] = _blocks(vertices, edges, memo)
    return pmul(factor, memo[key])


def _canonical_key(vertices: set[int], edges) -> frozenset:
    rank = {x: i for i, x in enumerate(sorted(vertices))}
    return frozenset((rank[u], rank[v]) for u, v in edges)


def _blocks(vertices: set[int], edges: dict[tuple[int, int], int], memo) -> Poly:
    """Connected graph, no pendant vertex: split at cut vertices, else delete-contract."""
    blocks = _biconnected_components(vertices, edges)
    if len(blocks) > 1:
        result = [1]
        for block in blocks:
            bv = {x for e in block for x in e}
            result = pmul(result, _connected(bv, {e: edges[e] for e in block}, memo))
        return pdiv_exact(result, ppow(LAMBDA, len(blocks) - 1))
    pivot = max(edges, key=edges.get)
    deleted = {e: i for e, i in edges.items() if e != pivot}
    keep, gone = pivot
    contracted: dict[tuple[int, int], int] = {}
    for (a, b), i in deleted.items():
        a = keep if a == gone else a
        b = keep if b == gone else b
        e = (min(a, b), max(a, b))
        contracted[e] = max(i, contracted.get(e, 0))
    return psub(
        _connected(vertices, deleted, memo),
        _components(vertices - {gone}, contracted, memo),
    )


def _biconnected_components(vertices: set[int], edges) -> list[list[tuple[int, int]]]:
    """Edge sets of the blocks of a connected simple graph (iterative Tarjan)."""
    adj: dict[int, list[tuple[int, tuple[int, int]]]] = {x: [] for x in vertices}
    for e in edges:
        u, v = e
        adj[u].append((v, e))
        adj[v].append((u, e))
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    blocks = []
    estack: list[tuple[int, int]] = []
    root = min(vertices)
    disc[root] = low[root] = 0
    counter = 1
    stack = [(root, None, iter(adj[root]))]
    while stack:
        x, parent_edge, it = stack[-1]
        advanced = False
        for y, e in it:
            if e == parent_edge:
                continue
            if y not in disc:
                disc[y] = low[y] = counter
                counter += 1
                estack.append(e)
                stack.append((y, e, iter(adj[y])))
                advanced = True
                break
            if disc[y] < disc[x]:
                estack.append(e)
                low[x] = min(low[x], disc[y])
        if advanced:
            continue
        stack.pop()
        if stack:
            parent = stack[-1][0]
            low[parent] = min(low[parent], low[x])
            if low[x] >= disc[parent]:
                block = []
                while True:
                    e = estack.pop()
                    block.append(e)
                    if e == parent_edge:
                        break
                blocks.append(block)
    return blocks


def f_h_vectors(g: OrderedGraph) -> ChromaticData:
    """Chromatic data for a connected loopless graph, with h >= 0 asserted."""
    if g.has_loop:
        raise ComplexUndefined("chromatic zero, complex undefined")
    if not is_connected(g):
        raise GraphError("graph must be connected")
    data = chromatic_polynomial(g)
    if any(h < 0 for h in data.h_vector):
        raise AssertionError(f"negative h-vector entry: {data.h_vector}")
    return data


def acyclic_count(g: OrderedGraph) -> int:
    return chromatic_polynomial(g).alpha


# ---------------------------------------------------------------------------
# brute-force oracles


def nbc_f_vector_bruteforce(g: OrderedGraph, cap: int = 20) -> tuple[int, ...]:
    """Count edge subsets containing no broken circuit, by size.

    Sets are grown in increasing edge order; a set is abandoned as soon as
    its newest edge completes a broken circuit.
    """
    if g.q > cap:
        raise GraphError(f"q = {g.q} exceeds brute-force cap {cap}")
    broken_by_top: dict[int, list[int]] = {}
    has_empty = False
    for c in enumerate_circuits(g, DEFAULT_CIRCUIT_CAP):
        bc = c.broken
        if not bc:
            has_empty = True
            continue
        mask = 0
        for e in bc:
            mask |= 1 << e
        broken_by_top.setdefault(max(bc), []).append(mask)
    f = [0] * (g.p + 1)
    if has_empty:
        return tuple(f)

    def grow(mask: int, size: int, start: int) -> None:
        f[size] += 1
        for e in range(start, g.q + 1):
            new = mask | (1 << e)
            if any(bc & new == bc for bc in broken_by_top.get(e, ())):
                continue
            grow(new, size + 1, e + 1)

    grow(0, 0, 1)
    return tuple(f)


def acyclic_count_bruteforce(g: OrderedGraph) -> int:
    """Count acyclic orientations by orienting edges one at a time.

    Orienting u -> v is allowed only when v cannot already reach u.
    """
    if g.has_loop:
        return 0
    out: dict[int, list[int]] = {x: [] for x in range(1, g.p + 1)}

    def reaches(a: int, b: int) -> bool:
        stack, seen = [a], {a}
        while stack:
            x = stack.pop()
            if x == b:
                return True
            for y in out[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return False

    def count(i: int) -> int:
        if i == g.q:
            return 1
        u, v = g.edges[i]
        total = 0
        for a, b in ((u, v), (v, u)):
            if not reaches(b, a):
                out[a].append(b)
                total += count(i + 1)
                out[a].pop()
        return total

    return count(0)


def proper_colorings_bruteforce(g: OrderedGraph, colors: int) -> int:
    """Number of proper colorings with the given number of colors (for tiny graphs)."""
    from itertools import product

    return sum(
        all(c[u - 1] != c[v - 1] for u, v in g.edges)
        for c in product(range(colors), repeat=g.p)
    )
