"""Edge-ordered multigraphs, minors, circuits and cocircuits.

Vertices are the integers 1..p.  Edges are identified only by their
position 1..q in the order, so parallel edges are told apart by index.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

DEFAULT_CIRCUIT_CAP = 10**6


class GraphError(ValueError):
    """Invalid graph or an operation whose preconditions fail."""


class GraphParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class CircuitCapExceeded(GraphError):
    pass


@dataclass(frozen=True)
class OrderedGraph:
    p: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.p < 1:
            raise GraphError("vertex count must be positive")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for idx, (u, v) in enumerate(edges, start=1):
            if not (1 <= u <= self.p and 1 <= v <= self.p):
                raise GraphError(f"edge {idx} = ({u}, {v}) has an endpoint outside 1..{self.p}")
        object.__setattr__(self, "edges", edges)

    @property
    def q(self) -> int:
        return len(self.edges)

    @property
    def k(self) -> int:
        """Number of edges outside the spanning tree, q - p + 1."""
        return self.q - self.p + 1

    def edge(self, i: int) -> tuple[int, int]:
        if not 1 <= i <= self.q:
            raise GraphError(f"edge index {i} out of range 1..{self.q}")
        return self.edges[i - 1]

    @cached_property
    def is_standard(self) -> bool:
        return check_standard_ordering(self)

    @cached_property
    def has_loop(self) -> bool:
        return any(u == v for u, v in self.edges)

    def degrees(self) -> list[int]:
        """Vertex degrees (index 0 unused); a loop counts twice."""
        deg = [0] * (self.p + 1)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def reorder(self, ordering: Sequence[int]) -> "OrderedGraph":
        """Graph whose i-th edge is the ``ordering[i-1]``-th edge of this one."""
        if sorted(ordering) != list(range(1, self.q + 1)):
            raise GraphError("ordering must be a permutation of 1..q")
        return OrderedGraph(self.p, tuple(self.edges[i - 1] for i in ordering))

    def to_text(self) -> str:
        return format_graph(self)


@dataclass(frozen=True)
class Circuit:
    edges: tuple[int, ...]
    is_fundamental: bool = False

    @property
    def broken(self) -> tuple[int, ...]:
        """The circuit with its smallest edge removed."""
        return self.edges[1:]

    def __len__(self) -> int:
        return len(self.edges)


# ---------------------------------------------------------------------------
# parsing / serialization


def parse_graph(text: str) -> OrderedGraph:
    p = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if p is not None:
                raise GraphParseError(lineno, "vertex count declared twice")
            if edges:
                raise GraphParseError(lineno, "'p' line must precede edges")
            if len(parts) != 2:
                raise GraphParseError(lineno, "expected 'p <vertex_count>'")
            p = _parse_int(parts[1], lineno)
            if p < 1:
                raise GraphParseError(lineno, "vertex count must be positive")
        elif tag == "e":
            if p is None:
                raise GraphParseError(lineno, "edge before 'p' line")
            if len(parts) != 3:
                raise GraphParseError(lineno, "expected 'e <u> <v>'")
            u, v = _parse_int(parts[1], lineno), _parse_int(parts[2], lineno)
            for x in (u, v):
                if not 1 <= x <= p:
                    raise GraphParseError(lineno, f"vertex {x} out of range 1..{p}")
            edges.append((u, v))
        else:
            raise GraphParseError(lineno, f"unknown record {tag!r}")
    if p is None:
        raise GraphParseError(0, "missing 'p' line")
    return OrderedGraph(p, tuple(edges))


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphParseError(lineno, f"not an integer: {token!r}") from None


def format_graph(g: OrderedGraph) -> str:
    lines = [f"p {g.p}"]
    lines.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# connectivity helpers


class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n + 1))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def is_spanning_tree(p: int, edges: Iterable[tuple[int, int]]) -> bool:
    edges = list(edges)
    if len(edges) != p - 1:
        return False
    dsu = _DSU(p)
    return all(dsu.union(u, v) for u, v in edges)


def is_connected(g: OrderedGraph) -> bool:
    dsu = _DSU(g.p)
    comps = g.p
    for u, v in g.edges:
        if dsu.union(u, v):
            comps -= 1
    return comps == 1


def is_block(g: OrderedGraph) -> bool:
    """True if g is 2-connected in the block sense (no cut vertex, no loop).

    A single edge, or a bundle of parallel edges, on two vertices counts as a block.
    """
    if g.has_loop or not is_connected(g) or g.q == 0:
        return False
    if g.p <= 2:
        return True
    for cut in range(1, g.p + 1):
        dsu = _DSU(g.p)
        comps = g.p - 1
        for u, v in g.edges:
            if cut in (u, v):
                continue
            if dsu.union(u, v):
                comps -= 1
        if comps != 1:
            return False
    return True


def check_standard_ordering(g: OrderedGraph) -> bool:
    """Do the last p-1 edges form a spanning tree?"""
    if g.q < g.p - 1:
        return False
    return is_spanning_tree(g.p, g.edges[g.q - g.p + 1:])


def _require_standard(g: OrderedGraph) -> None:
    if not g.is_standard:
        raise GraphError("ordering is not standard: the last p-1 edges do not form a spanning tree")


# ---------------------------------------------------------------------------
# minors


def minor(g: OrderedGraph, mode: str, j: int) -> OrderedGraph:
    """Delete or contract edge j, keeping the induced order on the rest.

    Contraction merges the endpoints of e_j into the smaller of the two and
    renumbers the remaining vertices to stay contiguous.  Loops and parallel
    edges produced by the contraction are kept.  Contracting a loop just
    removes it.
    """
    u, v = g.edge(j)
    rest = g.edges[: j - 1] + g.edges[j:]
    if mode == "delete" or (mode == "contract" and u == v):
        return OrderedGraph(g.p, rest)
    if mode != "contract":
        raise GraphError(f"unknown minor mode {mode!r}")
    keep, gone = min(u, v), max(u, v)

    def relabel(x: int) -> int:
        if x == gone:
            x = keep
        return x - 1 if x > gone else x

    return OrderedGraph(g.p - 1, tuple((relabel(a), relabel(b)) for a, b in rest))


def delete_edge(g: OrderedGraph, j: int) -> OrderedGraph:
    return minor(g, "delete", j)


def contract_edge(g: OrderedGraph, j: int) -> OrderedGraph:
    return minor(g, "contract", j)


# ---------------------------------------------------------------------------
# circuits and cocircuits


def _tree_adjacency(g: OrderedGraph) -> dict[int, list[tuple[int, int]]]:
    adj: dict[int, list[tuple[int, int]]] = {x: [] for x in range(1, g.p + 1)}
    for idx in range(g.k + 1, g.q + 1):
        a, b = g.edges[idx - 1]
        adj[a].append((b, idx))
        adj[b].append((a, idx))
    return adj


def _tree_path(g: OrderedGraph, start: int, goal: int) -> list[int]:
    """Edge indices on the tree path between two vertices."""
    adj = _tree_adjacency(g)
    back: dict[int, tuple[int, int] | None] = {start: None}
    stack = [start]
    while stack:
        x = stack.pop()
        if x == goal:
            break
        for y, idx in adj[x]:
            if y not in back:
                back[y] = (x, idx)
                stack.append(y)
    path = []
    x = goal
    while back[x] is not None:
        x, idx = back[x]
        path.append(idx)
    return path


def fundamental_circuit(g: OrderedGraph, i: int) -> Circuit:
    """The unique circuit of T + e_i for a cotree edge e_i (i <= k)."""
    _require_standard(g)
    if not 1 <= i <= g.k:
        raise GraphError(f"edge {i} is not a cotree edge (need 1 <= i <= k = {g.k})")
    u, v = g.edge(i)
    return Circuit(tuple(sorted([i] + _tree_path(g, u, v))), True)


def tree_side(g: OrderedGraph, j: int) -> frozenset[int]:
    """Vertices of the component of T - e_j containing the larger endpoint of e_j."""
    _require_standard(g)
    if not g.k < j <= g.q:
        raise GraphError(f"edge {j} is not a tree edge (need k < j <= q, k = {g.k})")
    u, v = g.edge(j)
    adj = _tree_adjacency(g)
    root = max(u, v)
    seen = {root}
    stack = [root]
    while stack:
        x = stack.pop()
        for y, idx in adj[x]:
            if idx != j and y not in seen:
                seen.add(y)
                stack.append(y)
    return frozenset(seen)


def fundamental_cocircuit(g: OrderedGraph, j: int) -> tuple[int, ...]:
    """Edges of g crossing the two components of T - e_j (always contains j)."""
    side = tree_side(g, j)
    return tuple(idx for idx, (a, b) in enumerate(g.edges, start=1) if (a in side) != (b in side))


def enumerate_circuits(g: OrderedGraph, cap: int = DEFAULT_CIRCUIT_CAP) -> list[Circuit]:
    """All circuits of g, each exactly once.

    Every cycle is found once as a simple path between the endpoints of its
    smallest edge through larger-indexed edges.  Fundamental circuits (when
    the ordering is standard) come first by cotree index, the rest follow in
    lexicographic order of their edge sets.
    """
    incident: dict[int, list[tuple[int, int]]] = {x: [] for x in range(1, g.p + 1)}
    for idx, (a, b) in enumerate(g.edges, start=1):
        if a != b:
            incident[a].append((b, idx))
            incident[b].append((a, idx))

    found: list[tuple[int, ...]] = []

    def extend(x: int, target: int, first: int, on_path: set[int], path: list[int]) -> None:
        for y, idx in incident[x]:
            if idx <= first:
                continue
            if y == target:
                found.append(tuple(sorted([first, *path, idx])))
                if len(found) > cap:
                    raise CircuitCapExceeded(f"more than {cap} circuits")
            elif y not in on_path:
                on_path.add(y)
                path.append(idx)
                extend(y, target, first, on_path, path)
                path.pop()
                on_path.discard(y)

    for first, (s, t) in enumerate(g.edges, start=1):
        if s == t:
            found.append((first,))
        else:
            extend(t, s, first, {s, t}, [])
        if len(found) > cap:
            raise CircuitCapExceeded(f"more than {cap} circuits")

    standard = g.is_standard
    k = g.k if standard else 0
    fundamental: dict[int, Circuit] = {}
    rest = []
    for c in found:
        cotree = [e for e in c if e <= k]
        if standard and len(cotree) == 1:
            fundamental[cotree[0]] = Circuit(c, True)
        else:
            rest.append(Circuit(c, False))
    rest.sort(key=lambda c: c.edges)
    return [fundamental[i] for i in sorted(fundamental)] + rest


def fundamental_circuits(g: OrderedGraph) -> list[Circuit]:
    _require_standard(g)
    return [fundamental_circuit(g, i) for i in range(1, g.k + 1)]
