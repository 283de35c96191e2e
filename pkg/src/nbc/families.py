"""Labeled graph families: theta and phi labelings, ladders, cycles, complete graphs.

Every generator returns a standard ordering.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterator, Sequence

from .graph import GraphError, OrderedGraph


class FamilyError(GraphError):
    pass


def _assemble(p: int, labeled: dict[int, tuple[int, int]]) -> OrderedGraph:
    q = len(labeled)
    assert sorted(labeled) == list(range(1, q + 1)), labeled
    edges = tuple((min(u, v), max(u, v)) for _, (u, v) in sorted(labeled.items()))
    g = OrderedGraph(p, edges)
    assert g.is_standard
    return g


def theta_graph(lengths: Sequence[int]) -> OrderedGraph:
    """Generalized theta graph with a theta labeling.

    ``lengths`` lists the u-v path lengths in labeling order.  Length-one
    paths take the top cotree labels e_k, e_{k-1}, ...; each longer path but
    the last takes the next cotree label on its edge at u and then the next
    tree labels walking toward v.  The last long path lies entirely in the
    tree.  Hubs are vertices 1 (u) and 2 (v).
    """
    lengths = list(lengths)
    if len(lengths) < 1:
        raise FamilyError("theta graph needs at least one path")
    if any(n < 1 for n in lengths):
        raise FamilyError("path lengths must be positive")
    t = len(lengths)
    q = sum(lengths)
    p = 2 + sum(n - 1 for n in lengths)
    k = q - p + 1
    short = [i for i, n in enumerate(lengths) if n == 1]
    long_ = [i for i, n in enumerate(lengths) if n >= 2]

    u, v = 1, 2
    next_vertex = 3
    labeled: dict[int, tuple[int, int]] = {}
    cotree = k
    tree = q

    if not long_:
        # all paths are single u-v edges; one of them has to be the tree
        for i in short[:-1]:
            labeled[cotree] = (u, v)
            cotree -= 1
        labeled[tree] = (u, v)
        return _assemble(p, labeled)

    for _ in short:
        labeled[cotree] = (u, v)
        cotree -= 1
    for pos, i in enumerate(long_):
        n = lengths[i]
        inner = list(range(next_vertex, next_vertex + n - 1))
        next_vertex += n - 1
        walk = [u, *inner, v]
        steps = list(zip(walk, walk[1:]))
        if pos < len(long_) - 1:
            labeled[cotree] = steps[0]
            cotree -= 1
            steps = steps[1:]
        for step in steps:
            labeled[tree] = step
            tree -= 1
    assert cotree == 0 and tree == k, (cotree, tree, k, t)
    return _assemble(p, labeled)


def theta_nt(n: int, t: int) -> OrderedGraph:
    """Theta_{n,t}: t paths of length n."""
    if t < 1 or n < 1:
        raise FamilyError("Theta_{n,t} needs n >= 1 and t >= 1")
    return theta_graph([n] * t)


def k2t(t: int) -> OrderedGraph:
    """Complete bipartite K_{2,t} = Theta_{2,t}."""
    return theta_nt(2, t)


def phi_graph(lengths: Sequence[int], offsets: Sequence[int] | None = None) -> OrderedGraph:
    """Phi graph (cycles glued edge to edge in series) with a phi labeling.

    Cycle i has edges c_0 = e^(i), c_1, ..., c_{n_i - 1} in cyclic order; its
    glue edge f^(i) is c_{offsets[i]} and is identified with e^(i+1).  The
    default offset is n_i // 2, the edge opposite e^(i).  e^(i) gets label
    e_{k-i+1}; the path from e^(i) to f^(i) on the c_1 side (P) and then the
    one on the c_{n-1} side (Q) take descending tree labels, each walked away
    from e^(i).  The last cycle has the single path c_1, ..., c_{n-1}.
    """
    lengths = list(lengths)
    t = len(lengths)
    if t < 1:
        raise FamilyError("phi graph needs at least one cycle")
    if any(n < 2 for n in lengths):
        raise FamilyError("every cycle must have length at least 2")
    if offsets is None:
        offsets = [n // 2 for n in lengths[:-1]]
    offsets = list(offsets)
    if len(offsets) != t - 1:
        raise FamilyError(f"need {t - 1} glue offsets, got {len(offsets)}")
    for n, s in zip(lengths, offsets):
        if not 1 <= s <= n - 1:
            raise FamilyError(f"glue edge c_{s} is not in a cycle of length {n}")

    q = sum(lengths) - (t - 1)
    p = sum(lengths) - 2 * (t - 1)
    k = t
    labeled: dict[int, tuple[int, int]] = {}
    tree = q
    # first glue edge is a fresh edge on vertices 1, 2
    a, b = 1, 2
    next_vertex = 3
    for i, n in enumerate(lengths):
        # vertices w_0 = a, w_1 = b, w_2..w_{n-1} new; c_j = (w_j, w_{j+1})
        w = [a, b] + list(range(next_vertex, next_vertex + n - 2))
        next_vertex += n - 2
        c = [(w[j], w[(j + 1) % n]) for j in range(n)]
        labeled[k - i] = c[0]
        if i < t - 1:
            s = offsets[i]
            runs = [c[1:s], [c[j] for j in range(n - 1, s, -1)]]
            a, b = w[(s + 1) % n], w[s]
        else:
            runs = [c[1:]]
        for run in runs:
            for edge in run:
                labeled[tree] = edge
                tree -= 1
    assert tree == k
    return _assemble(p, labeled)


def phi_nt(n: int, t: int) -> OrderedGraph:
    """A member of Phi_{n,t}: t n-cycles, each glued to its neighbours at opposite edges."""
    if n < 4:
        raise FamilyError("Phi_{n,t} needs n >= 4")
    if t < 1:
        raise FamilyError("Phi_{n,t} needs t >= 1")
    return phi_graph([n] * t)


def ladder(t: int) -> OrderedGraph:
    """P_2 x P_t with a phi labeling (a member of Phi_{4,t-1})."""
    if t < 2:
        raise FamilyError("P_2 x P_t needs t >= 2")
    return phi_nt(4, t - 1)


def cycle_graph(n: int) -> OrderedGraph:
    if n < 1:
        raise FamilyError("cycle length must be positive")
    if n == 1:
        return OrderedGraph(1, ((1, 1),))
    return phi_graph([n])


def complete_graph(n: int) -> OrderedGraph:
    """K_n ordered with the star at vertex n last, so the star is the tree."""
    if n < 1:
        raise FamilyError("K_n needs n >= 1")
    cotree = [(i, j) for i in range(1, n) for j in range(i + 1, n)]
    star = [(i, n) for i in range(1, n)]
    return OrderedGraph(n, tuple(cotree + star))


FAMILIES = {
    "theta": "theta:<n1,n2,...>  or  theta:<n>x<t> for Theta_{n,t}",
    "phi": "phi:<n1,n2,...>[/<s1,s2,...>]  or  phi:<n>x<t> for Phi_{n,t}",
    "k2t": "k2t:<t>",
    "ladder": "ladder:<t>  (P_2 x P_t)",
    "cycle": "cycle:<n>",
    "complete": "complete:<n>",
}


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise FamilyError(f"bad integer list {text!r}") from None


def generate_family(descriptor: str) -> OrderedGraph:
    """Build a labeled family member from a descriptor such as ``theta:2x3``."""
    name, _, arg = descriptor.partition(":")
    name = name.strip().lower()
    arg = arg.strip()
    if name not in FAMILIES:
        raise FamilyError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}")
    if name in ("theta", "phi") and "x" in arg:
        n, t = (int(x) for x in arg.split("x"))
        return theta_nt(n, t) if name == "theta" else phi_nt(n, t)
    if name == "theta":
        return theta_graph(_ints(arg))
    if name == "phi":
        lens, _, offs = arg.partition("/")
        return phi_graph(_ints(lens), _ints(offs) if offs else None)
    (n,) = _ints(arg)
    return {"k2t": k2t, "ladder": ladder, "cycle": cycle_graph, "complete": complete_graph}[name](n)


# ---------------------------------------------------------------------------
# enumeration of labeled instances


def theta_labelings(max_q: int) -> Iterator[tuple[tuple[int, ...], OrderedGraph]]:
    """Every theta labeling of a block theta graph (t >= 2) with q <= max_q.

    Length-one paths are interchangeable, so they are listed first; long
    paths appear in every distinct order.
    """
    for lengths in _theta_length_sequences(max_q):
        yield lengths, theta_graph(lengths)


def _theta_length_sequences(max_q: int) -> Iterator[tuple[int, ...]]:
    for a in range(0, max_q + 1):
        for longs in _compositions_min2(max_q - a):
            if a + len(longs) >= 2:
                yield (1,) * a + longs


def _compositions_min2(budget: int) -> Iterator[tuple[int, ...]]:
    """All sequences of parts >= 2 with sum <= budget (including the empty one)."""
    yield ()
    for first in range(2, budget + 1):
        for rest in _compositions_min2(budget - first):
            yield (first,) + rest


def phi_labelings(max_q: int) -> Iterator[tuple[tuple[tuple[int, ...], tuple[int, ...]], OrderedGraph]]:
    """Every phi labeling with q <= max_q: cycle-length sequences and all glue offsets."""
    for lengths in _cycle_sequences(max_q):
        choices = [range(1, n) for n in lengths[:-1]]
        for offsets in _product(choices):
            yield (lengths, offsets), phi_graph(lengths, offsets)


def _cycle_sequences(max_q: int) -> Iterator[tuple[int, ...]]:
    # q = sum(n_i) - (t - 1)
    def rec(prefix: tuple[int, ...], used: int) -> Iterator[tuple[int, ...]]:
        if prefix:
            yield prefix
        for n in range(2, max_q + 2):
            extra = n if not prefix else n - 1
            if used + extra <= max_q:
                yield from rec(prefix + (n,), used + extra)

    yield from rec((), 0)


def _product(choices: list) -> Iterator[tuple[int, ...]]:
    if not choices:
        yield ()
        return
    for x in choices[0]:
        for rest in _product(choices[1:]):
            yield (x,) + rest


def distinct_orders(values: Sequence[int]) -> list[tuple[int, ...]]:
    return sorted(set(permutations(values)))
