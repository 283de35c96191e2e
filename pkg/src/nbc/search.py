"""Search over standard orderings for one whose candidate basis verifies.

Three strategies feed orderings in batches; each batch is verified and the
lexicographically least verified ordering of the first successful batch is
reported, so the answer does not depend on how a batch was scheduled.
"""

from __future__ import annotations

import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterator, Sequence

from .algebra import NbcCertificate, NbcInputError, verify_nbc
from .graph import OrderedGraph, is_block, is_spanning_tree

FOUND = "found"
EXHAUSTED = "exhausted"
BUDGET = "budget"

STRATEGIES = ("exhaustive", "random", "ear")


@dataclass
class SearchResult:
    status: str
    tried: int
    verdicts: Counter = field(default_factory=Counter)
    ordering: tuple[int, ...] | None = None  # permutation of the input edge indices
    certificate: NbcCertificate | None = None

    @property
    def graph(self) -> OrderedGraph | None:
        return None if self.certificate is None else self.certificate.graph()

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "tried": self.tried,
            "verdicts": dict(sorted(self.verdicts.items())),
            "ordering": None if self.ordering is None else list(self.ordering),
            "edges": None if self.certificate is None else [list(e) for e in self.certificate.edges],
        }


# ---------------------------------------------------------------------------
# ordering generators; each yields permutations of 1..q (cotree first, tree last)


def spanning_trees(g: OrderedGraph) -> Iterator[tuple[int, ...]]:
    """Edge-index sets of all spanning trees, in lexicographic order."""
    for tree in combinations(range(1, g.q + 1), g.p - 1):
        if is_spanning_tree(g.p, (g.edge(i) for i in tree)):
            yield tree


def exhaustive_orderings(g: OrderedGraph) -> Iterator[tuple[int, ...]]:
    for tree in spanning_trees(g):
        cotree = [i for i in range(1, g.q + 1) if i not in tree]
        for c in permutations(cotree):
            for t in permutations(tree):
                yield c + t


def random_spanning_tree(g: OrderedGraph, rng: random.Random) -> tuple[int, ...]:
    """Uniform spanning tree by the Aldous-Broder random walk."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(1, g.p + 1)}
    for i, (u, v) in enumerate(g.edges, 1):
        if u != v:
            adj[u].append((v, i))
            adj[v].append((u, i))
    current = rng.randint(1, g.p)
    seen = {current}
    tree = []
    while len(seen) < g.p:
        nxt, i = rng.choice(adj[current])
        if nxt not in seen:
            seen.add(nxt)
            tree.append(i)
        current = nxt
    return tuple(sorted(tree))


def random_orderings(g: OrderedGraph, seed: int) -> Iterator[tuple[int, ...]]:
    rng = random.Random(seed)
    while True:
        tree = random_spanning_tree(g, rng)
        cotree = [i for i in range(1, g.q + 1) if i not in tree]
        tree = list(tree)
        rng.shuffle(cotree)
        rng.shuffle(tree)
        yield tuple(cotree + tree)


def random_ear_decomposition(g: OrderedGraph, rng: random.Random) -> list[list[tuple[int, int, int]]]:
    """Ears as lists of (edge, from, to) steps; the first ear is a closed cycle.

    Each later ear starts with an unused edge at a covered vertex x and runs
    through new vertices to the first covered vertex other than x, which
    exists in a block because G - x stays connected.
    """
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(1, g.p + 1)}
    for i, (u, v) in enumerate(g.edges, 1):
        adj[u].append((v, i))
        adj[v].append((u, i))

    def walk(start: int, banned: int, skip_edge: int, targets: set[int]) -> list[tuple[int, int, int]]:
        # BFS from start avoiding vertex ``banned`` and edge ``skip_edge``
        prev: dict[int, tuple[int, int] | None] = {start: None}
        queue = [start]
        while queue:
            x = queue.pop(0)
            if x in targets and x != start:
                steps = []
                while prev[x] is not None:
                    w, j = prev[x]
                    steps.append((j, w, x))
                    x = w
                return steps[::-1]
            nbrs = adj[x][:]
            rng.shuffle(nbrs)
            for y, j in nbrs:
                if j == skip_edge or y == banned or y in prev:
                    continue
                prev[y] = (x, j)
                queue.append(y)
        raise NbcInputError("no ear found; the graph is not a block")

    first = rng.randint(1, g.q)
    s, t = g.edge(first)
    if s == t:
        raise NbcInputError("graph has a loop")
    ears = [[(first, s, t)] + walk(t, 0, first, {s})]
    used = {i for i, _, _ in ears[0]}
    covered = {x for _, a, b in ears[0] for x in (a, b)}
    while len(used) < g.q:
        options = [
            (i, u, v) if u in covered else (i, v, u)
            for i, (u, v) in enumerate(g.edges, 1)
            if i not in used and (u in covered or v in covered)
        ]
        i, x, y = rng.choice(options)
        ear = [(i, x, y)]
        if y not in covered:
            ear += walk(y, x, i, covered - {x})
        ears.append(ear)
        used |= {j for j, _, _ in ear}
        covered |= {z for _, a, b in ear for z in (a, b)}
    return ears


def ear_ordering(g: OrderedGraph, ears: Sequence[Sequence[tuple[int, int, int]]]) -> tuple[int, ...]:
    """Label ears from the last one backwards, as in a theta labeling.

    The first edge of each ear takes the highest free cotree label and its
    remaining edges take the highest free tree labels walking away from it.
    """
    k = g.q - g.p + 1
    labels: dict[int, int] = {}
    cotree_label, tree_label = k, g.q
    for ear in reversed(ears):
        edges = [i for i, _, _ in ear]
        labels[cotree_label] = edges[0]
        cotree_label -= 1
        for i in edges[1:]:
            labels[tree_label] = i
            tree_label -= 1
    assert cotree_label == 0 and tree_label == k, (cotree_label, tree_label, k)
    return tuple(labels[j] for j in range(1, g.q + 1))


def ear_orderings(g: OrderedGraph, seed: int) -> Iterator[tuple[int, ...]]:
    rng = random.Random(seed)
    while True:
        ears = random_ear_decomposition(g, rng)
        ears = [ears[0]] + [
            [(i, b, a) for i, a, b in reversed(e)] if rng.random() < 0.5 else e for e in ears[1:]
        ]
        yield ear_ordering(g, ears)


# ---------------------------------------------------------------------------


def _verify_one(args) -> tuple[tuple[int, ...], NbcCertificate]:
    g, ordering, field = args
    return ordering, verify_nbc(g.reorder(ordering), field)


def search_ordering(
    g: OrderedGraph,
    strategy: str = "exhaustive",
    budget: int = 10_000,
    seed: int = 0,
    field: int | str = 2,
    batch_size: int = 16,
    workers: int = 1,
    max_repeats: int = 1000,
) -> SearchResult:
    """Look for a standard ordering of g's edges whose L(G) verifies.

    ``budget`` caps the number of distinct orderings verified.  Random and
    ear-guided searches stop early after ``max_repeats`` consecutive
    duplicates, which counts as exhaustion of what they can reach.
    """
    if strategy not in STRATEGIES:
        raise NbcInputError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    if g.has_loop:
        raise NbcInputError("graph has a loop")
    if not is_block(g):
        raise NbcInputError("search needs a block (2-connected, loopless)")
    if budget < 1:
        raise NbcInputError("budget must be positive")

    if strategy == "exhaustive":
        source = exhaustive_orderings(g)
    elif strategy == "random":
        source = random_orderings(g, seed)
    else:
        source = ear_orderings(g, seed)

    seen: set[tuple[tuple[int, int], ...]] = set()
    verdicts: Counter = Counter()
    tried = 0
    repeats = 0
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        exhausted = False
        while tried < budget and not exhausted:
            batch = []
            while len(batch) < min(batch_size, budget - tried):
                ordering = next(source, None)
                if ordering is None:
                    exhausted = True
                    break
                key = tuple(g.edge(i) for i in ordering)
                if key in seen:
                    repeats += 1
                    if repeats >= max_repeats:
                        exhausted = True
                        break
                    continue
                repeats = 0
                seen.add(key)
                batch.append(ordering)
            if not batch:
                break
            jobs = [(g, o, field) for o in batch]
            results = list(pool.map(_verify_one, jobs)) if pool else [_verify_one(j) for j in jobs]
            tried += len(results)
            winners = []
            for ordering, cert in results:
                verdicts[cert.verdict] += 1
                if cert.verified:
                    winners.append((cert.edges, ordering, cert))
            if winners:
                _, ordering, cert = min(winners, key=lambda w: (w[0], w[1]))
                return SearchResult(FOUND, tried, verdicts, ordering, cert)
    finally:
        if pool:
            pool.shutdown()
    return SearchResult(EXHAUSTED if exhausted else BUDGET, tried, verdicts)


def small_blocks(max_q: int = 7) -> list[OrderedGraph]:
    """Every 2-connected simple graph with at most ``max_q`` edges, up to isomorphism."""
    import networkx as nx

    out = []
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() < 3 or h.number_of_edges() > max_q:
            continue
        if not nx.is_connected(h) or not nx.is_biconnected(h):
            continue
        nodes = sorted(h.nodes())
        relabel = {v: i for i, v in enumerate(nodes, 1)}
        edges = sorted((min(relabel[u], relabel[v]), max(relabel[u], relabel[v])) for u, v in h.edges())
        out.append(OrderedGraph(len(nodes), tuple(edges)))
    return out
