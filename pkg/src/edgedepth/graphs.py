"""Edge-weighted simple graphs on vertices ``1..n`` and their edge ideals."""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .monomials import Monomial, MonomialIdeal

CASE_TRIVIAL = "trivial"
CASE_ONE = "one-edge"
CASE_TWO = "two-edge"
CASE_THREE = "three-edge-n6"
CASES = (CASE_TRIVIAL, CASE_ONE, CASE_TWO, CASE_THREE)

ENUM_MAX_N = 6
ENUM_MAX_W = 3


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class WeightedGraph:
    n: int
    edges: tuple  # sorted (i, j, w) with i < j

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        seen = set()
        norm = []
        for e in self.edges:
            i, j, w = (int(x) for x in e)
            if i == j:
                raise GraphError(f"loop at vertex {i}")
            i, j = min(i, j), max(i, j)
            if not (1 <= i and j <= self.n):
                raise GraphError(f"edge {(i, j)} outside vertices 1..{self.n}")
            if w < 1:
                raise GraphError(f"edge {(i, j)} has weight {w} < 1")
            if (i, j) in seen:
                raise GraphError(f"parallel edge {(i, j)}")
            seen.add((i, j))
            norm.append((i, j, w))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def weight(self, i: int, j: int) -> int:
        """Weight of edge ``ij``, or 0 when there is no such edge."""
        i, j = min(i, j), max(i, j)
        for a, b, w in self.edges:
            if (a, b) == (i, j):
                return w
        return 0

    def weight_map(self) -> dict:
        return {(i, j): w for i, j, w in self.edges}

    def neighbors(self, v: int) -> set:
        return {j if i == v else i for i, j, _ in self.edges if v in (i, j)}

    def is_trivially_weighted(self) -> bool:
        return all(w == 1 for _, _, w in self.edges)

    def nontrivial_edges(self) -> list:
        return [(i, j, w) for i, j, w in self.edges if w >= 2]

    def to_json(self) -> dict:
        return {"kind": "general", "n": self.n, "edges": [list(e) for e in self.edges]}


def build_cycle(n: int, weights: Sequence[int]) -> WeightedGraph:
    """``C^n`` with ``e_i = x_i x_{i+1}`` carrying ``weights[i-1]`` (``x_{n+1} = x_1``)."""
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    if len(weights) != n:
        raise GraphError(f"a {n}-cycle needs {n} weights, got {len(weights)}")
    return WeightedGraph(n, tuple((i, i % n + 1, w) for i, w in enumerate(weights, start=1)))


def build_path(n: int, weights: Sequence[int]) -> WeightedGraph:
    """``P^n`` with ``e_i = x_i x_{i+1}`` carrying ``weights[i-1]``."""
    if n < 2:
        raise GraphError("a path needs at least 2 vertices")
    if len(weights) != n - 1:
        raise GraphError(f"a {n}-vertex path needs {n - 1} weights, got {len(weights)}")
    return WeightedGraph(n, tuple((i, i + 1, w) for i, w in enumerate(weights, start=1)))


def graph_from_json(data) -> WeightedGraph:
    """Parse ``{"kind": "cycle"|"path", "n", "weights"}`` or ``{"edges": [[i, j, w], ...]}``."""
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict):
        raise GraphError("graph JSON must be an object")
    kind = data.get("kind", "general" if "edges" in data else None)
    try:
        if kind == "cycle":
            return build_cycle(int(data["n"]), [int(w) for w in data["weights"]])
        if kind == "path":
            return build_path(int(data["n"]), [int(w) for w in data["weights"]])
        if kind == "general":
            edges = [tuple(e) for e in data["edges"]]
            if any(len(e) != 3 for e in edges):
                raise GraphError("general edges must be [i, j, w] triples")
            n = int(data.get("n", max((max(e[0], e[1]) for e in edges), default=0)))
            return WeightedGraph(n, tuple(edges))
    except KeyError as exc:
        raise GraphError(f"missing field {exc}") from None
    raise GraphError(f"unknown graph kind {kind!r}")


def edge_ideal(G: WeightedGraph) -> MonomialIdeal:
    """``I(G_w) = (x_i^w x_j^w : ij ∈ E)`` in ``n`` variables, isolated vertices included."""
    if G.n == 0:
        raise GraphError("the empty graph has no polynomial ring")
    return MonomialIdeal(G.n, [Monomial.from_dict(G.n, {i: w, j: w}) for i, j, w in G.edges])


def induced_subgraph(G: WeightedGraph, A: Iterable[int]) -> tuple:
    """``G[A]`` relabelled to ``1..|A|`` in increasing order, plus the map new label -> old label."""
    A = sorted(set(A))
    for v in A:
        if not 1 <= v <= G.n:
            raise GraphError(f"unknown vertex {v}")
    new = {v: k for k, v in enumerate(A, start=1)}
    edges = tuple((new[i], new[j], w) for i, j, w in G.edges if i in new and j in new)
    return WeightedGraph(len(A), edges), {k: v for v, k in new.items()}


def delete_vertex(G: WeightedGraph, v: int) -> tuple:
    if not 1 <= v <= G.n:
        raise GraphError(f"unknown vertex {v}")
    return induced_subgraph(G, [u for u in G.vertices if u != v])


def restrict_edges(G: WeightedGraph, A: Iterable[int]) -> WeightedGraph:
    """``G[A]`` kept inside the original vertex set (no relabelling); other vertices become isolated."""
    A = set(A)
    return WeightedGraph(G.n, tuple(e for e in G.edges if e[0] in A and e[1] in A))


def is_integrally_closed_graph(G: WeightedGraph) -> tuple:
    """Forbidden induced subgraph test.

    Returns ``(True, None)`` or ``(False, (vertices, pattern))`` where pattern 1
    is an induced 2-edge path with both edges non-trivial, pattern 2 two
    non-trivial edges whose four endpoints induce only those edges, and
    pattern 3 a triangle of non-trivial edges.
    """
    w = G.weight_map()

    def wt(a, b):
        return w.get((min(a, b), max(a, b)), 0)

    heavy = [(i, j) for (i, j), x in sorted(w.items()) if x >= 2]
    for (a, b), (c, d) in combinations(heavy, 2):
        shared = {a, b} & {c, d}
        if shared:
            (v,) = shared
            u, x = ({a, b} - shared).pop(), ({c, d} - shared).pop()
            if wt(u, x) == 0:
                return False, (tuple(sorted((u, v, x))), 1)
            if wt(u, x) >= 2:
                return False, (tuple(sorted((u, v, x))), 3)
        elif all(wt(p, q) == 0 for p in (a, b) for q in (c, d)):
            return False, (tuple(sorted((a, b, c, d))), 2)
    return True, None


@dataclass(frozen=True)
class CycleFamily:
    n: int
    weights: tuple
    nontrivial_count: int
    case: str

    def __post_init__(self):
        if len(self.weights) != self.n:
            raise GraphError("weight vector length differs from n")
        if self.case not in CASES:
            raise GraphError(f"unknown case {self.case!r}")
        if self.case == CASE_THREE and self.n != 6:
            raise GraphError("three non-trivial edges only occur on 6-cycles")
        expected = {0: CASE_TRIVIAL, 1: CASE_ONE, 2: CASE_TWO, 3: CASE_THREE}.get(self.nontrivial_count)
        if expected != self.case:
            raise GraphError(f"case {self.case!r} inconsistent with weights {self.weights}")

    @property
    def graph(self) -> WeightedGraph:
        return build_cycle(self.n, self.weights)

    @property
    def ideal(self) -> MonomialIdeal:
        return edge_ideal(self.graph)


def _cycle_order(G: WeightedGraph) -> list:
    if G.n < 3 or len(G.edges) != G.n:
        raise GraphError("not a cycle")
    adj = {v: G.neighbors(v) for v in G.vertices}
    if any(len(s) != 2 for s in adj.values()):
        raise GraphError("not a cycle")
    order = [1]
    prev, cur = None, 1
    while True:
        nxt = min(adj[cur] - {prev}) if prev is None else (adj[cur] - {prev}).pop()
        if nxt == 1:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    if len(order) != G.n:
        raise GraphError("not a cycle (disconnected)")
    return order


def normalize_cycle_weights(weights: Sequence[int]) -> tuple:
    """Rotate/reflect so ``w_1`` is maximal, then ``w_1 >= w_3 >= w_5``.

    Among the dihedral images, picks the one maximising the odd-position
    weights first (``w_1, w_3, ...``) and then the even positions.
    """
    n = len(weights)
    w = list(weights)
    images = []
    for r in range(n):
        rot = w[r:] + w[:r]
        images.append(rot)
        images.append(rot[::-1])
    return tuple(max(images, key=lambda v: (tuple(v[0::2]), tuple(v[1::2]))))


def classify_cycle(G: WeightedGraph) -> CycleFamily:
    order = _cycle_order(G)
    closed, cert = is_integrally_closed_graph(G)
    if not closed:
        raise GraphError(f"cycle is not integrally closed: {cert}")
    raw = [G.weight(order[k], order[(k + 1) % G.n]) for k in range(G.n)]
    weights = normalize_cycle_weights(raw)
    count = sum(1 for x in weights if x >= 2)
    case = {0: CASE_TRIVIAL, 1: CASE_ONE, 2: CASE_TWO, 3: CASE_THREE}[count]
    return CycleFamily(G.n, weights, count, case)


def cycle_family(n: int, weights: Sequence[int]) -> CycleFamily:
    return classify_cycle(build_cycle(n, weights))


def enumerate_weighted_graphs(max_n: int, max_w: int) -> Iterator[WeightedGraph]:
    """Every simple graph on the labelled vertices ``1..max_n`` with weights in ``1..max_w``.

    Each of the ``C(max_n, 2)`` vertex pairs is absent or carries one of the
    ``max_w`` weights, giving ``(max_w + 1) ** C(max_n, 2)`` graphs.  Graphs on
    fewer vertices appear here with isolated vertices.
    """
    if max_n > ENUM_MAX_N or max_w > ENUM_MAX_W:
        raise GraphError(f"enumeration capped at n <= {ENUM_MAX_N}, w <= {ENUM_MAX_W}")
    if max_n < 1 or max_w < 1:
        raise GraphError("max_n and max_w must be positive")
    pairs = list(combinations(range(1, max_n + 1), 2))
    for states in product(range(max_w + 1), repeat=len(pairs)):
        yield WeightedGraph(max_n, tuple((i, j, s) for (i, j), s in zip(pairs, states) if s))


def integrally_closed_cycles(n: int, max_w: int, nontrivial_only: bool = True) -> Iterator[CycleFamily]:
    """All weight vectors in ``1..max_w`` on ``C^n`` passing the forbidden-subgraph test."""
    for ws in product(range(1, max_w + 1), repeat=n):
        if nontrivial_only and max(ws) == 1:
            continue
        G = build_cycle(n, ws)
        if is_integrally_closed_graph(G)[0]:
            yield classify_cycle(G)
