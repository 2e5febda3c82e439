"""Undirected communication network between agents."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

MAX_ATTEMPTS = 1000


class DisconnectedGraphError(ValueError):
    pass


def _adjacency_from_edges(n: int, edges: Iterable[Sequence[int]]) -> tuple[tuple[bool, ...], ...]:
    adj = [[False] * n for _ in range(n)]
    for edge in edges:
        i, j = (int(v) for v in edge)
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
        if i == j:
            raise ValueError(f"self-loop at node {i}")
        adj[i][j] = adj[j][i] = True
    return tuple(tuple(row) for row in adj)


def is_connected(graph: "Network | Sequence[Sequence[bool]]") -> bool:
    """Breadth-first reachability from node 0.

    Accepts a Network or a raw symmetric adjacency matrix; the latter lets
    callers test a candidate before building a Network from it.
    """
    adjacency = graph.adjacency if isinstance(graph, Network) else graph
    n = len(adjacency)
    if n <= 1:
        return True
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    reached = 1
    while queue:
        i = queue.popleft()
        for j, linked in enumerate(adjacency[i]):
            if linked and not seen[j]:
                seen[j] = True
                reached += 1
                queue.append(j)
    return reached == n


@dataclass(frozen=True)
class Network:
    """Connected undirected graph with consensus mixing weights.

    ``weights`` is the one-round consensus matrix ``I - epsilon * Laplacian``:
    ``epsilon`` on every edge and ``1 - epsilon * degree`` on the diagonal.
    When ``epsilon`` is omitted, ``1 / (max_degree + 1)`` is used, which keeps
    every diagonal entry strictly positive.
    """

    n: int
    adjacency: tuple[tuple[bool, ...], ...]
    epsilon: float | None = None
    neighbor_sets: tuple[tuple[int, ...], ...] = field(init=False)
    weights: tuple[tuple[float, ...], ...] = field(init=False)

    def __post_init__(self):
        n = self.n
        if n < 1:
            raise ValueError("n must be positive")
        adjacency = tuple(tuple(bool(v) for v in row) for row in self.adjacency)
        if len(adjacency) != n or any(len(row) != n for row in adjacency):
            raise ValueError(f"adjacency must be {n}x{n}")
        for i in range(n):
            if adjacency[i][i]:
                raise ValueError(f"self-loop at node {i}")
            for j in range(i + 1, n):
                if adjacency[i][j] != adjacency[j][i]:
                    raise ValueError(f"adjacency not symmetric at ({i}, {j})")
        if not is_connected(adjacency):
            raise DisconnectedGraphError("communication graph is not connected")
        object.__setattr__(self, "adjacency", adjacency)
        neighbors = tuple(tuple(j for j in range(n) if adjacency[i][j]) for i in range(n))
        object.__setattr__(self, "neighbor_sets", neighbors)

        dmax = max(len(nb) for nb in neighbors)
        eps = self.epsilon
        if eps is None:
            eps = 1.0 / (dmax + 1)
        else:
            eps = float(eps)
            if not (eps > 0.0) or (dmax > 0 and eps > 1.0 / dmax):
                raise ValueError(f"epsilon must lie in (0, 1/max_degree] = (0, {1.0 / max(dmax, 1):g}], got {eps:g}")
        object.__setattr__(self, "epsilon", eps)
        rows = []
        for i in range(n):
            row = [eps if adjacency[i][j] else 0.0 for j in range(n)]
            row[i] = 1.0 - eps * len(neighbors[i])
            rows.append(tuple(row))
        object.__setattr__(self, "weights", tuple(rows))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], epsilon: float | None = None) -> "Network":
        return cls(n, _adjacency_from_edges(n, edges), epsilon)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in self.neighbor_sets[i] if i < j]

    @property
    def degrees(self) -> list[int]:
        return [len(nb) for nb in self.neighbor_sets]

    def with_epsilon(self, epsilon: float) -> "Network":
        return Network(self.n, self.adjacency, epsilon)

    def laplacian(self) -> tuple[tuple[float, ...], ...]:
        return tuple(
            tuple(float(len(self.neighbor_sets[i])) if i == j else (-1.0 if self.adjacency[i][j] else 0.0)
                  for j in range(self.n))
            for i in range(self.n)
        )

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc: dict, epsilon: float | None = None) -> "Network":
        return cls.from_edges(int(doc["n"]), doc["edges"], epsilon)

    @classmethod
    def from_json(cls, text: str, epsilon: float | None = None) -> "Network":
        return cls.from_dict(json.loads(text), epsilon)


def max_degree(net: Network) -> int:
    return max(len(nb) for nb in net.neighbor_sets)


def generate_erdos_renyi(n: int, p: float, seed: int, epsilon: float | None = None) -> Network:
    """Draw a connected G(n, p) graph.

    Each unordered pair (i < j, lexicographic order) gets an edge with
    probability ``p``. Disconnected draws are discarded and redrawn from the
    same generator, so the result depends only on ``(n, p, seed)``.

    Raises DisconnectedGraphError when no connected draw appears within
    MAX_ATTEMPTS tries.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for _ in range(MAX_ATTEMPTS):
        draws = rng.random(len(pairs))
        adj = [[False] * n for _ in range(n)]
        for (i, j), u in zip(pairs, draws):
            if u < p:
                adj[i][j] = adj[j][i] = True
        if is_connected(adj):
            return Network(n, tuple(tuple(row) for row in adj), epsilon)
    raise DisconnectedGraphError(
        f"no connected graph in {MAX_ATTEMPTS} draws with n={n}, p={p}; increase p"
    )
