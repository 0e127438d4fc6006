"""Seeded random instances.

Everything draws from ``random.Random(seed)`` (Python's Mersenne Twister,
MT19937), so a seed fully determines the instance across platforms and
Python versions.
"""
from __future__ import annotations

import random
from typing import Optional

from .game import P1, P2, Edge, Game, Vertex
from .permissive import QuantGame


def random_game(
    seed: int,
    n_vertices: Optional[int] = None,
    dim: Optional[int] = None,
    max_weight: int = 4,
    max_n: int = 8,
    max_dim: int = 3,
    max_degree: int = 3,
    target_prob: float = 0.2,
) -> Game:
    """A random arena where every vertex has 1 to ``max_degree`` successors.

    Unspecified sizes are drawn from ``1..max_n`` vertices and
    ``1..max_dim`` dimensions. At least one vertex is a target unless
    ``n_vertices`` is 1 and the coin says otherwise.
    """
    rng = random.Random(seed)
    n = n_vertices if n_vertices is not None else rng.randint(1, max_n)
    d = dim if dim is not None else rng.randint(1, max_dim)
    vertices = []
    for i in range(n):
        owner = P1 if rng.random() < 0.5 else P2
        vertices.append(Vertex(i, f"v{i}", owner, rng.random() < target_prob))
    if not any(v.is_target for v in vertices) and rng.random() < 0.9:
        t = rng.randrange(n)
        vertices[t] = vertices[t]._replace(is_target=True)
    edges = []
    for i in range(n):
        k = rng.randint(1, min(max_degree, n))
        for j in rng.sample(range(n), k):
            edges.append(Edge(i, j, tuple(rng.randint(0, max_weight) for _ in range(d))))
    return Game(d, tuple(vertices), tuple(edges), 0)


def random_quant_game(seed: int, max_n: int = 6, max_cost: int = 4, max_penalty: int = 4, max_degree: int = 3) -> QuantGame:
    rng = random.Random(seed)
    g = random_game(rng.randrange(2**32), dim=1, max_weight=max_cost, max_n=max_n, max_degree=max_degree)
    pens = tuple(rng.randint(0, max_penalty) if g.owner(e.src) == P1 else 0 for e in g.edges)
    return QuantGame(g, pens)


def random_qss(seed: int, max_n: int = 8, max_value: int = 6) -> tuple[list[int], int]:
    """Values ``a_1..a_n`` and a threshold, half the time a reachable subset sum."""
    rng = random.Random(seed)
    n = rng.randint(0, max_n)
    values = [rng.randint(0, max_value) for _ in range(n)]
    if rng.random() < 0.5:
        threshold = sum(a for a in values if rng.random() < 0.5)
    else:
        threshold = rng.randint(0, sum(values) + 2)
    return values, threshold


def benchmark_game(seed: int = 0, n_vertices: int = 10_000, dim: int = 5, max_weight: int = 10) -> Game:
    """Large sparse arena for the lexicographic smoke benchmark."""
    return random_game(
        seed,
        n_vertices=n_vertices,
        dim=dim,
        max_weight=max_weight,
        max_degree=3,
        target_prob=0.01,
    )
