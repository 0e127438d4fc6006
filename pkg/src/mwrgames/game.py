"""Weighted arenas with a reachability target."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence

from .profiles import INF, Profile

P1 = 1
P2 = 2


class GameError(ValueError):
    """Raised when a game fails validation or a vertex lookup fails."""


class Vertex(NamedTuple):
    id: int
    name: str
    owner: int
    is_target: bool


class Edge(NamedTuple):
    src: int
    dst: int
    weight: Profile


@dataclass(frozen=True, eq=True)
class Game:
    """A d-weighted reachability game.

    Edges keep their input order; successor lists (``succ``) are derived from
    it and that order is the tie-breaking order used everywhere.
    """

    dim: int
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    init: Optional[int] = None
    succ: tuple[tuple[tuple[int, Profile], ...], ...] = field(
        init=False, repr=False, compare=False
    )
    pred: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.vertices)
        succ: list[list[tuple[int, Profile]]] = [[] for _ in range(n)]
        pred: list[list[int]] = [[] for _ in range(n)]
        for e in self.edges:
            if 0 <= e.src < n and 0 <= e.dst < n:
                succ[e.src].append((e.dst, e.weight))
                pred[e.dst].append(e.src)
        object.__setattr__(self, "succ", tuple(tuple(s) for s in succ))
        object.__setattr__(self, "pred", tuple(tuple(sorted(set(p))) for p in pred))

    @classmethod
    def build(
        cls,
        dim: int,
        vertices: Iterable[tuple[str, int, bool]],
        edges: Iterable[tuple[str, str, Sequence[int]]],
        init: Optional[str] = None,
    ) -> "Game":
        """Convenience constructor from names: ``(name, owner, is_target)`` and
        ``(src, dst, weight)`` triples."""
        vs = tuple(Vertex(i, name, owner, bool(t)) for i, (name, owner, t) in enumerate(vertices))
        index = {v.name: v.id for v in vs}
        es = []
        for src, dst, w in edges:
            if src not in index or dst not in index:
                raise GameError(f"edge {src}->{dst} names an unknown vertex")
            es.append(Edge(index[src], index[dst], tuple(w)))
        return cls(dim, vs, tuple(es), index[init] if init is not None else None)

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def targets(self) -> frozenset[int]:
        return frozenset(v.id for v in self.vertices if v.is_target)

    @property
    def max_weight(self) -> int:
        return max((c for e in self.edges for c in e.weight), default=0)

    def index(self, name: str) -> int:
        for v in self.vertices:
            if v.name == name:
                return v.id
        raise GameError(f"unknown vertex {name!r}")

    def resolve(self, vertex: int | str | None) -> int:
        """Vertex id from an id, a name, or ``None`` (the initial vertex)."""
        if vertex is None:
            if self.init is None:
                raise GameError("no vertex given and the game has no initial vertex")
            return self.init
        if isinstance(vertex, str):
            return self.index(vertex)
        if not 0 <= vertex < len(self.vertices):
            raise GameError(f"unknown vertex id {vertex}")
        return vertex

    def name(self, v: int) -> str:
        return self.vertices[v].name

    def owner(self, v: int) -> int:
        return self.vertices[v].owner

    def is_target(self, v: int) -> bool:
        return self.vertices[v].is_target

    def weight(self, src: int, dst: int) -> Profile:
        for u, w in self.succ[src]:
            if u == dst:
                return w
        raise GameError(f"no edge {self.name(src)}->{self.name(dst)}")

    def with_init(self, v: int | str) -> "Game":
        vid = self.index(v) if isinstance(v, str) else v
        return Game(self.dim, self.vertices, self.edges, vid)


def validate(game: Game) -> list[str]:
    """Return human-readable diagnostics; an empty list means the game is usable."""
    diags: list[str] = []
    n = len(game.vertices)
    if game.dim < 1:
        diags.append(f"dimension must be >= 1, got {game.dim}")
    for i, v in enumerate(game.vertices):
        if v.id != i:
            diags.append(f"vertex {v.name!r} has id {v.id}, expected {i}")
        if v.owner not in (P1, P2):
            diags.append(f"vertex {v.name!r} has invalid owner {v.owner}")
    counts = Counter(v.name for v in game.vertices)
    for name in sorted(x for x, k in counts.items() if k > 1):
        diags.append(f"duplicate vertex name {name!r}")
    seen: set[tuple[int, int]] = set()
    for k, e in enumerate(game.edges):
        label = f"edge #{k} ({e.src}->{e.dst})"
        if not (0 <= e.src < n and 0 <= e.dst < n):
            diags.append(f"{label}: endpoint out of range")
            continue
        label = f"edge {game.name(e.src)}->{game.name(e.dst)}"
        if len(e.weight) != game.dim:
            diags.append(f"{label}: dimension mismatch (weight has {len(e.weight)} components, game has {game.dim})")
        elif any(not isinstance(c, int) or isinstance(c, bool) or c < 0 or c == INF for c in e.weight):
            diags.append(f"{label}: weights must be natural numbers")
        if (e.src, e.dst) in seen:
            diags.append(f"{label}: duplicate edge")
        seen.add((e.src, e.dst))
    for v in game.vertices:
        if 0 <= v.id < n and not game.succ[v.id]:
            diags.append(f"deadlocked vertex {v.name!r}: no successor")
    if game.init is not None and not 0 <= game.init < n:
        diags.append(f"initial vertex id {game.init} out of range")
    return diags


def ensure_valid(game: Game) -> None:
    diags = validate(game)
    if diags:
        raise GameError("invalid game: " + "; ".join(diags))
