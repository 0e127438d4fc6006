"""Line-oriented game format, result rendering and strategy files.

Game grammar (``#`` starts a comment)::

    dim 2
    vertex v0 owner=2
    vertex v9 owner=1 target
    edge v0 v1 4 2
    init v0

With ``dim 1`` every edge may carry ``| penalty`` instead, which turns the
file into a penalty game. Either all edges have a penalty or none do.
"""
from __future__ import annotations

import json
from importlib import resources
from dataclasses import dataclass
from typing import Any, Iterable, Optional, Union

from .fixpoint import SolveResult
from .game import P1, Edge, Game, GameError, Vertex, validate
from .permissive import QuantGame, TableMultiStrategy
from .profiles import (
    Profile,
    fmt_antichain,
    fmt_component,
    fmt_profile,
    from_json_profile,
    to_json_profile,
)
from .strategy import ParetoStrategy, PositionalStrategy, TableStrategy, VerificationReport

FORMATS = ("human", "json", "tsv")


class ParseError(GameError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass
class _EdgeLine:
    lineno: int
    src: str
    dst: str
    weight: tuple[int, ...]
    penalty: Optional[int]


def _natural(tok: str, lineno: int, what: str) -> int:
    try:
        n = int(tok)
    except ValueError:
        raise ParseError(lineno, f"{what} {tok!r} is not an integer") from None
    if n < 0:
        raise ParseError(lineno, f"{what} {tok!r} is negative")
    return n


def parse_game(text: str) -> Union[Game, QuantGame]:
    dim: Optional[int] = None
    dim_line = 0
    vertices: list[tuple[str, int, bool]] = []
    names: dict[str, int] = {}
    edge_lines: list[_EdgeLine] = []
    init: Optional[tuple[str, int]] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        kw = toks[0]
        if kw == "dim":
            if len(toks) != 2:
                raise ParseError(lineno, "expected 'dim <d>'")
            if dim is not None:
                raise ParseError(lineno, "dimension declared twice")
            dim = _natural(toks[1], lineno, "dimension")
            if dim < 1:
                raise ParseError(lineno, "dimension must be at least 1")
            dim_line = lineno
        elif kw == "vertex":
            if len(toks) < 3:
                raise ParseError(lineno, "expected 'vertex <name> owner=<1|2> [target]'")
            name = toks[1]
            owner = None
            target = False
            for t in toks[2:]:
                if t.startswith("owner="):
                    if t[6:] not in ("1", "2"):
                        raise ParseError(lineno, f"owner must be 1 or 2, got {t[6:]!r}")
                    owner = int(t[6:])
                elif t == "target":
                    target = True
                else:
                    raise ParseError(lineno, f"unexpected token {t!r}")
            if owner is None:
                raise ParseError(lineno, f"vertex {name!r} has no owner")
            if name in names:
                raise ParseError(lineno, f"vertex {name!r} declared twice")
            names[name] = len(vertices)
            vertices.append((name, owner, target))
        elif kw == "edge":
            body, bar, pen_part = line.partition("|")
            toks = body.split()
            if len(toks) < 4:
                raise ParseError(lineno, "expected 'edge <u> <v> <w1> ... <wd> [| penalty]'")
            weight = tuple(_natural(t, lineno, "weight") for t in toks[3:])
            penalty = None
            if bar:
                ptoks = pen_part.split()
                if len(ptoks) != 1:
                    raise ParseError(lineno, "expected a single penalty after '|'")
                penalty = _natural(ptoks[0], lineno, "penalty")
            edge_lines.append(_EdgeLine(lineno, toks[1], toks[2], weight, penalty))
        elif kw == "init":
            if len(toks) != 2:
                raise ParseError(lineno, "expected 'init <name>'")
            if init is not None:
                raise ParseError(lineno, "initial vertex declared twice")
            init = (toks[1], lineno)
        else:
            raise ParseError(lineno, f"unknown directive {kw!r}")

    if dim is None:
        if not edge_lines:
            raise ParseError(1, "no 'dim' line and no edge to infer the dimension from")
        dim = len(edge_lines[0].weight)
    edges = []
    for el in edge_lines:
        for end in (el.src, el.dst):
            if end not in names:
                raise ParseError(el.lineno, f"unknown vertex {end!r}")
        if len(el.weight) != dim:
            raise ParseError(el.lineno, f"dimension mismatch: {len(el.weight)} weights, expected {dim}")
        edges.append(Edge(names[el.src], names[el.dst], el.weight))
    with_pen = [el for el in edge_lines if el.penalty is not None]
    if with_pen:
        if dim != 1:
            raise ParseError(with_pen[0].lineno, f"penalties are only allowed with dimension 1 (declared {dim} on line {dim_line})")
        if len(with_pen) != len(edge_lines):
            bad = next(el for el in edge_lines if el.penalty is None)
            raise ParseError(bad.lineno, "edge without a penalty in a penalty game")
    init_id = None
    if init is not None:
        if init[0] not in names:
            raise ParseError(init[1], f"unknown vertex {init[0]!r}")
        init_id = names[init[0]]
    game = Game(
        dim,
        tuple(Vertex(i, n, o, t) for i, (n, o, t) in enumerate(vertices)),
        tuple(edges),
        init_id,
    )
    diags = validate(game)
    if diags:
        raise GameError("invalid game: " + "; ".join(diags))
    if with_pen:
        return QuantGame(game, tuple(el.penalty for el in edge_lines))
    return game


def fixture_path(name: str) -> str:
    """Path of a game shipped in ``mwrgames/data``."""
    return str(resources.files("mwrgames").joinpath("data", name))


def load_game(path: str) -> Union[Game, QuantGame]:
    with open(path, encoding="utf-8") as fh:
        return parse_game(fh.read())


def emit_game(game: Union[Game, QuantGame]) -> str:
    qg = game if isinstance(game, QuantGame) else None
    g = qg.game if qg else game
    lines = [f"dim {g.dim}"]
    for v in g.vertices:
        lines.append(f"vertex {v.name} owner={v.owner}" + (" target" if v.is_target else ""))
    for k, e in enumerate(g.edges):
        line = f"edge {g.name(e.src)} {g.name(e.dst)} " + " ".join(str(c) for c in e.weight)
        if qg:
            line += f" | {qg.penalties[k]}"
        lines.append(line)
    if g.init is not None:
        lines.append(f"init {g.name(g.init)}")
    return "\n".join(lines) + "\n"


def emit_dot(game: Union[Game, QuantGame]) -> str:
    """Graphviz rendering: Player 1 circles, Player 2 boxes, targets doubled."""
    qg = game if isinstance(game, QuantGame) else None
    g = qg.game if qg else game
    lines = ["digraph game {", "  rankdir=LR;"]
    for v in g.vertices:
        shape = "circle" if v.owner == P1 else "box"
        attrs = [f"shape={shape}", f'label="{v.name}"']
        if v.is_target:
            attrs.append("peripheries=2")
        lines.append(f"  n{v.id} [{', '.join(attrs)}];")
    if g.init is not None:
        lines.append('  start [shape=point];')
        lines.append(f"  start -> n{g.init};")
    for k, e in enumerate(g.edges):
        label = fmt_profile(e.weight)
        if qg:
            label = f"{e.weight[0]} | {qg.penalties[k]}"
        lines.append(f'  n{e.src} -> n{e.dst} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dump(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=None, separators=(", ", ": ")) + "\n"


def emit_frontiers(game: Game, frontiers: dict[int, Iterable[Profile]], fmt: str = "human") -> str:
    """Per-vertex antichains in vertex-id order (human, tsv) or by name (json)."""
    items = sorted(frontiers.items())
    if fmt == "json":
        return _dump({game.name(v): [to_json_profile(x) for x in xs] for v, xs in items})
    if fmt == "tsv":
        rows = ["vertex\tprofile"]
        for v, xs in items:
            rows += [f"{game.name(v)}\t{','.join(fmt_component(c) for c in x)}" for x in xs]
        return "\n".join(rows) + "\n"
    if fmt == "human":
        width = max([len("vertex")] + [len(game.name(v)) for v, _ in items])
        rows = [f"{'vertex':<{width}}  frontier"]
        rows += [f"{game.name(v):<{width}}  {fmt_antichain(xs)}" for v, xs in items]
        return "\n".join(rows) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def emit_result(result: SolveResult, fmt: str = "human") -> str:
    game = result.game
    fronts = {v: result.frontiers[v] for v in range(len(game))}
    if fmt == "json":
        return _dump(
            {
                "order": result.order.value,
                "iterations": result.iterations,
                "k_star": result.k_star,
                "frontiers": {game.name(v): [to_json_profile(x) for x in xs] for v, xs in fronts.items()},
            }
        )
    if fmt == "human":
        head = f"order: {result.order.value}  stabilized at k*={result.k_star} (detected at iteration {result.iterations})\n"
        return head + emit_frontiers(game, fronts, "human")
    return emit_frontiers(game, fronts, fmt)


def emit_report(report: VerificationReport, fmt: str = "human") -> str:
    if fmt == "json":
        return _dump(
            {
                "passed": report.passed,
                "worst": to_json_profile(report.worst),
                "max_steps": report.max_steps,
                "outcomes": report.outcomes,
                "counterexample": report.counterexample,
                "counterexample_cost": to_json_profile(report.counterexample_cost) if report.counterexample_cost else None,
            }
        )
    if fmt == "tsv":
        return f"passed\tworst\tmax_steps\n{str(report.passed).lower()}\t{fmt_profile(report.worst)}\t{report.max_steps}\n"
    lines = [
        f"verdict: {'pass' if report.passed else 'fail'}",
        f"worst observed cost: {fmt_profile(report.worst)}",
        f"longest play to target: {report.max_steps} steps",
    ]
    if report.counterexample:
        lines.append(f"counterexample: {' '.join(report.counterexample)} with cost {fmt_profile(report.counterexample_cost)}")
    return "\n".join(lines) + "\n"


# strategies ---------------------------------------------------------------


def _reachable_decisions(game: Game, strat, start: int, depth: int) -> dict[tuple[int, Profile], int]:
    """Decisions of ``strat`` at every Player 1 state reachable within ``depth``."""
    table: dict[tuple[int, Profile], int] = {}
    seen = set()
    stack = [(start, (0,) * game.dim, depth)]
    while stack:
        v, acc, rem = stack.pop()
        if (v, acc, rem) in seen or game.is_target(v) or rem == 0:
            continue
        seen.add((v, acc, rem))
        if game.owner(v) == P1:
            u = strat.choose(v, acc)
            table[(v, acc)] = u
            nxt = [u]
        else:
            nxt = [u for u, _ in game.succ[v]]
        for u in nxt:
            w = game.weight(v, u)
            stack.append((u, tuple(a + b for a, b in zip(acc, w)), rem - 1))
    return table


def strategy_to_json(game: Game, strat, start: Optional[int] = None, depth: Optional[int] = None) -> str:
    """Positional strategies export their map; others the decisions they take
    at every reachable (vertex, accumulated cost) state."""
    if isinstance(strat, PositionalStrategy):
        return _dump({"kind": "positional", "choices": strat.describe()})
    if start is None:
        start = getattr(strat, "start", game.init)
    depth = len(game) if depth is None else depth
    table = _reachable_decisions(game, strat, start, depth)
    entries = [
        {"vertex": game.name(v), "acc": to_json_profile(acc), "next": game.name(u)}
        for (v, acc), u in sorted(table.items())
    ]
    payload = {"kind": "table", "start": game.name(start), "entries": entries}
    if isinstance(strat, ParetoStrategy):
        payload["profile"] = to_json_profile(strat.profile)
    return _dump(payload)


def strategy_from_json(game: Game, text: str):
    data = json.loads(text)
    kind = data.get("kind")
    if kind == "positional":
        mapping = {}
        for v, u in data["choices"].items():
            vi, ui = game.index(v), game.index(u)
            game.weight(vi, ui)  # must be an edge
            mapping[vi] = ui
        return PositionalStrategy(game, mapping)
    if kind == "table":
        table = {}
        for ent in data["entries"]:
            vi, ui = game.index(ent["vertex"]), game.index(ent["next"])
            game.weight(vi, ui)
            acc = None if ent.get("acc", "*") == "*" else from_json_profile(ent["acc"])
            table[(vi, acc)] = ui
        start = game.index(data["start"]) if "start" in data else None
        return TableStrategy(game, table, start)
    raise ValueError(f"unknown strategy kind {kind!r}")


def multistrategy_to_json(qg: QuantGame, ms, start: Optional[int] = None, depth: Optional[int] = None) -> str:
    """(vertex, accumulated (cost, penalty), allowed set) for every reachable decision."""
    g = qg.game
    if start is None:
        start = getattr(ms, "start", None)
        start = g.init if start is None else start
    depth = 2 * len(g) if depth is None else depth
    entries = {}
    seen = set()
    stack = [(start, 0, 0, depth)]
    while stack:
        v, cost, pen, rem = stack.pop()
        if (v, cost, pen, rem) in seen or g.is_target(v) or rem == 0:
            continue
        seen.add((v, cost, pen, rem))
        if g.owner(v) == P1:
            allowed = ms.choose(v, (cost, pen))
            entries[(v, cost, pen)] = allowed
            pen += qg.blocked_penalty(v, allowed)
        else:
            allowed = [u for u, _ in g.succ[v]]
        for u in allowed:
            stack.append((u, cost + qg.cost(v, u), pen, rem - 1))
    rows = [
        {"vertex": g.name(v), "acc": [c, p], "allow": [g.name(u) for u in allowed]}
        for (v, c, p), allowed in sorted(entries.items())
    ]
    return _dump({"kind": "multistrategy", "start": g.name(start), "entries": rows})


def multistrategy_from_json(qg: QuantGame, text: str) -> TableMultiStrategy:
    data = json.loads(text)
    if data.get("kind") != "multistrategy":
        raise ValueError("not a multi-strategy file")
    g = qg.game
    table = {}
    for ent in data["entries"]:
        v = g.index(ent["vertex"])
        allowed = tuple(g.index(u) for u in ent["allow"])
        if not allowed:
            raise ValueError(f"empty allowed set at {ent['vertex']}")
        legal = [u for u, _ in g.succ[v]]
        for u in allowed:
            if u not in legal:
                raise ValueError(f"{g.name(u)} is not a successor of {ent['vertex']}")
        # keep successor input order so penalties and output are canonical
        allowed = tuple(u for u in legal if u in allowed)
        acc = ent.get("acc", "*")
        table[(v, None if acc == "*" else tuple(int(c) for c in acc))] = allowed
    start = g.index(data["start"]) if "start" in data else g.init
    return TableMultiStrategy(g, table, start)
