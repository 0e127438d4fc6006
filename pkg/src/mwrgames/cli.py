"""Command-line interface: ``mwr <verb> ...``.

Decision verbs (``check``, ``verify``, ``mce1``-``mce3``) exit with 0 for a
yes and 1 for a no. Usage and input errors exit with 2.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from . import constrained, permissive
from .fixpoint import solve
from .game import Game, GameError
from .generate import random_game
from .permissive import QuantGame
from .profiles import Order, fmt_antichain, fmt_component, fmt_profile, parse_profile, to_json_profile
from .strategy import (
    StrategyError,
    enumerate_positional,
    synth_lex_positional,
    synth_pareto,
    verify_strategy,
)
from .textio import (
    emit_dot,
    emit_frontiers,
    emit_game,
    emit_report,
    emit_result,
    load_game,
    multistrategy_from_json,
    multistrategy_to_json,
    strategy_from_json,
    strategy_to_json,
)

log = logging.getLogger("mwrgames")


class UsageError(Exception):
    pass


def _plain_game(path: str) -> Game:
    g = load_game(path)
    return g.game if isinstance(g, QuantGame) else g


def _quant_game(path: str) -> QuantGame:
    g = load_game(path)
    if not isinstance(g, QuantGame):
        raise UsageError(f"{path} has no '| penalty' annotations; a penalty game is required")
    return g


def _write(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _answer(flag: bool, fmt: str) -> int:
    sys.stdout.write(json.dumps({"answer": flag}) + "\n" if fmt == "json" else ("true\n" if flag else "false\n"))
    return 0 if flag else 1


def _pair_out(args, label: str, x) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps({label: to_json_profile(x)}, sort_keys=True) + "\n")
    elif args.format == "tsv":
        sys.stdout.write("\t".join(fmt_component(c) for c in x) + "\n")
    else:
        sys.stdout.write(fmt_profile(x) + "\n")


def cmd_solve(args) -> int:
    game = _plain_game(args.game)
    result = solve(game, Order.parse(args.order))
    _write(emit_result(result, args.format), args.out)
    return 0


def cmd_frontier(args) -> int:
    game = _plain_game(args.game)
    result = solve(game, Order.parse(args.order))
    try:
        v = game.resolve(args.vertex)
    except GameError as exc:
        raise UsageError(str(exc)) from None
    _write(emit_frontiers(game, {v: result.frontiers[v]}, args.format), args.out)
    return 0


def cmd_check(args) -> int:
    game = _plain_game(args.game)
    x = parse_profile(args.profile)
    order = Order.parse(args.order)
    if len(x) != game.dim:
        raise UsageError(f"profile has {len(x)} components, the game has dimension {game.dim}")
    if args.method == "search":
        if order is not Order.COMP:
            raise UsageError("--method search only decides the componentwise problem")
        ok = constrained.ce_comp_search(game, args.vertex, x)
    elif order is Order.LEX:
        ok = constrained.ce_lex(game, args.vertex, x)
    else:
        ok = constrained.ce_comp(game, args.vertex, x)
    return _answer(ok, args.format)


def cmd_synth(args) -> int:
    game = _plain_game(args.game)
    order = Order.parse(args.order)
    result = solve(game, order)
    if order is Order.LEX:
        strat = synth_lex_positional(result)
        if strat.unmapped:
            log.warning("no finite value at: %s", ", ".join(game.name(v) for v in strat.unmapped))
        _write(strategy_to_json(game, strat), args.out)
        return 0
    if args.profile is None:
        raise UsageError("--profile is required for componentwise synthesis")
    strat = synth_pareto(result, args.vertex, parse_profile(args.profile))
    _write(strategy_to_json(game, strat), args.out)
    return 0


def cmd_verify(args) -> int:
    game = _plain_game(args.game)
    with open(args.strategy, encoding="utf-8") as fh:
        strat = strategy_from_json(game, fh.read())
    start = args.vertex if args.vertex is not None else getattr(strat, "start", None)
    report = verify_strategy(game, strat, parse_profile(args.profile), args.depth, Order.parse(args.order), start)
    _write(emit_report(report, args.format), None)
    return 0 if report.passed else 1


def cmd_enumerate(args) -> int:
    game = _plain_game(args.game)
    order = Order.parse(args.order)
    rows = enumerate_positional(game, args.vertex, order)
    if args.format == "json":
        payload = [{"choices": s.describe(), "ensures": to_json_profile(x)} for s, x in rows]
        _write(json.dumps(payload, sort_keys=True) + "\n", args.out)
        return 0
    lines = []
    for s, x in rows:
        choice = " ".join(f"{v}->{u}" for v, u in s.describe().items()) or "(no choices)"
        lines.append(f"{fmt_profile(x)}\t{choice}")
    if args.profile:
        c = parse_profile(args.profile)
        hits = [x for _, x in rows if all(a <= b for a, b in zip(x, c))] if order is Order.COMP else [
            x for _, x in rows if x <= c
        ]
        lines.append(f"positional strategies ensuring {fmt_profile(c)}: {len(hits)}")
    _write("\n".join(lines) + "\n", args.out)
    return 0


def cmd_extend(args) -> int:
    eg = permissive.build_extended(_quant_game(args.game), args.mode)
    _write(emit_dot(eg.game) if args.format == "dot" else emit_game(eg.game), args.out)
    return 0


def cmd_mce(args) -> int:
    qg = _quant_game(args.game)
    if args.verb == "mce1":
        ok = permissive.mce1(qg, args.vertex, args.cost, args.penalty)
    elif args.verb == "mce2":
        ok = permissive.mce2(qg, args.vertex, args.cost, args.penalty)
    else:
        ok = permissive.mce3(qg, args.vertex, args.penalty, args.cost)
    return _answer(ok, args.format)


def cmd_mev(args) -> int:
    qg = _quant_game(args.game)
    if args.verb == "mev1":
        front = permissive.mev1(qg, args.vertex)
        if args.format == "json":
            sys.stdout.write(json.dumps({"cost_penalty": [to_json_profile(x) for x in front]}) + "\n")
        else:
            sys.stdout.write(fmt_antichain(front) + "\n")
        return 0
    direct = (permissive.mev2 if args.verb == "mev2" else permissive.mev3)(qg, args.vertex)
    if args.cross_check:
        searched = (permissive.mev2_search if args.verb == "mev2" else permissive.mev3_search)(qg, args.vertex)
        if searched != direct:
            log.error("binary search gave %s, fixpoint gave %s", fmt_profile(searched), fmt_profile(direct))
            return 3
    _pair_out(args, "cost_penalty" if args.verb == "mev2" else "penalty_cost", direct)
    return 0


def cmd_eval_ms(args) -> int:
    qg = _quant_game(args.game)
    if args.multistrategy:
        with open(args.multistrategy, encoding="utf-8") as fh:
            ms = multistrategy_from_json(qg, fh.read())
    elif args.pair:
        ms = _extract(qg, args.vertex, parse_profile(args.pair))
    else:
        ms = permissive.all_successors(qg.game)
    res = permissive.eval_multistrategy(qg, ms, args.vertex if args.vertex is not None else getattr(ms, "start", None))
    if args.format == "json":
        sys.stdout.write(
            json.dumps({"cost": to_json_profile((res.cost,))[0], "penalty": res.penalty, "winning": res.winning}, sort_keys=True)
            + "\n"
        )
    else:
        sys.stdout.write(f"{fmt_profile(res.pair)}{'' if res.winning else ' (not winning)'}\n")
    return 0


def _extract(qg: QuantGame, vertex, pair):
    eg = permissive.build_extended(qg, permissive.CP)
    result = solve(eg.game, Order.COMP)
    return permissive.extract_multistrategy(eg, result, pair, vertex)


def cmd_extract_ms(args) -> int:
    qg = _quant_game(args.game)
    ms = _extract(qg, args.vertex, parse_profile(args.pair))
    _write(multistrategy_to_json(qg, ms), args.out)
    return 0


def cmd_gen(args) -> int:
    if args.kind == "qss":
        if args.values is not None:
            values = [int(a) for a in args.values.split(",") if a.strip()]
            threshold = args.threshold
            if threshold is None:
                raise UsageError("--threshold is required with --values")
        else:
            from .generate import random_qss

            values, threshold = random_qss(args.seed)
        inst = constrained.qss_to_game(values, threshold)
        if inst.trivially_false:
            log.warning("threshold exceeds the sum of values: the instance is trivially false")
        header = f"# qss {' '.join(map(str, values))} {threshold}\n# ensure {','.join(str(c) for c in inst.profile)} from {inst.game.name(inst.v0)}\n"
        _write(header + emit_game(inst.game), args.out)
        return 0
    game = random_game(args.seed, n_vertices=args.vertices, dim=args.dim, max_weight=args.max_weight)
    _write(emit_game(game), args.out)
    return 0


def cmd_dot(args) -> int:
    _write(emit_dot(load_game(args.game)), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mwr", description="Solve multi-weighted reachability games.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, order=True, vertex=True, fmt=("human", "json", "tsv")):
        sp.add_argument("game", help="game file")
        if order:
            sp.add_argument("--order", default="comp", help="lex or comp (default comp)")
        if vertex:
            sp.add_argument("--vertex", default=None, help="vertex name (default: the init vertex)")
        sp.add_argument("--format", default="human", choices=fmt)
        sp.add_argument("--out", default=None, help="write to a file instead of stdout")
        return sp

    common(sub.add_parser("solve", help="all ensured frontiers"), vertex=False).set_defaults(func=cmd_solve)
    common(sub.add_parser("frontier", help="frontier of one vertex")).set_defaults(func=cmd_frontier)

    sp = common(sub.add_parser("check", help="can a profile be ensured"))
    sp.add_argument("--profile", required=True)
    sp.add_argument("--method", choices=("fixpoint", "search"), default="fixpoint")
    sp.set_defaults(func=cmd_check)

    sp = common(sub.add_parser("synth", help="synthesize an optimal strategy"))
    sp.add_argument("--profile", default=None, help="frontier point (componentwise)")
    sp.set_defaults(func=cmd_synth)

    sp = common(sub.add_parser("verify", help="verify a strategy against all adversaries"))
    sp.add_argument("--strategy", required=True)
    sp.add_argument("--profile", required=True)
    sp.add_argument("--depth", type=int, default=None, help="play length bound (default |V|)")
    sp.set_defaults(func=cmd_verify)

    sp = common(sub.add_parser("enumerate-positional", help="all positional strategies"), fmt=("human", "json"))
    sp.add_argument("--profile", default=None, help="also count strategies ensuring this profile")
    sp.set_defaults(func=cmd_enumerate)

    sp = common(sub.add_parser("extend", help="build the extended game"), order=False, vertex=False, fmt=("human", "dot"))
    sp.add_argument("--mode", choices=("cp", "pc"), default="cp")
    sp.set_defaults(func=cmd_extend)

    for verb in ("mce1", "mce2", "mce3"):
        sp = common(sub.add_parser(verb, help="multi-strategy constrained existence"), order=False)
        sp.add_argument("--cost", type=int, required=True)
        sp.add_argument("--penalty", type=int, required=True)
        sp.set_defaults(func=cmd_mce)
    for verb in ("mev1", "mev2", "mev3"):
        sp = common(sub.add_parser(verb, help="optimal multi-strategy values"), order=False)
        sp.add_argument("--cross-check", action="store_true", help="compare with binary search (mev2/mev3)")
        sp.set_defaults(func=cmd_mev)

    sp = common(sub.add_parser("eval-multistrategy", help="worst cost and penalty of a multi-strategy"), order=False)
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--multistrategy", default=None, help="multi-strategy JSON file")
    grp.add_argument("--pair", default=None, help="extract one for this cost,penalty frontier point")
    sp.set_defaults(func=cmd_eval_ms)

    sp = common(sub.add_parser("extract-multistrategy", help="export a multi-strategy"), order=False, fmt=("json",))
    sp.add_argument("--pair", required=True, help="cost,penalty frontier point")
    sp.set_defaults(func=cmd_extract_ms)

    sp = sub.add_parser("gen", help="generate instances")
    sp.add_argument("kind", choices=("qss", "random"))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--values", default=None, help="qss: comma-separated values")
    sp.add_argument("--threshold", type=int, default=None)
    sp.add_argument("--vertices", type=int, default=None)
    sp.add_argument("--dim", type=int, default=None)
    sp.add_argument("--max-weight", type=int, default=4)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("export-dot", help="Graphviz rendering of a game")
    sp.add_argument("game")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_dot)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, GameError, StrategyError, permissive.PermissiveError, ValueError, OSError) as exc:
        sys.stderr.write(f"mwr {args.verb}: {exc}\n")
        return 2
