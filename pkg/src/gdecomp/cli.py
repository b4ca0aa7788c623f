"""Command-line surface.

Verbs: ``gen`` (instances), ``decompose`` (strategy ladder), ``pack``
(greedy packing), ``frac`` (LP relaxation), ``oracle`` (complete
search), ``gadget`` (build and dump constructions), ``verify``
(re-check serialized decompositions), ``bench`` (timing table).

Exit codes: 0 success, 2 verified-unsolvable, 3 search or strategies
exhausted, 4 input error.  Randomized verbs take ``--seed``; when it is
omitted a fresh seed is drawn and printed, and re-running with the same
argv plus that seed reproduces the output byte for byte (reports omit
wall-clock times for the same reason; ``bench`` is the one verb whose
output is timing and therefore not reproducible).
"""

from __future__ import annotations

import argparse
import json
import re
import secrets
import sys
import time
from typing import IO, Sequence

from .errors import (
    AllStrategiesFailed,
    BudgetExhausted,
    GdecompError,
    ParseError,
    Unsolvable,
)
from .gadgets import (
    build_absorber,
    build_shifter,
    extremal_kr,
    extremal_tripartite,
    extremal_two_cliques,
    parity_template,
    pattern_regularity,
    regularise,
)
from .graphs import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    from_edge_set,
    is_divisible,
    norm_edge,
    path_graph,
    random_graph,
)
from .io import (
    graph_to_record,
    read_edge_list,
    read_json,
    write_dot,
    write_edge_list,
)
from .packing import (
    Decomposition,
    enumerate_copies,
    exact_decompose,
    fractional_packing,
    greedy_packing,
)
from .pipeline import PipelineConfig, decompose, decompose_via_regulariser
from .verify import verify_decomposition

EXIT_OK = 0
EXIT_UNSOLVABLE = 2
EXIT_EXHAUSTED = 3
EXIT_INPUT = 4

_NAME_RE = re.compile(
    r"^(?:(K|C|P)_?(\d+)|K_?\{?(\d+),(\d+)\}?)$"
)


def parse_pattern(spec: str) -> Graph:
    """A pattern from a name (K_n, C_n, P_n, K_{a,b}) or an edge file."""
    m = _NAME_RE.match(spec.strip())
    if m:
        if m.group(1):
            n = int(m.group(2))
            return {
                "K": complete_graph,
                "C": cycle_graph,
                "P": path_graph,
            }[m.group(1)](n)
        return complete_bipartite(int(m.group(3)), int(m.group(4)))
    try:
        with open(spec) as fh:
            return read_edge_list(fh)
    except OSError as exc:
        raise ParseError(
            f"{spec!r} is neither a pattern name (K_n, C_n, P_n, "
            f"K_{{a,b}}) nor a readable edge file: {exc}"
        ) from exc


def load_graph(path: str) -> Graph:
    try:
        with open(path) as fh:
            if path.endswith(".json"):
                g, _ = read_json(fh)
                return g
            return read_edge_list(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path!r}: {exc}") from exc


def _out(path: str | None) -> IO[str]:
    return open(path, "w") if path else sys.stdout


def _emit_graph(g: Graph, args: argparse.Namespace) -> None:
    stream = _out(getattr(args, "output", None))
    try:
        write_edge_list(g, stream)
    finally:
        if stream is not sys.stdout:
            stream.close()
    dot = getattr(args, "dot", None)
    if dot:
        with open(dot, "w") as fh:
            write_dot(g, fh)


def _resolve_seed(args: argparse.Namespace) -> int:
    if args.seed is None:
        args.seed = secrets.randbelow(2**31)
        print(f"seed: {args.seed}")
    return args.seed


def _copies_record(g: Graph, f: Graph, copies) -> dict:
    rec = graph_to_record(g)
    rec["pattern"] = [list(e) for e in sorted(f.edges)]
    rec["pattern_vertex_count"] = f.n
    rec["copies"] = [
        [list(e) for e in sorted(c)] for c in sorted(copies, key=sorted)
    ]
    return rec


def _write_copies(g: Graph, f: Graph, copies, path: str | None) -> None:
    stream = _out(path)
    try:
        json.dump(_copies_record(g, f, copies), stream, indent=1)
        stream.write("\n")
    finally:
        if stream is not sys.stdout:
            stream.close()


# ---------------------------------------------------------------- verbs


def cmd_gen(args: argparse.Namespace) -> int:
    kind = args.kind
    if kind == "complete":
        g = complete_graph(args.n)
    elif kind == "cycle":
        g = cycle_graph(args.n)
    elif kind == "random":
        import random as _random

        seed = _resolve_seed(args)
        g = random_graph(args.n, args.density, _random.Random(seed))
    elif kind == "extremal-kr":
        inst = extremal_kr(args.r, args.s)
        g = inst.graph
        if args.certificate:
            with open(args.certificate, "w") as fh:
                fh.write(inst.certificate.explain() + "\n")
    elif kind == "extremal-two-cliques":
        inst = extremal_two_cliques(args.ell, args.n)
        g = inst.graph
        if args.certificate:
            with open(args.certificate, "w") as fh:
                fh.write(inst.certificate.explain() + "\n")
    elif kind == "extremal-tripartite":
        inst = extremal_tripartite(args.r, args.m)
        g = inst.graph
        if args.certificate:
            with open(args.certificate, "w") as fh:
                fh.write(inst.certificate.explain() + "\n")
    else:  # pragma: no cover - argparse restricts choices
        raise ParseError(f"unknown generator {kind!r}")
    _emit_graph(g, args)
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace) -> int:
    f = parse_pattern(args.pattern)
    g = load_graph(args.input)
    seed = _resolve_seed(args)
    cfg = PipelineConfig(seed=seed)
    try:
        if args.strategy == "regulariser":
            run = decompose_via_regulariser(g, f, cfg)
        else:
            run = decompose(g, f, cfg)
    except AllStrategiesFailed as exc:
        proved = any("proved unsolvable" in r for r in exc.reports)
        for r in exc.reports:
            print(r, file=sys.stderr)
        return EXIT_UNSOLVABLE if proved else EXIT_EXHAUSTED
    copies = run.decomposition.copies
    if args.report:
        print(f"strategy: {run.report.strategy}")
        for s in run.report.stages:
            line = f"  {s.name}: {s.status}"
            if s.detail:
                line += f" - {s.detail}"
            print(line)
    print(f"copies: {len(copies)}")
    if args.output:
        _write_copies(g, f, copies, args.output)
    return EXIT_OK


def cmd_pack(args: argparse.Namespace) -> int:
    f = parse_pattern(args.pattern)
    g = load_graph(args.input)
    seed = _resolve_seed(args)
    pack = greedy_packing(g, f, seed=seed)
    print(f"copies: {len(pack.copies)}")
    print(f"leftover-edges: {pack.leftover.num_edges}")
    if args.output:
        _write_copies(g, f, pack.copies, args.output)
    return EXIT_OK


def cmd_frac(args: argparse.Namespace) -> int:
    f = parse_pattern(args.pattern)
    g = load_graph(args.input)
    frac = fractional_packing(g, f)
    print(f"value: {frac.value:.6f}")
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    f = parse_pattern(args.pattern)
    g = load_graph(args.input)
    res = exact_decompose(g, f, budget=args.budget)
    if isinstance(res, Decomposition):
        print(f"copies: {len(res.copies)}")
        if args.output:
            _write_copies(g, f, res.copies, args.output)
        return EXIT_OK
    if isinstance(res, Unsolvable):
        print(f"unsolvable: {res.reason}", file=sys.stderr)
        return EXIT_UNSOLVABLE
    assert isinstance(res, BudgetExhausted)
    print(f"budget exhausted after {res.nodes} nodes", file=sys.stderr)
    return EXIT_EXHAUSTED


def cmd_gadget(args: argparse.Namespace) -> int:
    f = parse_pattern(args.pattern)
    r = pattern_regularity(f)
    if args.kind == "regulariser":
        reg = regularise(f)
        g = reg.graph
        print(f"vertices: {g.n}")
        print(f"edges: {g.num_edges}")
        print(f"regularity: {reg.regularity}")
        print(f"copies: {len(reg.copies)}")
    elif args.kind == "shifter":
        u_pool = list(range(r + 2))
        from math import comb

        v_pool = list(
            range(r + 2, r + 2 + comb(r + 1, 2) * max(f.n - 2, 0))
        )
        sh = build_shifter(0, 1, u_pool, v_pool, f)
        g = sh.graph
        print(f"vertices: {len(g.support())}")
        print(f"edges: {g.num_edges}")
        res = sh.residues()
        print(f"residues: x={res[0]} y={res[1]} rails={res[2]}")
    elif args.kind == "absorber":
        h = load_graph(args.input) if args.input else f
        cert = build_absorber(h, f)
        g = cert.gadget
        print(f"gadget-edges: {g.num_edges}")
        print(f"decompositions: {sorted(cert.decompositions)}")
    elif args.kind == "parity":
        if not args.input or not args.input.endswith(".json"):
            raise ParseError(
                "parity needs --input pointing at a JSON record with a "
                "partition"
            )
        with open(args.input) as fh:
            host, part = read_json(fh)
        if part is None:
            raise ParseError("JSON record carries no partition")
        tpl = parity_template(part, f)
        print(f"slots: {len(tpl.slots)}")
        g = None
    else:  # pragma: no cover - argparse restricts choices
        raise ParseError(f"unknown gadget {args.kind!r}")
    if g is not None and args.output:
        with open(args.output, "w") as fh:
            write_edge_list(g, fh)
    if g is not None and args.dot:
        with open(args.dot, "w") as fh:
            write_dot(g, fh)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        with open(args.input) as fh:
            rec = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {args.input!r}: {exc}") from exc
    try:
        n = int(rec["vertex_count"])
        g = Graph(n, [tuple(e) for e in rec["edges"]])
        f = from_edge_set(
            int(rec["pattern_vertex_count"]),
            {norm_edge(u, v) for u, v in rec["pattern"]},
        )
        copies = [
            frozenset(norm_edge(u, v) for u, v in c) for c in rec["copies"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed decomposition record: {exc}") from exc
    report = verify_decomposition(g, copies, f)
    print(report.summary())
    return EXIT_OK if report.passed else EXIT_EXHAUSTED


def cmd_bench(args: argparse.Namespace) -> int:
    import random as _random

    seed = _resolve_seed(args)
    rng = _random.Random(seed)
    rows = []
    for n in (30, 60, 90):
        g = random_graph(n, 0.5, rng)
        t0 = time.perf_counter()
        copies = enumerate_copies(g, complete_graph(3))
        t_enum = time.perf_counter() - t0
        t0 = time.perf_counter()
        greedy_packing(g, complete_graph(3), seed=seed)
        t_pack = time.perf_counter() - t0
        rows.append((n, len(copies), t_enum, t_pack))
    print(f"{'n':>4} {'copies':>8} {'enumerate':>10} {'greedy':>10}")
    for n, c, te, tp in rows:
        print(f"{n:>4} {c:>8} {te:>9.3f}s {tp:>9.3f}s")
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gdecomp",
        description="Edge-decomposition workbench for a fixed pattern.",
    )
    sub = ap.add_subparsers(dest="verb", required=True)

    gen = sub.add_parser("gen", help="generate instances")
    gen.add_argument(
        "kind",
        choices=[
            "complete",
            "cycle",
            "random",
            "extremal-kr",
            "extremal-two-cliques",
            "extremal-tripartite",
        ],
    )
    gen.add_argument("--n", type=int, default=0)
    gen.add_argument("--density", type=float, default=0.5)
    gen.add_argument("--r", type=int, default=2)
    gen.add_argument("--s", type=int, default=1)
    gen.add_argument("--ell", type=int, default=6)
    gen.add_argument("--m", type=int, default=1)
    gen.add_argument("--seed", type=int)
    gen.add_argument("--output")
    gen.add_argument("--certificate")
    gen.add_argument("--dot")
    gen.set_defaults(fn=cmd_gen)

    dec = sub.add_parser("decompose", help="run the strategy ladder")
    dec.add_argument("--pattern", required=True)
    dec.add_argument("--input", required=True)
    dec.add_argument(
        "--strategy", choices=["auto", "regulariser"], default="auto"
    )
    dec.add_argument("--seed", type=int)
    dec.add_argument("--report", action="store_true")
    dec.add_argument("--output")
    dec.set_defaults(fn=cmd_decompose)

    pack = sub.add_parser("pack", help="greedy packing")
    pack.add_argument("--pattern", required=True)
    pack.add_argument("--input", required=True)
    pack.add_argument("--seed", type=int)
    pack.add_argument("--output")
    pack.set_defaults(fn=cmd_pack)

    frac = sub.add_parser("frac", help="fractional packing value")
    frac.add_argument("--pattern", required=True)
    frac.add_argument("--input", required=True)
    frac.set_defaults(fn=cmd_frac)

    orc = sub.add_parser("oracle", help="complete search")
    orc.add_argument("--pattern", required=True)
    orc.add_argument("--input", required=True)
    orc.add_argument("--budget", type=int, default=2_000_000)
    orc.add_argument("--output")
    orc.set_defaults(fn=cmd_oracle)

    gad = sub.add_parser("gadget", help="build a construction")
    gad.add_argument(
        "kind", choices=["regulariser", "shifter", "absorber", "parity"]
    )
    gad.add_argument("--pattern", required=True)
    gad.add_argument("--input")
    gad.add_argument("--output")
    gad.add_argument("--dot")
    gad.set_defaults(fn=cmd_gadget)

    ver = sub.add_parser("verify", help="re-check a stored decomposition")
    ver.add_argument("--input", required=True)
    ver.set_defaults(fn=cmd_verify)

    ben = sub.add_parser("bench", help="timing table")
    ben.add_argument("--seed", type=int)
    ben.set_defaults(fn=cmd_bench)

    return ap


def run(argv: Sequence[str]) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(list(argv))
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GdecompError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
