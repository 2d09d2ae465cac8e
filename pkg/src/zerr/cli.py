"""Command-line entry point: ``zerr <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import certificates as cert_mod
from .channel import channel_from_json, confusability_graph, load_channel
from .constructions import NamedConstruction, builtin, export, verify_construction
from .errors import ZerrError
from .graphs import (
    complement,
    dump_graph,
    graph_from_dimacs,
    graph_from_json,
    independence_number_exact,
    is_perfect,
    load_graph,
    strong_product,
)
from .protocol import (
    classical_baseline,
    full_codebook,
    simulate_monte_carlo,
    transcript_lines,
    verify_zero_error_exhaustive,
)
from .quantum import load_vectorset


def _load_graph_or_channel(path):
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        data = json.loads(text)
        if "inputs" in data:
            return confusability_graph(channel_from_json(data))
        return graph_from_json(data)
    return graph_from_dimacs(text)


def _construction(args) -> NamedConstruction:
    channel = load_channel(args.channel)
    vectors = load_vectorset(args.vectors)
    return NamedConstruction.from_channel(Path(args.channel).stem, channel, vectors)


def _emit(lines, out):
    text = "\n".join(lines) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_generate(args) -> int:
    c = builtin(args.name, args.m)
    export(c, args.out_channel, args.out_vectors)
    print(f"{c.name}: {len(c.labels)} inputs, {len(c.hypergraph.hyperedges)} outputs, C^{c.vectors.dimension}")
    return 0


def cmd_alpha(args) -> int:
    g = _load_graph_or_channel(args.file)
    w = independence_number_exact(g)
    print(w.size)
    if args.witness:
        print(" ".join(w.members))
    return 0


def cmd_clique(args) -> int:
    g = _load_graph_or_channel(args.file)
    print(independence_number_exact(complement(g)).size)
    return 0


def cmd_product(args) -> int:
    p = strong_product(load_graph(args.left), load_graph(args.right))
    if args.out:
        dump_graph(p, args.out)
    else:
        print(json.dumps(p.to_json()))
    return 0


def cmd_perfect(args) -> int:
    v = is_perfect(_load_graph_or_channel(args.file))
    if v.is_perfect:
        print("perfect")
    else:
        print(f"imperfect odd {v.kind}: {' '.join(v.witness)}")
    return 0


def cmd_verify(args) -> int:
    c = _construction(args)
    report = verify_construction(c)
    lines = [json.dumps(ch.to_json(), sort_keys=True) for ch in report.checks]
    run = verify_zero_error_exhaustive(c, full_codebook(c))
    baseline = classical_baseline(c, c.vectors.dimension)
    lines += transcript_lines(run.entries)
    lines += [json.dumps({"failure": f}, sort_keys=True) for f in run.failures]
    summary = {
        "name": c.name,
        "dim": c.vectors.dimension,
        "achieved": run.achieved,
        "baseline": baseline,
        "gap": None if run.achieved is None else run.achieved - baseline,
        "pairs": len(run.entries),
    }
    lines.append(json.dumps({"summary": summary}, sort_keys=True))
    _emit(lines, args.out)
    for ch in report.failures():
        print(f"FAIL {ch.name}: {ch.detail}", file=sys.stderr)
    for f in run.failures[:10]:
        print(f"FAIL {f['message']} via {f['output']}: {f['detail']}", file=sys.stderr)
    return 0 if report.structural_ok and run.ok else 1


def cmd_simulate(args) -> int:
    c = _construction(args)
    res = simulate_monte_carlo(c, full_codebook(c), args.trials, args.seed)
    summary = {"name": c.name, "trials": res.trials, "successes": res.successes,
               "success_fraction": res.success_fraction, "seed": args.seed}
    _emit(transcript_lines(res.transcript, summary), args.out)
    return 0 if res.successes == res.trials else 1


def cmd_certify(args) -> int:
    channel = load_channel(args.channel)
    vectors = load_vectorset(args.vectors) if args.vectors else None
    name = args.name or Path(args.channel).stem
    cert = cert_mod.certify(channel, vectors, args.assist_dim, name=name)
    if args.out:
        cert_mod.write_certificate(cert, args.out)
    print(cert.verdict)
    protocol_failed = any(c.name == "protocol" and c.required and not c.passed for c in cert.evidence)
    return 1 if protocol_failed else 0


def cmd_baseline(args) -> int:
    print(classical_baseline(load_channel(args.channel), args.d))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zerr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a built-in construction to channel + vector files")
    p.add_argument("name", choices=["cabello18", "xu"])
    p.add_argument("--m", type=int, default=1, help="family parameter for xu")
    p.add_argument("--out-channel", required=True)
    p.add_argument("--out-vectors", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("alpha", help="independence number of a graph or channel file")
    p.add_argument("file")
    p.add_argument("--witness", action="store_true", help="also print a maximum independent set")
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("clique", help="clique number of a graph or channel file")
    p.add_argument("file")
    p.set_defaults(func=cmd_clique)

    p = sub.add_parser("product", help="strong product of two graphs")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--out")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("perfect", help="perfect-graph test with odd hole/antihole witness")
    p.add_argument("file")
    p.set_defaults(func=cmd_perfect)

    p = sub.add_parser("verify", help="construction checks plus exhaustive protocol verification")
    p.add_argument("channel")
    p.add_argument("vectors")
    p.add_argument("--out", help="write the JSON-lines report here instead of stdout")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="Monte Carlo run of the joint protocol")
    p.add_argument("channel")
    p.add_argument("vectors")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("certify", help="emit a superadditivity / no-go certificate")
    p.add_argument("channel")
    p.add_argument("--vectors")
    p.add_argument("--assist-dim", type=int, required=True)
    p.add_argument("--name")
    p.add_argument("--out")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("baseline", help="zero-error capacity with a perfect d-level classical channel")
    p.add_argument("channel")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_baseline)
    return parser


def cli_dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (ZerrError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
