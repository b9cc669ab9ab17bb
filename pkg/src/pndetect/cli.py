"""Command-line interface.

Commands: ``verify``, ``export``, ``explain``, ``assumptions``, ``fuzz``.
Observation words are whitespace-separated symbols so multi-character labels
work. ``verify`` exits 0 when every requested property holds, 1 when any is
violated, and 2 on error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .basis import consistent_basis_markings
from .detector import NodeSet
from .errors import BoundednessError, NetInputError, ToolError
from .graph import LabeledGraph
from .net import LabeledPetriNet, is_acyclic, unobservable_subnet
from .netio import emit_net, format_state, graph_to_dot, parse_net
from .oracle import GenLimits, build_observer, cross_check, random_lpn
from .reachability import DEFAULT_CAP, build_rg, check_assumptions, consistent_markings
from .verifier import Analysis, PropertyCheck, analyze

PROPERTY_CHOICES = {"strong": ("strong",), "periodic": ("periodic-strong",),
                    "both": ("strong", "periodic-strong")}
METHOD_CHOICES = {"rg": ("rg",), "brg": ("brg",), "both": ("rg", "brg")}


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    properties: tuple[str, ...] = ("strong", "periodic-strong")
    methods: tuple[str, ...] = ("rg", "brg")
    cap: int = DEFAULT_CAP
    format: str = "text"
    out: str | None = None
    graph: str | None = None
    word: tuple[str, ...] = ()
    seed: int = 0
    count: int = 20
    limits: GenLimits = field(default_factory=GenLimits)


def _load_net(config: RunConfig) -> LabeledPetriNet:
    return parse_net(Path(config.input).read_text())


def _write(config: RunConfig, text: str) -> None:
    if config.out:
        Path(config.out).write_text(text)
    else:
        sys.stdout.write(text)


def _witness_line(places, witness) -> str:
    parts: list[str] = []
    for step in witness:
        parts.append(format_state(places, step.state))
        if step.symbol is not None:
            parts.append(f"--{step.symbol}-->")
    return " ".join(parts)


def _check_dict(check: PropertyCheck, places) -> dict:
    v = check.verdict
    witness = None
    if v.witness is not None:
        witness = [
            {"state": format_state(places, step.state), "symbol": step.symbol}
            for step in v.witness
        ]
    return {
        "property": v.property_name,
        "method": v.method,
        "holds": v.holds,
        "witness": witness,
        "statistics": {
            "rg_nodes": check.rg_nodes,
            "brg_nodes": check.brg_nodes,
            "detector_nodes": check.detector_nodes,
            "sccs": check.scc_count,
            "elapsed_ms": round(check.elapsed_ms, 3),
        },
    }


def _verify_report(config: RunConfig, analysis: Analysis) -> str:
    places = analysis.net.places
    if config.format == "json":
        doc = {
            "net": config.input,
            "assumptions": {
                "bounded_within_cap": analysis.assumptions.bounded_within_cap,
                "deadlock_free": analysis.assumptions.deadlock_free,
                "tu_acyclic": analysis.assumptions.tu_acyclic,
            },
            "all_confusable": analysis.confusable,
            "results": [_check_dict(c, places) for c in analysis.checks],
        }
        agreement = analysis.agreement()
        if agreement is not None:
            doc["agreement"] = agreement
        return json.dumps(doc, indent=2) + "\n"
    lines = []
    for check in analysis.checks:
        v = check.verdict
        status = "holds" if v.holds else "VIOLATED"
        lines.append(
            f"{v.property_name} via {v.method}: {status}  "
            f"[rg={check.rg_nodes} brg={check.brg_nodes if check.brg_nodes is not None else '-'} "
            f"detector={check.detector_nodes} sccs={check.scc_count}]"
        )
        if v.witness is not None:
            lines.append(f"  witness: {_witness_line(places, v.witness)}")
    agreement = analysis.agreement()
    if agreement is not None:
        lines.append(f"method agreement: {'yes' if agreement else 'NO'}")
    return "\n".join(lines) + "\n"


def _cmd_verify(config: RunConfig) -> int:
    net = _load_net(config)
    analysis = analyze(net, properties=config.properties, methods=config.methods,
                       cap=config.cap)
    _write(config, _verify_report(config, analysis))
    return 0 if analysis.all_hold else 1


def _cmd_export(config: RunConfig) -> int:
    net = _load_net(config)
    from .basis import build_brg
    from .detector import brg_detector, rg_detector

    if config.graph == "rg":
        graph = build_rg(net, config.cap)
    elif config.graph == "brg":
        graph = build_brg(net, config.cap)
    elif config.graph == "detector-rg":
        graph = rg_detector(build_rg(net, config.cap))
    elif config.graph == "detector-brg":
        graph = brg_detector(build_brg(net, config.cap))
    else:
        graph = build_observer(build_rg(net, config.cap), cap=config.cap)
    _write(config, graph_to_dot(graph, net.places, name=config.graph.replace("-", "_")))
    return 0


def _states_along(det: LabeledGraph, word: tuple[str, ...]) -> list[NodeSet]:
    current = {det.initial}
    for symbol in word:
        current = {
            e.dst for i in current for e in det.out_edges[i] if e.symbol == symbol
        }
    return sorted((det.nodes[i] for i in current), key=lambda q: q.members)


def _cmd_explain(config: RunConfig) -> int:
    net = _load_net(config)
    from .basis import build_brg
    from .detector import brg_detector, rg_detector

    word = config.word
    for symbol in word:
        if symbol not in net.alphabet:
            raise NetInputError(f"symbol {symbol!r} is not in the alphabet {net.alphabet}")
    rg = build_rg(net, config.cap)
    brg = build_brg(net, config.cap)
    det_rg = rg_detector(rg)
    det_brg = brg_detector(brg)
    places = net.places

    def marking_set(markings) -> str:
        return "{" + ", ".join(sorted(format_state(places, m) for m in markings)) + "}"

    def state_set(states) -> str:
        return "{" + ", ".join(format_state(places, q) for q in states) + "}"

    if config.format == "json":
        doc = {
            "word": list(word),
            "consistent_markings": sorted(
                format_state(places, m) for m in consistent_markings(rg, word)
            ),
            "consistent_basis_markings": sorted(
                format_state(places, b) for b in consistent_basis_markings(brg, word)
            ),
            "detector_states": {
                "rg": [format_state(places, q) for q in _states_along(det_rg, word)],
                "brg": [format_state(places, q) for q in _states_along(det_brg, word)],
            },
        }
        _write(config, json.dumps(doc, indent=2) + "\n")
        return 0
    lines = [f"observation: {' '.join(word) if word else '(empty)'}"]
    for k in range(1, len(word) + 1):
        prefix = word[:k]
        lines.append(
            f"  after {' '.join(prefix)!r}: consistent={marking_set(consistent_markings(rg, prefix))}"
            f" basis={marking_set(b.marking for b in consistent_basis_markings(brg, prefix))}"
        )
    lines.append(f"consistent markings: {marking_set(consistent_markings(rg, word))}")
    lines.append(
        "consistent basis markings: "
        + "{"
        + ", ".join(sorted(format_state(places, b) for b in consistent_basis_markings(brg, word)))
        + "}"
    )
    lines.append(f"rg-detector states: {state_set(_states_along(det_rg, word))}")
    lines.append(f"brg-detector states: {state_set(_states_along(det_brg, word))}")
    _write(config, "\n".join(lines) + "\n")
    return 0


def _cmd_assumptions(config: RunConfig) -> int:
    net = _load_net(config)
    bounded = True
    deadlock_free: bool | None = None
    try:
        rg = build_rg(net, config.cap)
    except BoundednessError:
        bounded = False
    else:
        report = check_assumptions(net, rg)
        deadlock_free = report.deadlock_free
    tu_acyclic = is_acyclic(unobservable_subnet(net))
    flags = {
        "bounded_within_cap": bounded,
        "deadlock_free": deadlock_free,
        "tu_acyclic": tu_acyclic,
    }
    if config.format == "json":
        _write(config, json.dumps(flags, indent=2) + "\n")
    else:
        rendered = {True: "yes", False: "NO", None: "unknown"}
        _write(
            config,
            "".join(f"{name}: {rendered[value]}\n" for name, value in flags.items()),
        )
    return 0 if all(v is True for v in flags.values()) else 1


def _cmd_fuzz(config: RunConfig) -> int:
    failures = 0
    for i in range(config.count):
        seed = config.seed + i
        net = random_lpn(seed, config.limits)
        verdicts = cross_check(net)
        agree = all(len(set(v.values())) == 1 for v in verdicts.values())
        if agree:
            continue
        failures += 1
        out_dir = Path(config.out or "fuzz-repro") / f"seed-{seed}"
        out_dir.mkdir(parents=True, exist_ok=True)
        _dump_disagreement(out_dir, net, verdicts, config.cap)
        print(f"seed {seed}: DISAGREEMENT, dumped to {out_dir}", file=sys.stderr)
    print(f"fuzz: {config.count} nets checked, {failures} disagreement(s)")
    return 0 if failures == 0 else 1


def _dump_disagreement(out_dir: Path, net, verdicts, cap: int) -> None:
    from .basis import build_brg
    from .detector import brg_detector, rg_detector

    (out_dir / "net.json").write_text(emit_net(net))
    (out_dir / "verdicts.json").write_text(json.dumps(verdicts, indent=2) + "\n")
    rg = build_rg(net, cap)
    brg = build_brg(net, cap)
    graphs = {
        "rg": rg,
        "brg": brg,
        "detector-rg": rg_detector(rg),
        "detector-brg": brg_detector(brg),
        "observer": build_observer(rg),
    }
    for name, graph in graphs.items():
        (out_dir / f"{name}.dot").write_text(
            graph_to_dot(graph, net.places, name=name.replace("-", "_"))
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pndetect",
        description="Detectability analysis for bounded labeled Petri nets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_format=True):
        p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                       help="node cap for graph construction (default %(default)s)")
        p.add_argument("--out", help="write output to this path instead of stdout")
        if with_format:
            p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("verify", help="decide detectability properties")
    p.add_argument("net", help="net file (JSON)")
    p.add_argument("--property", choices=sorted(PROPERTY_CHOICES), default="both")
    p.add_argument("--method", choices=sorted(METHOD_CHOICES), default="both")
    add_common(p)

    p = sub.add_parser("export", help="write a constructed graph as DOT")
    p.add_argument("net")
    p.add_argument("--graph", required=True,
                   choices=("rg", "brg", "detector-rg", "detector-brg", "observer"))
    add_common(p, with_format=False)

    p = sub.add_parser("explain", help="show the state estimate for an observation")
    p.add_argument("net")
    p.add_argument("word", nargs="*", help="observed symbols, whitespace separated")
    add_common(p)

    p = sub.add_parser("assumptions", help="report the standing assumptions")
    p.add_argument("net")
    add_common(p)

    p = sub.add_parser("fuzz", help="cross-check random nets against the observer")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--max-places", type=int, default=6)
    p.add_argument("--max-transitions", type=int, default=8)
    p.add_argument("--max-tokens", type=int, default=2)
    p.add_argument("--unobservable-ratio", type=float, default=0.3)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--out", help="directory for disagreement dumps")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    config = RunConfig(command=args.command)
    config.cap = getattr(args, "cap", DEFAULT_CAP)
    if config.cap < 1:
        raise NetInputError("cap must be positive")
    config.out = getattr(args, "out", None)
    config.format = getattr(args, "format", "text")
    config.input = getattr(args, "net", None)
    if args.command == "verify":
        config.properties = PROPERTY_CHOICES[args.property]
        config.methods = METHOD_CHOICES[args.method]
    elif args.command == "export":
        config.graph = args.graph
    elif args.command == "explain":
        config.word = tuple(args.word)
    elif args.command == "fuzz":
        config.seed = args.seed
        config.count = args.count
        config.limits = GenLimits(
            max_places=args.max_places,
            max_transitions=args.max_transitions,
            max_tokens=args.max_tokens,
            unobservable_ratio=args.unobservable_ratio,
        )
    return config


COMMANDS = {
    "verify": _cmd_verify,
    "export": _cmd_export,
    "explain": _cmd_explain,
    "assumptions": _cmd_assumptions,
    "fuzz": _cmd_fuzz,
}


def run(config: RunConfig) -> int:
    """Execute one command; exceptions are mapped to exit code 2 in main()."""
    return COMMANDS[config.command](config)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
        return run(config)
    except (ToolError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
