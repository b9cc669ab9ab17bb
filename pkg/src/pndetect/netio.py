"""Net file schema, canonical emission, and DOT rendering.

Input schema (JSON)::

    {
      "places": ["p1", "p2"],
      "transitions": [
        {"id": "t1", "label": "a", "pre": {"p1": 1}, "post": {"p2": 1}}
      ],
      "initial_marking": {"p1": 1}
    }

``"label": null`` (or an omitted label) marks an unobservable transition.
Unknown keys are rejected so typos fail loudly. Emission and DOT rendering
sort everything canonically, which keeps outputs byte-stable across runs.
"""

from __future__ import annotations

import json
from typing import Any

from .basis import BasisState
from .detector import NodeSet
from .errors import NetFormatError
from .graph import LabeledGraph
from .net import LabeledPetriNet, format_marking


def parse_net(text: str) -> LabeledPetriNet:
    """Parse and validate a net document; errors carry a field location."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetFormatError(exc.msg, location=f"line {exc.lineno}") from None
    if not isinstance(doc, dict):
        raise NetFormatError("top level must be an object")
    allowed = {"places", "transitions", "initial_marking"}
    unknown = set(doc) - allowed
    if unknown:
        raise NetFormatError(f"unknown key(s) {sorted(unknown)}")
    missing = allowed - set(doc)
    if missing:
        raise NetFormatError(f"missing key(s) {sorted(missing)}")

    places = doc["places"]
    if not isinstance(places, list) or not all(
        isinstance(p, str) and p for p in places
    ):
        raise NetFormatError("must be a list of non-empty strings", "places")
    if len(set(places)) != len(places):
        raise NetFormatError("duplicate place identifiers", "places")
    known = set(places)

    raw_transitions = doc["transitions"]
    if not isinstance(raw_transitions, list):
        raise NetFormatError("must be a list of objects", "transitions")
    specs = []
    seen_ids: set[str] = set()
    for n, raw in enumerate(raw_transitions):
        where = f"transitions[{n}]"
        if not isinstance(raw, dict):
            raise NetFormatError("must be an object", where)
        unknown = set(raw) - {"id", "label", "pre", "post"}
        if unknown:
            raise NetFormatError(f"unknown key(s) {sorted(unknown)}", where)
        tid = raw.get("id")
        if not isinstance(tid, str) or not tid:
            raise NetFormatError("missing or invalid 'id'", where)
        if tid in seen_ids:
            raise NetFormatError(f"duplicate transition id {tid!r}", where)
        seen_ids.add(tid)
        label = raw.get("label")
        if label is not None and (not isinstance(label, str) or not label):
            raise NetFormatError("label must be a non-empty string or null", f"{where}.label")
        arcs = {}
        for side in ("pre", "post"):
            arcs[side] = _parse_arcs(raw.get(side, {}), known, f"{where}.{side}")
        specs.append((tid, label, arcs["pre"], arcs["post"]))

    initial = _parse_arcs(doc["initial_marking"], known, "initial_marking", allow_zero=True)
    return LabeledPetriNet.from_arcs(places, specs, initial)


def _parse_arcs(
    raw: Any, known: set[str], where: str, allow_zero: bool = False
) -> dict[str, int]:
    if not isinstance(raw, dict):
        raise NetFormatError("must be an object mapping places to counts", where)
    out: dict[str, int] = {}
    for p, w in raw.items():
        if p not in known:
            raise NetFormatError(f"unknown place {p!r}", where)
        if not isinstance(w, int) or isinstance(w, bool) or w < 0:
            raise NetFormatError(f"weight for {p!r} must be a non-negative integer", where)
        if w > 0 or allow_zero:
            out[p] = w
    return out


def emit_net(net: LabeledPetriNet) -> str:
    """Canonical JSON for ``net``; ``parse_net(emit_net(net))`` reproduces it."""
    doc = {
        "places": list(net.places),
        "transitions": [
            {
                "id": t,
                "label": net.labels[j],
                "pre": {
                    p: net.pre[i][j]
                    for i, p in enumerate(net.places)
                    if net.pre[i][j]
                },
                "post": {
                    p: net.post[i][j]
                    for i, p in enumerate(net.places)
                    if net.post[i][j]
                },
            }
            for j, t in enumerate(net.transitions)
        ],
        "initial_marking": {
            p: k for p, k in zip(net.places, net.initial_marking) if k
        },
    }
    return json.dumps(doc, indent=2) + "\n"


def format_state(places: tuple[str, ...], payload: Any) -> str:
    """Human-readable caption for any node payload used in this package."""
    if isinstance(payload, BasisState):
        return f"{format_marking(places, payload.marking)}|{int(payload.silent)}"
    if isinstance(payload, NodeSet):
        inner = sorted(format_state(places, m) for m in payload.members)
        return "{" + ", ".join(inner) + "}"
    return format_marking(places, payload)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(
    graph: LabeledGraph, places: tuple[str, ...], name: str = "G"
) -> str:
    """Deterministic DOT rendering.

    Markings use their canonical strings, basis states append the silent
    flag, and state sets are brace-enclosed. Silent edges are dashed and
    labeled with their transition; detector-style graphs draw pairs with a
    double border and box the initial full-set state.
    """
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for i, node in enumerate(graph.nodes):
        attrs = [f"label={_quote(format_state(places, node))}"]
        if isinstance(node, NodeSet):
            if node.kind == "initial":
                attrs.append("shape=box")
            elif node.kind == "pair":
                attrs.append("peripheries=2")
        lines.append(f"  n{i} [{', '.join(attrs)}];")
    rendered = []
    for e in graph.edges:
        if e.symbol is None:
            label = e.transition or ""
            attrs = f"label={_quote(label)}, style=dashed"
        elif e.transition is not None:
            attrs = f"label={_quote(f'{e.transition}:{e.symbol}')}"
        else:
            attrs = f"label={_quote(e.symbol)}"
        rendered.append((e.src, e.symbol or "", e.dst, f"  n{e.src} -> n{e.dst} [{attrs}];"))
    lines.extend(line for *_, line in sorted(rendered))
    lines.append("}")
    return "\n".join(lines) + "\n"
