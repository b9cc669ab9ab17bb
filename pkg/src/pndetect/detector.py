"""Pair-splitting state estimators over a finite labeled graph.

The detector tracks at most two candidate states at a time: its initial
state is the full node set of the underlying graph, and on each symbol the
set of possible successors is split into all two-element combinations (or
kept whole when it is a singleton). This keeps the construction polynomial
in the underlying graph size, unlike the exponential subset construction,
while still exposing every persistent ambiguity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Iterable

from .errors import NetInputError
from .graph import Edge, LabeledGraph, epsilon_closure

ClosureFn = Callable[[set[int]], set[int]]


@dataclass(frozen=True)
class NodeSet:
    """An unordered set of underlying states, stored sorted for canonical identity.

    ``kind`` is descriptive only ("initial", "singleton", "pair", or "group"
    for the larger observer states) and never takes part in equality.
    """

    members: tuple[Any, ...]
    kind: str = field(compare=False, default="auto")

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))
        if self.kind == "auto":
            sizes = {1: "singleton", 2: "pair"}
            object.__setattr__(self, "kind", sizes.get(len(self.members), "group"))

    def __len__(self) -> int:
        return len(self.members)


def build_detector(
    underlying: LabeledGraph, closure: ClosureFn | None = None
) -> LabeledGraph:
    """Detector of ``underlying``; only states reachable from the initial
    full set are materialized.

    For a state q and symbol e, the candidate set is the closure of all
    targets of e-labeled edges leaving members of q; a singleton becomes the
    lone successor, a larger set fans out into one successor per two-element
    subset, and an empty set leaves the step undefined.
    """
    if closure is None:
        closure = lambda s: s  # noqa: E731

    def payload(indices: Iterable[int], kind: str = "auto") -> NodeSet:
        return NodeSet(tuple(underlying.nodes[i] for i in indices), kind=kind)

    all_indices = frozenset(range(len(underlying.nodes)))
    index: dict[frozenset[int], int] = {all_indices: 0}
    nodes: list[NodeSet] = [payload(all_indices, kind="initial")]
    member_sets: list[frozenset[int]] = [all_indices]
    edges: list[Edge] = []
    at = 0
    while at < len(nodes):
        current = member_sets[at]
        for symbol in underlying.alphabet:
            targets = {
                e.dst
                for i in current
                for e in underlying.out_edges[i]
                if e.symbol == symbol
            }
            candidate = closure(targets) if targets else set()
            if not candidate:
                continue
            if len(candidate) == 1:
                successor_sets = [tuple(candidate)]
            else:
                successor_sets = list(combinations(sorted(candidate), 2))
            for succ in successor_sets:
                key = frozenset(succ)
                k = index.get(key)
                if k is None:
                    k = len(nodes)
                    index[key] = k
                    nodes.append(payload(key))
                    member_sets.append(key)
                edges.append(Edge(at, symbol, k))
        at += 1
    return LabeledGraph(
        nodes=tuple(nodes),
        edges=tuple(edges),
        initial=0,
        alphabet=underlying.alphabet,
    )


def rg_detector(rg: LabeledGraph) -> LabeledGraph:
    """Detector of a reachability graph; candidate sets close under silent edges."""
    return build_detector(rg, closure=lambda s: epsilon_closure(rg, s))


def brg_detector(brg: LabeledGraph) -> LabeledGraph:
    """Detector of a basis reachability graph.

    No closure is applied: basis-graph edges already absorb the silent
    explanations that precede each observable transition.
    """
    return build_detector(brg)


def detector_step(det: LabeledGraph, state: NodeSet, symbol: str) -> set[NodeSet]:
    """Stored successors of ``state`` on ``symbol``; empty set when undefined."""
    i = det.index_of.get(state)
    if i is None:
        raise NetInputError(f"{state} is not a detector state")
    return {det.nodes[e.dst] for e in det.out_edges[i] if e.symbol == symbol}
