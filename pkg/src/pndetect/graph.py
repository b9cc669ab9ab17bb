"""Generic finite labeled transition graph.

One carrier type serves every construction in the package: the reachability
graph (nodes are markings), the basis reachability graph (nodes are
marking/flag pairs), and the detector and observer automata (nodes are state
sets). Edges carry a symbol (``None`` for a silent step) and, when known, the
concrete transition behind the step.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, NamedTuple


class Edge(NamedTuple):
    src: int
    symbol: str | None
    dst: int
    transition: str | None = None


@dataclass(frozen=True)
class LabeledGraph:
    """Immutable graph with deterministic node order (BFS insertion order)."""

    nodes: tuple[Any, ...]
    edges: tuple[Edge, ...]
    initial: int = 0
    alphabet: tuple[str, ...] = ()

    def __post_init__(self):
        n = len(self.nodes)
        for e in self.edges:
            if not (0 <= e.src < n and 0 <= e.dst < n):
                raise ValueError(f"edge {e} out of range for {n} nodes")
        if self.nodes and not 0 <= self.initial < n:
            raise ValueError(f"initial index {self.initial} out of range")

    @cached_property
    def out_edges(self) -> tuple[tuple[Edge, ...], ...]:
        buckets: list[list[Edge]] = [[] for _ in self.nodes]
        for e in self.edges:
            buckets[e.src].append(e)
        return tuple(tuple(b) for b in buckets)

    @cached_property
    def index_of(self) -> dict[Any, int]:
        return {node: i for i, node in enumerate(self.nodes)}

    def successors(self, index: int, symbol: str | None) -> tuple[int, ...]:
        return tuple(e.dst for e in self.out_edges[index] if e.symbol == symbol)


def epsilon_closure(graph: LabeledGraph, seeds: Iterable[int]) -> set[int]:
    """Indices reachable from ``seeds`` through silent edges, seeds included."""
    seen = set(seeds)
    stack = list(seen)
    while stack:
        i = stack.pop()
        for e in graph.out_edges[i]:
            if e.symbol is None and e.dst not in seen:
                seen.add(e.dst)
                stack.append(e.dst)
    return seen
