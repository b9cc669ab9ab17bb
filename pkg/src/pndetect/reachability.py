"""Reachability graph construction, unobservable reaches, and consistency sets.

Current-state estimation here follows the unknown-start convention: the
initial marking is known to the modeler, but an observation may begin at any
reachable marking, so the consistent set of the empty word is the whole
reachability set.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import BoundednessError, NetInputError
from .graph import Edge, LabeledGraph, epsilon_closure
from .net import (
    LabeledPetriNet,
    Marking,
    _covers,
    enabled,
    is_acyclic,
    unobservable_subnet,
)

DEFAULT_CAP = 100_000


def build_rg(net: LabeledPetriNet, cap: int = DEFAULT_CAP) -> LabeledGraph:
    """Breadth-first closure of the firing rule from the initial marking.

    Every firing is recorded as an edge labeled with the transition's symbol
    (``None`` when silent) and annotated with the transition id. Raises
    :class:`BoundednessError` when more than ``cap`` markings appear, which is
    how boundedness is enforced operationally.
    """
    if cap < 1:
        raise NetInputError("cap must be positive")
    m0 = net.initial_marking
    index: dict[Marking, int] = {m0: 0}
    nodes: list[Marking] = [m0]
    edges: list[Edge] = []
    queue = deque([0])
    pre_cols = net.pre_columns
    delta_cols = net.delta_columns
    while queue:
        i = queue.popleft()
        marking = nodes[i]
        for j, t in enumerate(net.transitions):
            if not _covers(marking, pre_cols[j]):
                continue
            successor = tuple(a + d for a, d in zip(marking, delta_cols[j]))
            k = index.get(successor)
            if k is None:
                if len(nodes) >= cap:
                    raise BoundednessError("reachability graph", cap)
                k = len(nodes)
                index[successor] = k
                nodes.append(successor)
                queue.append(k)
            edges.append(Edge(i, net.labels[j], k, t))
    return LabeledGraph(
        nodes=tuple(nodes), edges=tuple(edges), initial=0, alphabet=net.alphabet
    )


def _require_finite_silent_behavior(net: LabeledPetriNet) -> None:
    """Reject nets whose silent closure cannot terminate.

    Acyclicity alone does not rule out a silent transition with an empty
    preset: such a transition is enabled forever and (with any output) makes
    the silent reach infinite.
    """
    if not is_acyclic(unobservable_subnet(net)):
        raise NetInputError("the unobservable-transition subnet has a directed cycle")
    for t in net.unobservable:
        j = net.transition_index[t]
        if not any(net.pre_columns[j]):
            if any(net.post_columns[j]):
                raise NetInputError(
                    f"unobservable transition {t!r} has an empty preset; "
                    "its silent reach is unbounded"
                )


def unobservable_reach(net: LabeledPetriNet, marking: Marking) -> set[Marking]:
    """All markings reachable from ``marking`` by firing silent transitions only."""
    _require_finite_silent_behavior(net)
    silent = [net.transition_index[t] for t in net.unobservable]
    pre_cols = net.pre_columns
    delta_cols = net.delta_columns
    seen = {marking}
    queue = deque([marking])
    while queue:
        m = queue.popleft()
        for j in silent:
            if _covers(m, pre_cols[j]):
                successor = tuple(a + d for a, d in zip(m, delta_cols[j]))
                if successor not in seen:
                    seen.add(successor)
                    queue.append(successor)
    return seen


def consistent_markings(rg: LabeledGraph, word: list[str] | tuple[str, ...]) -> set[Marking]:
    """Markings the system may currently occupy after observing ``word``.

    Starts from every node (unknown start), then alternately follows the
    edges carrying each observed symbol and closes under silent edges.
    """
    current = set(range(len(rg.nodes)))
    for symbol in word:
        if symbol not in rg.alphabet:
            raise NetInputError(f"symbol {symbol!r} is not in the alphabet {rg.alphabet}")
        stepped = {
            e.dst for i in current for e in rg.out_edges[i] if e.symbol == symbol
        }
        current = epsilon_closure(rg, stepped)
    return {rg.nodes[i] for i in current}


@dataclass(frozen=True)
class AssumptionReport:
    """Standing assumptions the verification theorems rely on."""

    bounded_within_cap: bool
    deadlock_free: bool
    tu_acyclic: bool

    @property
    def all_ok(self) -> bool:
        return self.bounded_within_cap and self.deadlock_free and self.tu_acyclic

    def failed(self) -> tuple[str, ...]:
        return tuple(
            name
            for name, ok in (
                ("bounded_within_cap", self.bounded_within_cap),
                ("deadlock_free", self.deadlock_free),
                ("tu_acyclic", self.tu_acyclic),
            )
            if not ok
        )


def check_assumptions(net: LabeledPetriNet, rg: LabeledGraph) -> AssumptionReport:
    """Report, never raise: a built ``rg`` already witnesses boundedness within cap."""
    deadlock_free = all(enabled(net, m) for m in rg.nodes)
    tu_acyclic = is_acyclic(unobservable_subnet(net))
    return AssumptionReport(
        bounded_within_cap=True,
        deadlock_free=deadlock_free,
        tu_acyclic=tu_acyclic,
    )
