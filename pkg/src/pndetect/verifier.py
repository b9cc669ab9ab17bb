"""Detectability verdicts from a detector, via strongly connected components.

Two properties are decided:

* strong detectability: after enough observations the current state stays
  uniquely known along every infinite run. Violated exactly when some bad
  state is reachable from a cycle of the detector, so the check reduces to a
  forward search from the nontrivial strongly connected components.
* periodically strong detectability: along every infinite run the current
  state is uniquely known again and again with bounded gaps. Violated
  exactly when the subgraph induced by bad states contains a cycle.

A detector state is *bad* when it keeps more than one candidate alive: a
non-singleton, or (over the basis graph) a singleton whose marking still has
a silent continuation.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

from .basis import build_brg
from .detector import NodeSet, brg_detector, rg_detector
from .errors import AssumptionError, NetInputError
from .graph import LabeledGraph
from .net import LabeledPetriNet
from .reachability import (
    DEFAULT_CAP,
    AssumptionReport,
    build_rg,
    check_assumptions,
)

MODES = ("rg", "brg")


class WitnessStep(NamedTuple):
    state: NodeSet
    symbol: str | None


@dataclass(frozen=True)
class Verdict:
    """Outcome of one property check, with a violation witness when it fails.

    For strong detectability the witness is a path from inside a nontrivial
    SCC to a bad state (possibly a single node); for the periodic property it
    is a cycle consisting of bad states only, written with its start state
    repeated at the end. Witness steps pair each state with the symbol taken
    from it (``None`` on the final state).
    """

    property_name: str
    method: str
    holds: bool
    witness: tuple[WitnessStep, ...] | None

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("witness must be present exactly when the property fails")


@dataclass(frozen=True)
class SccDecomposition:
    """SCC partition in reverse topological order plus the condensation DAG."""

    components: tuple[tuple[int, ...], ...]
    component_of: tuple[int, ...]
    nontrivial: tuple[bool, ...]
    dag_edges: tuple[tuple[int, int], ...]


def _adjacency(graph: LabeledGraph) -> list[list[int]]:
    return [[e.dst for e in graph.out_edges[i]] for i in range(len(graph.nodes))]


def _tarjan(adjacency: list[list[int]]) -> list[list[int]]:
    """Iterative Tarjan; emits components in reverse topological order."""
    n = len(adjacency)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, at = work.pop()
            if at == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            descended = False
            neighbors = adjacency[v]
            for k in range(at, len(neighbors)):
                w = neighbors[k]
                if index[w] == -1:
                    work.append((v, k + 1))
                    work.append((w, 0))
                    descended = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if descended:
                continue
            if low[v] == index[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    component.append(w)
                    if w == v:
                        break
                components.append(sorted(component))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return components


def sccs(graph: LabeledGraph) -> SccDecomposition:
    """SCC partition of ``graph``; a component is nontrivial when it has at
    least two nodes or a self-loop."""
    adjacency = _adjacency(graph)
    components = _tarjan(adjacency)
    component_of = [0] * len(graph.nodes)
    for c, component in enumerate(components):
        for v in component:
            component_of[v] = c
    self_loops = {e.src for e in graph.edges if e.src == e.dst}
    nontrivial = tuple(
        len(component) > 1 or component[0] in self_loops for component in components
    )
    dag = sorted(
        {
            (component_of[e.src], component_of[e.dst])
            for e in graph.edges
            if component_of[e.src] != component_of[e.dst]
        }
    )
    return SccDecomposition(
        components=tuple(tuple(c) for c in components),
        component_of=tuple(component_of),
        nontrivial=nontrivial,
        dag_edges=tuple(dag),
    )


def bad_state(state: NodeSet, mode: str) -> bool:
    """Whether ``state`` leaves the current state ambiguous.

    ``rg`` mode: any non-singleton. ``brg`` mode: any non-singleton, or a
    singleton whose basis marking carries the silent-continuation flag. The
    initial full-set state is classified by the same cardinality rule.
    """
    if mode not in MODES:
        raise NetInputError(f"mode must be one of {MODES}, got {mode!r}")
    if len(state) != 1:
        return True
    if mode == "brg":
        return bool(state.members[0].silent)
    return False


def all_confusable(det: LabeledGraph, mode: str) -> bool:
    """True when every detector state is bad; such a system satisfies no
    detectability property at all."""
    return all(bad_state(q, mode) for q in det.nodes)


def _refuse_unless_ok(assumptions: AssumptionReport | None) -> None:
    if assumptions is not None and not assumptions.all_ok:
        raise AssumptionError(assumptions.failed())


def _bfs_tree(
    graph: LabeledGraph, seeds: list[int]
) -> tuple[dict[int, int], dict[int, tuple[int, str]]]:
    """Multi-source BFS; returns distances and (parent, symbol) links."""
    dist: dict[int, int] = {s: 0 for s in seeds}
    parent: dict[int, tuple[int, str]] = {}
    queue = deque(seeds)
    while queue:
        v = queue.popleft()
        for e in graph.out_edges[v]:
            if e.dst not in dist:
                dist[e.dst] = dist[v] + 1
                parent[e.dst] = (v, e.symbol)
                queue.append(e.dst)
    return dist, parent


def _path_witness(
    graph: LabeledGraph, parent: dict[int, tuple[int, str]], target: int
) -> tuple[WitnessStep, ...]:
    chain: list[WitnessStep] = [WitnessStep(graph.nodes[target], None)]
    v = target
    while v in parent:
        u, symbol = parent[v]
        chain.append(WitnessStep(graph.nodes[u], symbol))
        v = u
    return tuple(reversed(chain))


def verify_strong(
    det: LabeledGraph, mode: str, assumptions: AssumptionReport | None = None
) -> Verdict:
    """Strong detectability: no bad state may be reachable from a cycle."""
    if mode not in MODES:
        raise NetInputError(f"mode must be one of {MODES}, got {mode!r}")
    _refuse_unless_ok(assumptions)
    decomposition = sccs(det)
    seeds = sorted(
        v
        for component, nontrivial in zip(
            decomposition.components, decomposition.nontrivial
        )
        if nontrivial
        for v in component
    )
    method = f"{mode}-detector"
    if not seeds:
        return Verdict("strong", method, True, None)
    dist, parent = _bfs_tree(det, seeds)
    offenders = [v for v in dist if bad_state(det.nodes[v], mode)]
    if not offenders:
        return Verdict("strong", method, True, None)
    seed_set = set(seeds)

    def rank(v: int) -> tuple[int, bool, int]:
        # nearest first; prefer ambiguities that recur (inside an SCC), and
        # among equals the most recently discovered state, for a stable choice
        return (dist[v], v not in seed_set, -v)

    target = min(offenders, key=rank)
    return Verdict("strong", method, False, _path_witness(det, parent, target))


def verify_periodic_strong(
    det: LabeledGraph, mode: str, assumptions: AssumptionReport | None = None
) -> Verdict:
    """Periodically strong detectability: the bad states must not contain a
    cycle among themselves.

    Checking the complement (one all-bad cycle suffices to refute) keeps the
    test polynomial: it is an SCC computation on the induced subgraph.
    """
    _refuse_unless_ok(assumptions)
    if mode not in MODES:
        raise NetInputError(f"mode must be one of {MODES}, got {mode!r}")
    method = f"{mode}-detector"
    bad = [bad_state(q, mode) for q in det.nodes]
    induced = LabeledGraph(
        nodes=det.nodes,
        edges=tuple(e for e in det.edges if bad[e.src] and bad[e.dst]),
        initial=det.initial,
        alphabet=det.alphabet,
    )
    decomposition = sccs(induced)
    offending = [
        component
        for component, nontrivial in zip(
            decomposition.components, decomposition.nontrivial
        )
        if nontrivial
    ]
    if not offending:
        return Verdict("periodic-strong", method, True, None)
    component = min(offending, key=lambda c: c[0])
    witness = _cycle_witness(induced, set(component))
    return Verdict("periodic-strong", method, False, witness)


def _cycle_witness(graph: LabeledGraph, component: set[int]) -> tuple[WitnessStep, ...]:
    """Shortest cycle through the smallest node of a nontrivial SCC."""
    start = min(component)
    dist: dict[int, int] = {start: 0}
    parent: dict[int, tuple[int, str]] = {}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for e in graph.out_edges[v]:
            if e.dst in component and e.dst not in dist:
                dist[e.dst] = dist[v] + 1
                parent[e.dst] = (v, e.symbol)
                queue.append(e.dst)
    closers = [
        e
        for e in graph.edges
        if e.dst == start and e.src in component and e.src in dist
    ]
    last = min(closers, key=lambda e: (dist[e.src], e.src, e.symbol or ""))
    steps: list[WitnessStep] = [WitnessStep(graph.nodes[last.src], last.symbol)]
    v = last.src
    while v in parent:
        u, symbol = parent[v]
        steps.append(WitnessStep(graph.nodes[u], symbol))
        v = u
    steps.reverse()
    steps.append(WitnessStep(graph.nodes[start], None))
    return tuple(steps)


@dataclass(frozen=True)
class PropertyCheck:
    """One verdict plus the sizes that went into it."""

    verdict: Verdict
    rg_nodes: int
    brg_nodes: int | None
    detector_nodes: int
    scc_count: int
    elapsed_ms: float


@dataclass(frozen=True)
class Analysis:
    """Everything one verification run produced, for reporting and export."""

    net: LabeledPetriNet
    rg: LabeledGraph
    brg: LabeledGraph | None
    detectors: dict[str, LabeledGraph]
    assumptions: AssumptionReport
    confusable: dict[str, bool]
    checks: tuple[PropertyCheck, ...]

    @property
    def all_hold(self) -> bool:
        return all(c.verdict.holds for c in self.checks)

    def agreement(self) -> bool | None:
        """Whether both methods agree on every requested property; None when
        only one method ran."""
        if len({c.verdict.method for c in self.checks}) < 2:
            return None
        by_property: dict[str, set[bool]] = {}
        for c in self.checks:
            by_property.setdefault(c.verdict.property_name, set()).add(c.verdict.holds)
        return all(len(v) == 1 for v in by_property.values())


def analyze(
    net: LabeledPetriNet,
    properties: tuple[str, ...] = ("strong", "periodic-strong"),
    methods: tuple[str, ...] = ("rg", "brg"),
    cap: int = DEFAULT_CAP,
) -> Analysis:
    """Build the graphs, check the standing assumptions, and run every
    requested property/method combination. Refuses (raises
    :class:`AssumptionError`) when an assumption fails."""
    for p in properties:
        if p not in ("strong", "periodic-strong"):
            raise NetInputError(f"unknown property {p!r}")
    for m in methods:
        if m not in MODES:
            raise NetInputError(f"unknown method {m!r}")
    rg = build_rg(net, cap)
    assumptions = check_assumptions(net, rg)
    if not assumptions.all_ok:
        raise AssumptionError(assumptions.failed())
    brg = build_brg(net, cap) if "brg" in methods else None
    detectors: dict[str, LabeledGraph] = {}
    build_ms: dict[str, float] = {}
    for mode in methods:
        started = time.perf_counter()
        detectors[mode] = rg_detector(rg) if mode == "rg" else brg_detector(brg)
        build_ms[mode] = (time.perf_counter() - started) * 1000.0
    confusable = {mode: all_confusable(detectors[mode], mode) for mode in methods}
    checks: list[PropertyCheck] = []
    for mode in methods:
        det = detectors[mode]
        scc_count = len(sccs(det).components)
        for prop in properties:
            started = time.perf_counter()
            if prop == "strong":
                verdict = verify_strong(det, mode, assumptions)
            else:
                verdict = verify_periodic_strong(det, mode, assumptions)
            elapsed = build_ms[mode] + (time.perf_counter() - started) * 1000.0
            checks.append(
                PropertyCheck(
                    verdict=verdict,
                    rg_nodes=len(rg.nodes),
                    brg_nodes=len(brg.nodes) if brg is not None else None,
                    detector_nodes=len(det.nodes),
                    scc_count=scc_count,
                    elapsed_ms=elapsed,
                )
            )
    return Analysis(
        net=net,
        rg=rg,
        brg=brg,
        detectors=detectors,
        assumptions=assumptions,
        confusable=confusable,
        checks=tuple(checks),
    )
