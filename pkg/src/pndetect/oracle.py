"""Independent checkers used to cross-validate the detector pipeline.

The observer is the classic subset construction: exponential in the worst
case, so it is used only at desk scale, but it evaluates the detectability
conditions by a completely different route than the detectors do. The
brute-force helpers fire the net directly instead of walking any prebuilt
graph. ``random_lpn`` feeds all of this with small assumption-respecting
nets.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field

from .errors import BoundednessError, GenerationError
from .detector import NodeSet
from .graph import Edge, LabeledGraph, epsilon_closure
from .net import LabeledPetriNet, Marking, _covers
from .reachability import build_rg, check_assumptions
from .verifier import analyze


def build_observer(rg: LabeledGraph, cap: int = 100_000) -> LabeledGraph:
    """Deterministic subset construction over the observable symbols.

    The initial state is the silent closure of the full node set (unknown
    start); each step follows one symbol and closes under silent edges.
    """
    initial = frozenset(epsilon_closure(rg, range(len(rg.nodes))))

    def payload(indices: frozenset[int], kind: str = "auto") -> NodeSet:
        return NodeSet(tuple(rg.nodes[i] for i in indices), kind=kind)

    index: dict[frozenset[int], int] = {initial: 0}
    nodes: list[NodeSet] = [payload(initial, kind="initial")]
    member_sets: list[frozenset[int]] = [initial]
    edges: list[Edge] = []
    at = 0
    while at < len(nodes):
        current = member_sets[at]
        for symbol in rg.alphabet:
            targets = {
                e.dst for i in current for e in rg.out_edges[i] if e.symbol == symbol
            }
            if not targets:
                continue
            successor = frozenset(epsilon_closure(rg, targets))
            k = index.get(successor)
            if k is None:
                if len(nodes) >= cap:
                    raise BoundednessError("observer", cap)
                k = len(nodes)
                index[successor] = k
                nodes.append(payload(successor))
                member_sets.append(successor)
            edges.append(Edge(at, symbol, k))
        at += 1
    return LabeledGraph(
        nodes=tuple(nodes), edges=tuple(edges), initial=0, alphabet=rg.alphabet
    )


def _self_reaching(graph: LabeledGraph, allowed: set[int]) -> set[int]:
    """Nodes of ``allowed`` that lie on a cycle within ``allowed``.

    Deliberately naive (one BFS per node) so the oracle does not share the
    SCC machinery it is meant to check.
    """
    on_cycle = set()
    for v in allowed:
        frontier = {e.dst for e in graph.out_edges[v] if e.dst in allowed}
        seen = set(frontier)
        queue = deque(frontier)
        while queue:
            u = queue.popleft()
            for e in graph.out_edges[u]:
                if e.dst in allowed and e.dst not in seen:
                    seen.add(e.dst)
                    queue.append(e.dst)
        if v in seen:
            on_cycle.add(v)
    return on_cycle


def oracle_strong(obs: LabeledGraph) -> bool:
    """Every observer state reachable from a cycle must be a singleton."""
    everything = set(range(len(obs.nodes)))
    on_cycle = _self_reaching(obs, everything)
    reachable = set(on_cycle)
    queue = deque(on_cycle)
    while queue:
        v = queue.popleft()
        for e in obs.out_edges[v]:
            if e.dst not in reachable:
                reachable.add(e.dst)
                queue.append(e.dst)
    return all(len(obs.nodes[v]) == 1 for v in reachable)


def oracle_periodic_strong(obs: LabeledGraph) -> bool:
    """No cycle may avoid singleton states entirely."""
    non_singletons = {i for i, q in enumerate(obs.nodes) if len(q) != 1}
    return not _self_reaching(obs, non_singletons)


def brute_consistent_markings(
    net: LabeledPetriNet, word: tuple[str, ...]
) -> set[Marking]:
    """Consistent markings by exhaustive firing-sequence search.

    Explores (marking, symbols consumed) pairs from every reachable marking,
    firing the net directly; a visited set prunes revisits, which is sound
    because longer sequences reaching a seen pair add nothing new.
    """
    reachable = _plain_reachable(net)
    pre_cols = net.pre_columns
    delta_cols = net.delta_columns
    k = len(word)
    seen = {(m, 0) for m in reachable}
    queue = deque(seen)
    while queue:
        m, consumed = queue.popleft()
        for j, label in enumerate(net.labels):
            if not _covers(m, pre_cols[j]):
                continue
            successor = tuple(a + d for a, d in zip(m, delta_cols[j]))
            if label is None:
                nxt = (successor, consumed)
            elif consumed < k and label == word[consumed]:
                nxt = (successor, consumed + 1)
            else:
                continue
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return {m for m, consumed in seen if consumed == k}


def _plain_reachable(net: LabeledPetriNet) -> set[Marking]:
    pre_cols = net.pre_columns
    delta_cols = net.delta_columns
    seen = {net.initial_marking}
    queue = deque(seen)
    while queue:
        m = queue.popleft()
        for j in range(len(net.transitions)):
            if _covers(m, pre_cols[j]):
                successor = tuple(a + d for a, d in zip(m, delta_cols[j]))
                if successor not in seen:
                    seen.add(successor)
                    queue.append(successor)
    return seen


def brute_minimal_e_vectors(
    net: LabeledPetriNet, marking: Marking, transition: str
) -> set[tuple[int, ...]]:
    """Minimal explanation vectors by full enumeration of silent sequences."""
    j = net.transition_index[transition]
    required = net.pre_columns[j]
    silent = [net.transition_index[t] for t in net.unobservable]
    pre_cols = net.pre_columns
    delta_cols = net.delta_columns
    all_vectors: set[tuple[int, ...]] = set()
    stack: list[tuple[Marking, tuple[int, ...]]] = [
        (marking, tuple(0 for _ in silent))
    ]
    while stack:
        m, vector = stack.pop()
        if _covers(m, required):
            all_vectors.add(vector)
            continue
        for pos, sj in enumerate(silent):
            if any(pre_cols[sj]) or any(delta_cols[sj]):
                if _covers(m, pre_cols[sj]):
                    successor = tuple(a + d for a, d in zip(m, delta_cols[sj]))
                    grown = list(vector)
                    grown[pos] += 1
                    stack.append((successor, tuple(grown)))
    return {
        v
        for v in all_vectors
        if not any(
            other != v and all(x <= y for x, y in zip(other, v))
            for other in all_vectors
        )
    }


def observations_up_to(net: LabeledPetriNet, max_len: int) -> list[tuple[str, ...]]:
    """All words of length <= max_len with a nonempty consistent set, found by
    brute force; pruned on empty prefixes since consistency is prefix-monotone."""
    words: list[tuple[str, ...]] = [()]
    frontier: list[tuple[str, ...]] = [()]
    for _ in range(max_len):
        grown: list[tuple[str, ...]] = []
        for w in frontier:
            for symbol in net.alphabet:
                candidate = w + (symbol,)
                if brute_consistent_markings(net, candidate):
                    grown.append(candidate)
        words.extend(grown)
        frontier = grown
    return words


@dataclass(frozen=True)
class GenLimits:
    """Knobs for the random net generator."""

    max_places: int = 6
    max_transitions: int = 8
    max_tokens: int = 2
    unobservable_ratio: float = 0.3
    max_markings: int = 20
    attempts: int = 2000


def random_lpn(seed: int, limits: GenLimits = GenLimits()) -> LabeledPetriNet:
    """Deterministic random net that passes the standing assumptions.

    Draws small nets (every transition keeps a nonempty preset, arc weights
    one) and retries until one is bounded within ``limits.max_markings``,
    deadlock free, and has an acyclic silent subnet.
    """
    rng = random.Random(seed)
    for _ in range(limits.attempts):
        places = [f"p{i+1}" for i in range(rng.randint(2, limits.max_places))]
        n_transitions = rng.randint(2, limits.max_transitions)
        alphabet = ["a", "b", "c"][: rng.randint(1, 3)]
        specs = []
        for j in range(n_transitions):
            n_pre = 1 if rng.random() < 0.7 or len(places) < 2 else 2
            pre = {p: 1 for p in rng.sample(places, n_pre)}
            roll = rng.random()
            if roll < 0.05:
                post = {}
            elif roll < 0.8 or len(places) < 2:
                post = {p: 1 for p in rng.sample(places, 1)}
            else:
                post = {p: 1 for p in rng.sample(places, 2)}
            label = None if rng.random() < limits.unobservable_ratio else rng.choice(alphabet)
            specs.append((f"t{j+1}", label, pre, post))
        if all(label is None for _, label, _, _ in specs):
            k = rng.randrange(len(specs))
            tid, _, pre, post = specs[k]
            specs[k] = (tid, rng.choice(alphabet), pre, post)
        tokens = rng.randint(1, limits.max_tokens)
        initial: dict[str, int] = {}
        for _ in range(tokens):
            p = rng.choice(places)
            initial[p] = initial.get(p, 0) + 1
        net = LabeledPetriNet.from_arcs(places, specs, initial)
        try:
            rg = build_rg(net, cap=limits.max_markings)
        except BoundednessError:
            continue
        if check_assumptions(net, rg).all_ok:
            return net
    raise GenerationError(f"no assumption-passing net within {limits.attempts} attempts")


@dataclass(frozen=True)
class Disagreement:
    seed: int
    net: LabeledPetriNet
    verdicts: dict[str, dict[str, bool]]


@dataclass(frozen=True)
class FuzzReport:
    checked: int
    disagreements: tuple[Disagreement, ...] = field(default_factory=tuple)


def cross_check(net: LabeledPetriNet, cap: int = 100_000) -> dict[str, dict[str, bool]]:
    """Verdicts for both properties from all three methods."""
    analysis = analyze(net, cap=cap)
    obs = build_observer(analysis.rg)
    verdicts: dict[str, dict[str, bool]] = {
        "strong": {"observer": oracle_strong(obs)},
        "periodic-strong": {"observer": oracle_periodic_strong(obs)},
    }
    for check in analysis.checks:
        verdicts[check.verdict.property_name][check.verdict.method] = check.verdict.holds
    return verdicts


def run_fuzz(seed: int, count: int, limits: GenLimits = GenLimits()) -> FuzzReport:
    """Generate ``count`` nets from consecutive seeds and require the
    rg-detector, brg-detector, and observer verdicts to coincide."""
    disagreements: list[Disagreement] = []
    for i in range(count):
        net_seed = seed + i
        net = random_lpn(net_seed, limits)
        verdicts = cross_check(net)
        for by_method in verdicts.values():
            if len(set(by_method.values())) != 1:
                disagreements.append(Disagreement(net_seed, net, verdicts))
                break
    return FuzzReport(checked=count, disagreements=tuple(disagreements))
