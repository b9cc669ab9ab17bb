"""Minimal silent explanations, basis markings, and the basis reachability graph.

A silent sequence *explains* an observable transition at a marking when
firing it makes that transition enabled. Keeping only explanations whose
firing-count vectors are minimal yields the basis markings: the initial
marking plus everything reachable by one observable transition preceded by a
minimal explanation. This compresses the reachability space while preserving
what an outside observer can infer.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import BoundednessError, NetInputError
from .graph import Edge, LabeledGraph
from .net import LabeledPetriNet, Marking, _covers
from .reachability import DEFAULT_CAP, _require_finite_silent_behavior, unobservable_reach


@dataclass(frozen=True, order=True)
class BasisState:
    """A basis marking together with its silent-continuation flag.

    ``silent`` is True when a nonempty silent sequence can fire at the
    marking, i.e. the system may already have moved on without being seen.
    """

    marking: Marking
    silent: bool


@dataclass(frozen=True)
class Explanation:
    """A silent sequence enabling an observable transition.

    ``e_vector`` is the sequence's firing-count vector over the unobservable
    transitions in declared order.
    """

    sequence: tuple[str, ...]
    e_vector: tuple[int, ...]


def _dominates(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """a >= b entrywise with a != b."""
    return a != b and all(x >= y for x, y in zip(a, b))


def _explanation_vectors(
    net: LabeledPetriNet,
    marking: Marking,
    required: Marking,
    silent_idx: list[int],
    with_sequences: bool,
) -> dict[tuple[int, ...], tuple[tuple[str, ...], ...]]:
    """Level-wise search over silent firing-count vectors.

    From one source marking, a vector determines the marking it reaches, so
    the frontier is keyed by vector alone. A state stops expanding once it
    covers ``required`` (any extension is dominated) or once its vector
    dominates an explanation found earlier. Silent transitions with no arcs
    are skipped: firing them changes nothing, so they never occur in a
    minimal explanation.
    """
    pre_cols = net.pre_columns
    delta_cols = net.delta_columns
    effective = [
        j for j in silent_idx if any(pre_cols[j]) or any(delta_cols[j])
    ]
    found: dict[tuple[int, ...], set[tuple[str, ...]]] = {}
    zero = tuple(0 for _ in silent_idx)
    position = {j: k for k, j in enumerate(silent_idx)}
    frontier: dict[tuple[int, ...], tuple[Marking, set[tuple[str, ...]]]] = {
        zero: (marking, {()})
    }
    while frontier:
        next_frontier: dict[tuple[int, ...], tuple[Marking, set[tuple[str, ...]]]] = {}
        for vector, (m, seqs) in frontier.items():
            if any(_dominates(vector, f) for f in found):
                continue
            if _covers(m, required):
                found.setdefault(vector, set()).update(seqs)
                continue
            for j in effective:
                if not _covers(m, pre_cols[j]):
                    continue
                successor = tuple(a + d for a, d in zip(m, delta_cols[j]))
                new_vector = list(vector)
                new_vector[position[j]] += 1
                key = tuple(new_vector)
                entry = next_frontier.get(key)
                if entry is None:
                    entry = (successor, set())
                    next_frontier[key] = entry
                if with_sequences:
                    t = net.transitions[j]
                    entry[1].update(seq + (t,) for seq in seqs)
                elif not entry[1]:
                    t = net.transitions[j]
                    entry[1].add(next(iter(seqs)) + (t,))
        frontier = next_frontier
    # level-wise search already yields an antichain; keep the filter as a guard
    minimal = {
        v: seqs
        for v, seqs in found.items()
        if not any(_dominates(v, other) for other in found)
    }
    return {v: tuple(sorted(seqs)) for v, seqs in minimal.items()}


def _prepare_explanation_query(net: LabeledPetriNet, transition: str):
    try:
        j = net.transition_index[transition]
    except KeyError:
        raise NetInputError(f"unknown transition {transition!r}") from None
    if net.labels[j] is None:
        raise NetInputError(f"transition {transition!r} is unobservable")
    _require_finite_silent_behavior(net)
    silent_idx = [net.transition_index[t] for t in net.unobservable]
    return j, silent_idx


def minimal_explanations(
    net: LabeledPetriNet, marking: Marking, transition: str
) -> set[Explanation]:
    """All silent sequences that enable ``transition`` at ``marking`` with a
    minimal firing-count vector; empty set when no explanation exists."""
    j, silent_idx = _prepare_explanation_query(net, transition)
    vectors = _explanation_vectors(
        net, marking, net.pre_columns[j], silent_idx, with_sequences=True
    )
    return {
        Explanation(sequence=seq, e_vector=vector)
        for vector, seqs in vectors.items()
        for seq in seqs
    }


def minimal_e_vectors(
    net: LabeledPetriNet, marking: Marking, transition: str
) -> set[tuple[int, ...]]:
    """The minimal firing-count vectors alone (one representative per vector
    is tracked internally, which keeps graph construction cheap)."""
    j, silent_idx = _prepare_explanation_query(net, transition)
    vectors = _explanation_vectors(
        net, marking, net.pre_columns[j], silent_idx, with_sequences=False
    )
    return set(vectors)


def has_silent_continuation(net: LabeledPetriNet, marking: Marking) -> bool:
    """Whether a nonempty silent sequence can fire at ``marking``.

    With an acyclic silent subnet this coincides with the existence of a
    nonzero nonnegative integer firing vector that keeps the marking
    nonnegative, because every such vector is realizable by an actual firing
    sequence, and a nonempty sequence starts with an enabled transition.
    """
    _require_finite_silent_behavior(net)
    return any(
        _covers(marking, net.pre_columns[net.transition_index[t]])
        for t in net.unobservable
    )


def markings_from_basis(net: LabeledPetriNet, basis_marking: Marking) -> set[Marking]:
    """Markings covered by a basis marking: exactly its unobservable reach."""
    return unobservable_reach(net, basis_marking)


def build_brg(net: LabeledPetriNet, cap: int = DEFAULT_CAP) -> LabeledGraph:
    """Basis reachability graph over (basis marking, silent-flag) states.

    Starting at the initial marking, each observable transition combined with
    each of its minimal explanations contributes one successor basis marking
    and one edge carrying the transition's symbol. Parallel explanations that
    reach the same successor collapse into a single edge.
    """
    if cap < 1:
        raise NetInputError("cap must be positive")
    _require_finite_silent_behavior(net)
    silent_idx = [net.transition_index[t] for t in net.unobservable]
    observable_idx = [net.transition_index[t] for t in net.observable]
    delta_cols = net.delta_columns

    def flag(m: Marking) -> bool:
        return any(_covers(m, net.pre_columns[j]) for j in silent_idx)

    m0 = net.initial_marking
    index: dict[Marking, int] = {m0: 0}
    nodes: list[BasisState] = [BasisState(m0, flag(m0))]
    edges: list[Edge] = []
    edge_keys: set[tuple[int, str, int]] = set()
    queue = deque([0])
    while queue:
        i = queue.popleft()
        marking = nodes[i].marking
        for j in observable_idx:
            t = net.transitions[j]
            symbol = net.labels[j]
            vectors = _explanation_vectors(
                net, marking, net.pre_columns[j], silent_idx, with_sequences=False
            )
            for vector in sorted(vectors):
                silent_shift = marking
                for pos, count in enumerate(vector):
                    if count:
                        d = delta_cols[silent_idx[pos]]
                        silent_shift = tuple(
                            a + count * x for a, x in zip(silent_shift, d)
                        )
                successor = tuple(a + d for a, d in zip(silent_shift, delta_cols[j]))
                k = index.get(successor)
                if k is None:
                    if len(nodes) >= cap:
                        raise BoundednessError("basis reachability graph", cap)
                    k = len(nodes)
                    index[successor] = k
                    nodes.append(BasisState(successor, flag(successor)))
                    queue.append(k)
                key = (i, symbol, k)
                if key not in edge_keys:
                    edge_keys.add(key)
                    edges.append(Edge(i, symbol, k, t))
    return LabeledGraph(
        nodes=tuple(nodes), edges=tuple(edges), initial=0, alphabet=net.alphabet
    )


def consistent_basis_markings(
    brg: LabeledGraph, word: list[str] | tuple[str, ...]
) -> set[BasisState]:
    """Basis states compatible with ``word``, starting from every state."""
    current = set(range(len(brg.nodes)))
    for symbol in word:
        if symbol not in brg.alphabet:
            raise NetInputError(f"symbol {symbol!r} is not in the alphabet {brg.alphabet}")
        current = {
            e.dst for i in current for e in brg.out_edges[i] if e.symbol == symbol
        }
    return {brg.nodes[i] for i in current}
