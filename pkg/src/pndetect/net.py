"""Labeled Petri net data model and firing semantics.

A net couples weighted pre/post incidence matrices with a labeling that
assigns each transition either an observable symbol or silence (``None``).
Markings are plain tuples of token counts over the declared place order, so
they hash, compare entrywise, and sort lexicographically for free.

All types are frozen; operations are pure functions.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import FiringError, NetInputError

Marking = tuple[int, ...]

ArcSpec = tuple[str, "str | None", Mapping[str, int], Mapping[str, int]]


def format_marking(places: tuple[str, ...], marking: Marking) -> str:
    """Canonical human-readable marking, e.g. ``p3+p4`` or ``2p1``; ``0`` when empty."""
    parts = [p if k == 1 else f"{k}{p}" for p, k in zip(places, marking) if k]
    return "+".join(parts) if parts else "0"


class _NetStructure:
    """Derived views shared by full nets and transition-restricted subnets."""

    places: tuple[str, ...]
    transitions: tuple[str, ...]
    pre: tuple[tuple[int, ...], ...]
    post: tuple[tuple[int, ...], ...]

    @cached_property
    def place_index(self) -> dict[str, int]:
        return {p: i for i, p in enumerate(self.places)}

    @cached_property
    def transition_index(self) -> dict[str, int]:
        return {t: j for j, t in enumerate(self.transitions)}

    @cached_property
    def pre_columns(self) -> tuple[Marking, ...]:
        return tuple(tuple(row[j] for row in self.pre) for j in range(len(self.transitions)))

    @cached_property
    def post_columns(self) -> tuple[Marking, ...]:
        return tuple(tuple(row[j] for row in self.post) for j in range(len(self.transitions)))

    @cached_property
    def delta_columns(self) -> tuple[tuple[int, ...], ...]:
        """Per-transition token flow (post minus pre)."""
        return tuple(
            tuple(c - p for c, p in zip(post_col, pre_col))
            for pre_col, post_col in zip(self.pre_columns, self.post_columns)
        )

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Token-flow matrix, one row per place."""
        n = len(self.transitions)
        return tuple(
            tuple(self.post[i][j] - self.pre[i][j] for j in range(n))
            for i in range(len(self.places))
        )

    def _validate_structure(self) -> None:
        m, n = len(self.places), len(self.transitions)
        if len(set(self.places)) != m:
            raise NetInputError("duplicate place identifiers")
        if len(set(self.transitions)) != n:
            raise NetInputError("duplicate transition identifiers")
        for name, matrix in (("pre", self.pre), ("post", self.post)):
            if len(matrix) != m or any(len(row) != n for row in matrix):
                raise NetInputError(f"{name} matrix is not {m}x{n}")
            if any(w < 0 for row in matrix for w in row):
                raise NetInputError(f"{name} matrix has a negative weight")


@dataclass(frozen=True)
class LabeledPetriNet(_NetStructure):
    """Weighted place/transition net with a partial observation labeling.

    ``labels[j]`` is the symbol emitted by ``transitions[j]``; ``None`` marks
    an unobservable transition.
    """

    places: tuple[str, ...]
    transitions: tuple[str, ...]
    pre: tuple[tuple[int, ...], ...]
    post: tuple[tuple[int, ...], ...]
    labels: tuple[str | None, ...]
    initial_marking: Marking

    def __post_init__(self):
        self._validate_structure()
        if len(self.labels) != len(self.transitions):
            raise NetInputError("labels must cover every transition")
        for lab in self.labels:
            if lab is not None and (not isinstance(lab, str) or not lab):
                raise NetInputError(f"invalid label {lab!r}; use a non-empty string or None")
        if len(self.initial_marking) != len(self.places):
            raise NetInputError("initial marking length differs from place count")
        if any(k < 0 for k in self.initial_marking):
            raise NetInputError("initial marking has a negative entry")

    @classmethod
    def from_arcs(
        cls,
        places: Iterable[str],
        transitions: Iterable[ArcSpec],
        initial_marking: Mapping[str, int],
    ) -> "LabeledPetriNet":
        """Build a net from per-transition arc dictionaries.

        ``transitions`` yields ``(id, label, pre, post)`` where ``pre`` and
        ``post`` map place names to arc weights.
        """
        places = tuple(places)
        index = {p: i for i, p in enumerate(places)}
        ids, labels, pre_rows, post_rows = [], [], [], []
        specs = list(transitions)
        for tid, label, _, _ in specs:
            ids.append(tid)
            labels.append(label)
        pre_rows = [[0] * len(specs) for _ in places]
        post_rows = [[0] * len(specs) for _ in places]
        for j, (tid, _, pre, post) in enumerate(specs):
            for target, arcs in ((pre_rows, pre), (post_rows, post)):
                for p, w in arcs.items():
                    if p not in index:
                        raise NetInputError(f"transition {tid!r} references unknown place {p!r}")
                    target[index[p]][j] = w
        for p in initial_marking:
            if p not in index:
                raise NetInputError(f"initial marking references unknown place {p!r}")
        m0 = tuple(initial_marking.get(p, 0) for p in places)
        return cls(
            places=places,
            transitions=tuple(ids),
            pre=tuple(tuple(row) for row in pre_rows),
            post=tuple(tuple(row) for row in post_rows),
            labels=tuple(labels),
            initial_marking=m0,
        )

    @cached_property
    def observable(self) -> tuple[str, ...]:
        return tuple(t for t, lab in zip(self.transitions, self.labels) if lab is not None)

    @cached_property
    def unobservable(self) -> tuple[str, ...]:
        return tuple(t for t, lab in zip(self.transitions, self.labels) if lab is None)

    @cached_property
    def alphabet(self) -> tuple[str, ...]:
        return tuple(sorted({lab for lab in self.labels if lab is not None}))

    def label(self, transition: str) -> str | None:
        return self.labels[self._tindex(transition)]

    def _tindex(self, transition: str) -> int:
        try:
            return self.transition_index[transition]
        except KeyError:
            raise NetInputError(f"unknown transition {transition!r}") from None


@dataclass(frozen=True)
class Subnet(_NetStructure):
    """A net restricted to a transition subset; places are kept in full.

    ``incidence`` (inherited) is the restriction of the token-flow matrix to
    the retained columns.
    """

    places: tuple[str, ...]
    transitions: tuple[str, ...]
    pre: tuple[tuple[int, ...], ...]
    post: tuple[tuple[int, ...], ...]
    labels: tuple[str | None, ...]

    def __post_init__(self):
        self._validate_structure()


def _check_marking(net: _NetStructure, marking: Marking) -> None:
    if len(marking) != len(net.places):
        raise NetInputError(
            f"marking length {len(marking)} does not match place count {len(net.places)}"
        )


def _covers(marking: Marking, required: Marking) -> bool:
    return all(a >= b for a, b in zip(marking, required))


def enabled(net: _NetStructure, marking: Marking) -> set[str]:
    """Transitions whose pre-column is covered entrywise by ``marking``."""
    _check_marking(net, marking)
    return {
        t
        for j, t in enumerate(net.transitions)
        if _covers(marking, net.pre_columns[j])
    }


def fire(net: _NetStructure, marking: Marking, transition: str) -> Marking:
    """Fire ``transition`` at ``marking``; raises :class:`FiringError` if disabled."""
    _check_marking(net, marking)
    try:
        j = net.transition_index[transition]
    except KeyError:
        raise NetInputError(f"unknown transition {transition!r}") from None
    if not _covers(marking, net.pre_columns[j]):
        raise FiringError(transition, marking)
    delta = net.delta_columns[j]
    return tuple(a + d for a, d in zip(marking, delta))


def parikh(sequence: Iterable[str], net: _NetStructure) -> tuple[int, ...]:
    """Occurrence-count vector of ``sequence`` over the net's transition order."""
    counts = [0] * len(net.transitions)
    for t in sequence:
        try:
            counts[net.transition_index[t]] += 1
        except KeyError:
            raise NetInputError(f"unknown transition {t!r}") from None
    return tuple(counts)


def unobservable_subnet(net: LabeledPetriNet) -> Subnet:
    """The net restricted to its silent transitions."""
    keep = [j for j, lab in enumerate(net.labels) if lab is None]
    return Subnet(
        places=net.places,
        transitions=tuple(net.transitions[j] for j in keep),
        pre=tuple(tuple(row[j] for j in keep) for row in net.pre),
        post=tuple(tuple(row[j] for j in keep) for row in net.post),
        labels=tuple(None for _ in keep),
    )


def is_acyclic(sub: _NetStructure) -> bool:
    """Whether the place/transition flow relation has no directed cycle.

    Decided by topological sort (Kahn) over the bipartite digraph with
    place-to-transition arcs from ``pre`` and transition-to-place arcs from
    ``post``.
    """
    m, n = len(sub.places), len(sub.transitions)
    succ: list[list[int]] = [[] for _ in range(m + n)]
    indeg = [0] * (m + n)
    for i in range(m):
        for j in range(n):
            if sub.pre[i][j]:
                succ[i].append(m + j)
                indeg[m + j] += 1
            if sub.post[i][j]:
                succ[m + j].append(i)
                indeg[i] += 1
    queue = deque(v for v in range(m + n) if indeg[v] == 0)
    done = 0
    while queue:
        v = queue.popleft()
        done += 1
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return done == m + n
