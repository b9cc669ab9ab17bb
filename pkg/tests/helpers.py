"""Shared helpers for the test suite."""

from __future__ import annotations

from pathlib import Path

from pndetect import LabeledPetriNet, parse_net

FIXTURES = Path(__file__).parent / "fixtures"

# Markings of the seven-place demo net, in its declared place order
# p1..p7. Names follow the order in which breadth-first exploration
# discovers them.
M0 = (1, 0, 0, 0, 0, 0, 0)
M1 = (0, 1, 0, 0, 0, 0, 0)
M2 = (0, 0, 1, 1, 0, 0, 0)
M3 = (0, 0, 0, 0, 0, 0, 1)
M4 = (0, 0, 0, 0, 1, 0, 0)
M5 = (0, 0, 0, 0, 0, 1, 0)


def load_fixture(name: str) -> LabeledPetriNet:
    return parse_net((FIXTURES / name).read_text())


def net_from(places, transitions, initial) -> LabeledPetriNet:
    return LabeledPetriNet.from_arcs(places, transitions, initial)


def states_along(det, word):
    """All detector states reachable from the initial state on ``word``."""
    current = {det.initial}
    for symbol in word:
        current = {e.dst for i in current for e in det.out_edges[i] if e.symbol == symbol}
    return {det.nodes[i] for i in current}


def all_words(alphabet, max_len):
    words = [()]
    frontier = [()]
    for _ in range(max_len):
        frontier = [w + (s,) for w in frontier for s in alphabet]
        words.extend(frontier)
    return words
