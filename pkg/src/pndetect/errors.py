"""Exception types shared across the toolkit."""

from __future__ import annotations


class ToolError(Exception):
    """Base class for every error raised by this package."""


class NetInputError(ToolError, ValueError):
    """Malformed input: unknown identifiers, dimension mismatches, bad symbols."""


class NetFormatError(NetInputError):
    """A net file violated the JSON schema; carries the offending location."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class FiringError(ToolError):
    """Attempt to fire a transition that is not enabled."""

    def __init__(self, transition: str, marking: tuple[int, ...]):
        self.transition = transition
        self.marking = marking
        super().__init__(f"transition {transition!r} is not enabled at marking {marking}")


class BoundednessError(ToolError):
    """A graph construction exceeded its node cap.

    For the reachability graph this means the net was not verified bounded
    within the cap; for derived graphs it is a plain size guard.
    """

    def __init__(self, what: str, cap: int):
        self.what = what
        self.cap = cap
        super().__init__(f"{what} exceeded {cap} nodes; net not verified bounded within cap")


class AssumptionError(ToolError):
    """Verification refused because a standing assumption does not hold."""

    def __init__(self, failed: tuple[str, ...]):
        self.failed = tuple(failed)
        super().__init__("assumption(s) violated: " + ", ".join(self.failed))


class GenerationError(ToolError):
    """Random net generation exhausted its retry budget."""
