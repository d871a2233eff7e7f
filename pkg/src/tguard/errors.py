"""Exception types raised by the solvers, simulator and mappers."""


class GuardError(Exception):
    """Base class for all package errors."""


class InvalidParams(GuardError, ValueError):
    """Speeds or target length violate the game's standing assumptions.

    ``assumption`` is one of ``"A1"``, ``"A2"``, ``"speed"`` or ``"length"``.
    """

    def __init__(self, assumption, message):
        super().__init__(f"[{assumption}] {message}")
        self.assumption = assumption


class InconsistentState(GuardError, ValueError):
    """Inertial positions do not describe a defender sitting on the target."""


class AtCaptureSurface(GuardError):
    """The attacker and defender share an x-coordinate; side is undefined."""


class DegenerateSlope(GuardError, ZeroDivisionError):
    pass


class DegenerateGeometry(GuardError):
    """The attacker sits on the aim endpoint, so no heading can be formed."""


class NoBarrier(GuardError):
    """No sign change of the Value exists inside the sampled window."""
