"""Exception hierarchy. Every error carries the name of the violated invariant."""


class DivforgeError(Exception):
    """Base class; ``invariant`` names the violated rule or precondition."""

    exit_code = 1

    def __init__(self, invariant: str, message: str = ""):
        self.invariant = invariant
        super().__init__(f"[{invariant}] {message}" if message else f"[{invariant}]")


class StructuralError(DivforgeError):
    """Input data violates a type invariant (disconnected graph, loop edge, ...)."""


class InvalidMatroid(DivforgeError):
    """Matroid data violates the rank-3 simple matroid axioms."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__(self.violations[0][0] if self.violations else "matroid",
                         "; ".join(msg for _, msg in self.violations))


class DegenerateMatroid(DivforgeError):
    """No basis completion exists, so the matroid has rank below 3."""


class UsageError(DivforgeError):
    """A caller broke a precondition (equal elements, non-prime modulus, ...)."""

    exit_code = 2


class CapacityError(DivforgeError):
    """Request exceeds a configured bound."""
