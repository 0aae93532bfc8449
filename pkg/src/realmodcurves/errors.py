class BudgetExceeded(RuntimeError):
    """A group closure or enumeration grew past its element budget."""


class InvariantViolation(AssertionError):
    """A structural invariant failed; carries a diagnostic payload."""

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details


class ValenceError(InvariantViolation):
    def __init__(self, vertex, valence):
        super().__init__(f"vertex {vertex} has valence {valence}, expected 2",
                         vertex=vertex, valence=valence)
        self.vertex = vertex
        self.valence = valence
