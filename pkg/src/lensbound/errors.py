class InputError(ValueError):
    """Raised when an argument violates an operation's precondition."""


class InvariantError(RuntimeError):
    """Raised when an internal cross-check (oracle, identity) fails."""
