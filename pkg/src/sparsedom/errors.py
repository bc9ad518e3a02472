"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-range input (CLI exit code 65)."""


class GuardError(RuntimeError):
    """An exhaustive routine refused to run because its size guard was exceeded."""
