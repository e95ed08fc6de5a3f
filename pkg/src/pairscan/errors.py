"""Shared exception types."""


class ResourceLimitError(RuntimeError):
    """Raised when a request exceeds a configured capacity cap.

    Callers distinguish this from plain ValueError: bad arguments are a
    usage problem, hitting a cap is a resource guard (CLI exit code 3).
    """
