"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input violates a documented precondition (bad shape, bad range, inconsistent arguments)."""


class ConfigError(DomainError):
    """A run-configuration document failed validation (unknown key, bad value, parse error)."""


class PgmFormatError(DomainError):
    """A PGM byte stream is malformed (bad magic, bad header fields, truncated payload)."""


class PredictionRejected(RuntimeError):
    """The lightweight generator produced an action that failed the validity gate.

    Callers are expected to catch this and fall back to the full policy for
    the current step.
    """

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason
