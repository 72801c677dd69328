"""Shared exception types.

Exit-code mapping for the CLI lives in cli.py: CapExceeded -> 2,
VerificationFailure -> 3, everything else -> nonzero generic.
"""


class GdecompError(Exception):
    pass


class BackendMismatch(GdecompError):
    """Two elements from different backends or different groups."""


class UnknownGenerator(GdecompError):
    pass


class CapExceeded(GdecompError):
    """A configured enumeration/size cap was hit before completion."""

    def __init__(self, message, reached=None):
        super().__init__(message)
        self.reached = reached


class VerificationFailure(GdecompError):
    """A checked invariant failed; carries witnesses when available."""

    def __init__(self, message, witnesses=None):
        super().__init__(message)
        self.witnesses = witnesses or []


class UncertifiedRegion(GdecompError):
    """An operation needed cover/tree data beyond the certified region."""


class SpecFormatError(GdecompError):
    """Malformed group-spec input file."""
