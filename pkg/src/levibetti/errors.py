"""Shared exception types."""


class CapExceeded(RuntimeError):
    """A configured enumeration cap (vertices, faces, lattice size, ...) was hit."""


class NonSquarefree(ValueError):
    """Operation requires a squarefree monomial ideal."""


class InvalidArrangement(ValueError):
    """Strict-mode arrangement failed a combinatorial count."""


class InputError(ValueError):
    """Malformed external input (JSON, family name, CLI arguments)."""
