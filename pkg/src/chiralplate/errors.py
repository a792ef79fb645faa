"""Structured errors raised by the library.

Every failure mode that callers are expected to handle gets its own class;
all inherit from :class:`ChiralplateError` so a CLI can map the whole family
onto one exit code.
"""


class ChiralplateError(Exception):
    """Base class for all library errors."""


class MaterialError(ChiralplateError):
    """Invalid elastic constants (singular or non-physical material)."""


class GeometryError(ChiralplateError):
    """Invalid cell or element geometry."""


class MeshError(ChiralplateError):
    """Mesh construction or consistency failure."""


class ConstraintError(ChiralplateError):
    """Invalid constraint set (e.g. every node fixed)."""


class SolveError(ChiralplateError):
    """Singular or indefinite reduced stiffness matrix.

    Attributes:
        rigid_modes: number of near-zero eigenvalues detected, when known.
    """

    def __init__(self, message: str, rigid_modes: int | None = None):
        super().__init__(message)
        self.rigid_modes = rigid_modes


class ConfigError(ChiralplateError):
    """Malformed or inconsistent scenario configuration."""
