"""Exception hierarchy shared by the engine modules and the CLI."""


class TorusGITError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class DimensionMismatch(TorusGITError, ValueError):
    pass


class NotFullDimensional(TorusGITError, ValueError):
    pass


class ImproperWallError(TorusGITError):
    """The weights do not affinely span, so every class lies on an improper wall."""


class AdaptedUndefined(TorusGITError):
    """Adapted one-parameter subgroups exist only for unstable points."""


class IneffectiveLinearization(TorusGITError):
    """The normalized linearization point lies outside the slice polytope."""


class NotCodimOne(TorusGITError):
    pass


class BoundaryCell(NotCodimOne):
    """Cells on the boundary of the G-ample cone cannot be crossed."""


class NotTrulyFaithful(TorusGITError):
    pass


class NotSpanning(TorusGITError):
    """Point configuration does not span projective space."""


class NotInClosure(TorusGITError):
    pass


class ScaleGuardError(TorusGITError):
    """Input exceeds the configured enumeration bound."""


class SectionMissesCone(TorusGITError):
    """The requested plot section does not meet the slice polytope."""
