"""Exception hierarchy shared by all koenigslab modules."""


class KoenigslabError(Exception):
    """Base class for all package errors."""


class InvalidSpec(KoenigslabError):
    """Model parameters violate a family constraint."""


class PointOutsideDisk(KoenigslabError):
    """A disk-side argument has modulus >= 1."""


class PointOutsideDomain(KoenigslabError):
    """An omega-side argument is not in the planar domain."""


class InversionDivergence(KoenigslabError):
    """Newton inversion failed to converge; carries the last residual."""

    def __init__(self, residual, iterations):
        self.residual = residual
        self.iterations = iterations
        super().__init__(
            f"inverse map did not converge after {iterations} iterations "
            f"(last residual {residual:.3e})"
        )


class BackwardTimeExceeded(KoenigslabError):
    """The leftward half-line exits the domain before the requested time.

    ``t_star`` is the exact maximal backward time.
    """

    def __init__(self, t_star):
        self.t_star = t_star
        super().__init__(f"backward orbit leaves the domain at t = {t_star:.12g}")


class NotRepelling(KoenigslabError):
    """The given boundary point is not a repelling fixed point of the model."""


class OrbitLeavesStolz(KoenigslabError):
    """An orbit sample falls outside the requested Stolz angle."""

    def __init__(self, t_offending):
        self.t_offending = t_offending
        super().__init__(f"orbit leaves the Stolz angle at t = {t_offending:.12g}")


class EscapeNotReached(KoenigslabError):
    """Orbit too short: hyperbolic escape below the certification threshold."""


class NoMaximalStrip(KoenigslabError):
    """Explicit-constant analysis needs a maximal horizontal strip (petal)."""


class LevelNotInteriorLine(KoenigslabError):
    """The horizontal line at this level does not eventually lie in the domain."""


class QuadratureTolerance(KoenigslabError):
    """Adaptive quadrature did not reach tolerance; carries the best estimate."""

    def __init__(self, estimate, error_bound):
        self.estimate = estimate
        self.error_bound = error_bound
        super().__init__(
            f"quadrature tolerance not met (estimate {estimate:.12g}, "
            f"error bound {error_bound:.3e})"
        )


class OutOfRange(KoenigslabError):
    """Scalar argument outside the mathematically valid interval."""


class NotConvergent(KoenigslabError):
    """Point sequence does not approach the reference boundary point."""


class NoLanding(KoenigslabError):
    """Orbit carries no landing estimate on the unit circle."""


class SolverDivergence(KoenigslabError):
    """Sparse linear solve failed to reach the requested residual."""


class DisconnectedDomain(KoenigslabError):
    """Grid domain does not connect the two marked boundary sets."""


class PathTouchesArc(KoenigslabError):
    """A joining path terminates on (or crosses) the measured arc."""


class PathLeavesDomain(KoenigslabError):
    """A path sample point is outside the domain."""


class SchemaError(KoenigslabError):
    """An artifact file does not match its expected schema."""


class ConfigError(KoenigslabError):
    """Scenario text is malformed or violates a scenario invariant."""
