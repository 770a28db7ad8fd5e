"""Exception types raised by the front-propagation solver."""


class KclError(Exception):
    """Base class for all solver errors."""


class BadParameter(KclError):
    """Scenario or configuration parameter out of its admissible range."""


class DegenerateTangents(KclError):
    """The two tangent vectors are numerically parallel or have vanishing length."""


class NonPositiveEnergy(KclError):
    """The energy-density component cannot define an admissible front speed."""


class NoConvergence(KclError):
    """The scalar root solve did not converge; the state is likely corrupted."""


class ImaginarySpeed(KclError):
    """Characteristic speeds are imaginary (front speed below unity)."""


class SingularFrame(KclError):
    """Quasi-linear matrix assembly would divide by a near-zero frame component."""


class PathInconsistency(KclError):
    """Edge data is not curl-compatible: potentials depend on integration path."""


class ZeroSpeed(KclError):
    """All characteristic speeds vanish, so no CFL time step is defined."""


class EmptySection(KclError):
    """The requested cross-section plane does not intersect the front mesh."""
