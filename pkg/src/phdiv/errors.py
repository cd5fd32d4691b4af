"""Exception types raised across the package."""


class PhdivError(Exception):
    """Base class for all phdiv errors."""


class DimensionMismatch(PhdivError):
    """Input vectors do not share a common dimension, or an array has the wrong shape."""


class ZeroVectorError(PhdivError):
    """A zero-norm vector was passed where a direction is required (cosine, Vendi)."""


class NonFinite(PhdivError):
    """NaN or infinity encountered in a distance matrix."""


class NegativeDistance(PhdivError):
    """A distance entry is negative beyond tolerance."""


class AsymmetryError(PhdivError):
    """A precomputed matrix is asymmetric beyond tolerance."""


class NonzeroDiagonal(PhdivError):
    """A precomputed matrix has a nonzero diagonal entry beyond tolerance."""


class FiltrationDimError(PhdivError):
    """The filtration lacks the simplex dimension needed by the operation."""


class SizeLimit(PhdivError):
    """Input exceeds a configured size bound."""


class NegativeOrder(PhdivError):
    """Entropy order q must be nonnegative."""


class WindowOrderError(PhdivError):
    """A scale window must satisfy 0 <= eps_min < eps_max."""


class EigenFailure(PhdivError):
    """A symmetric eigendecomposition failed to converge or is inconsistent."""


class TooFewPoints(PhdivError):
    """The operation needs more points than were supplied."""


class InsufficientClassMembers(PhdivError):
    """A class has fewer members in the sampling pool than requested."""
