"""Exception types raised by the IGSTQA pipeline.

Every error derives from ``ValueError`` so callers that only care about bad
input can catch that; the CLI maps each subclass onto an exit status.
"""


class IGSTQAError(ValueError):
    """Base class for all pipeline errors."""

    exit_code = 5


class InputError(IGSTQAError):
    """Unreadable or malformed input (images, manifests, distortion specs)."""

    exit_code = 2


class FeatureMismatchError(IGSTQAError):
    """Reference and synthesized feature sets are not comparable."""

    exit_code = 3

    def __init__(self, msg="feature set mismatch"):
        super().__init__(msg)


class PayloadError(InputError):
    """A reduced-reference payload could not be decoded."""


class InsufficientDataError(IGSTQAError):
    exit_code = 4

    def __init__(self, msg="insufficient data"):
        super().__init__(msg)


class DegenerateInputError(IGSTQAError):
    """Statistic undefined for the given data (constant columns and the like)."""

    exit_code = 5
