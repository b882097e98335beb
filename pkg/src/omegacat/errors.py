"""Exceptions shared across the package."""


class OmegaCatError(Exception):
    pass


class MalformedInput(OmegaCatError):
    """Input that cannot be loaded at all (dangling ids, bad records, schema)."""


class NotComposable(OmegaCatError):
    pass


class DegreeMismatch(OmegaCatError):
    pass


class QuotientNotWellDefined(OmegaCatError):
    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


class SearchLimitExceeded(OmegaCatError):
    pass


class HypothesisNotMet(OmegaCatError):
    pass


class UnsupportedDepth(OmegaCatError):
    pass


class LiftNotFound(OmegaCatError):
    """A base arrow that should be liftable has no preimage."""


class AmbiguousLift(OmegaCatError):
    """A base arrow has several preimages: the forgetful is not faithful."""


class RestrictionMismatch(OmegaCatError):
    pass
