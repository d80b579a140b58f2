"""Exception hierarchy shared by all twistlab modules."""


class TwistlabError(Exception):
    """Base class for every error raised by twistlab."""


class DivergentLimit(TwistlabError):
    pass


class NonPolynomialLimit(TwistlabError):
    pass


class NotNilpotent(TwistlabError):
    pass


class NotUnipotent(TwistlabError):
    pass


class DimensionMismatch(TwistlabError):
    pass


class SupportOverlap(TwistlabError):
    pass


class MapInconsistency(TwistlabError):
    """A defining relation failed on a constructed representation."""


class NoImplementer(TwistlabError):
    pass


class CoassociatorMismatch(TwistlabError):
    pass


class GaugeMismatch(TwistlabError):
    pass


class SingularDiagonal(TwistlabError):
    pass


class LimitMismatch(TwistlabError):
    pass


class ConfigError(TwistlabError):
    pass
