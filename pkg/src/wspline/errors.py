"""Exception types raised across the package."""


class WsplineError(Exception):
    """Base class for every error raised by wspline."""


class EmptyMeasure(WsplineError, ValueError):
    pass


class NonFinite(WsplineError, ValueError):
    pass


class DimensionMismatch(WsplineError, ValueError):
    pass


class ConfigError(WsplineError, ValueError):
    pass


class BadConfig(ConfigError):
    """Invalid dataset generator parameters."""


class SolverFailure(WsplineError, RuntimeError):
    """The transport solver did not reach an optimal feasible vertex."""


class EmptyAfterPrune(WsplineError, ValueError):
    pass


class TooFewPoints(WsplineError, ValueError):
    pass


class TooFewClouds(WsplineError, ValueError):
    pass


class BadInterval(WsplineError, ValueError):
    pass


class BoundaryHoldout(WsplineError, ValueError):
    pass


class ParseError(WsplineError, ValueError):
    pass


class BadDims(WsplineError, ValueError):
    pass
