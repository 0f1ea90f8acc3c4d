"""Exception hierarchy shared by all geonium modules."""


class GeoniumError(Exception):
    """Base class for every error raised by this package."""


class NonConfiningPotential(GeoniumError, ValueError):
    pass


class DegenerateModes(GeoniumError, ValueError):
    pass


class UnstableTrap(GeoniumError, ValueError):
    pass


class StepSizeUnderflow(GeoniumError, ArithmeticError):
    pass


class QuadratureNotConverged(GeoniumError, ArithmeticError):
    pass


class CoefficientTableMissing(GeoniumError, KeyError):
    pass


class WrongProducer(GeoniumError, ValueError):
    pass


class UnresolvedPowerModel(GeoniumError, ValueError):
    pass


class OutOfCavity(GeoniumError, ValueError):
    pass


class ConfigError(GeoniumError, ValueError):
    """Bad run configuration; ``where`` names the offending key or line."""

    def __init__(self, message, where=None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)
