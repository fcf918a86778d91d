class LabError(Exception):
    """Base class for every error raised on invalid lab input."""


class GridError(LabError, ValueError):
    """Grid construction or grid compatibility failure."""


class ParameterError(LabError, ValueError):
    """Exponent, index or range outside the admissible set."""


class AliasingError(LabError):
    """Input frequencies would wrap around the periodic grid."""


class BudgetError(LabError):
    """A direct computation would exceed its configured term budget."""


class ResolutionError(LabError):
    """The grid cannot resolve the structure a construction needs."""


class ScenarioError(LabError):
    """Unknown scenario or incomplete scenario parameters."""
