"""Exception hierarchy shared by all netdist modules."""


class NetdistError(Exception):
    pass


class DimensionError(NetdistError, ValueError):
    pass


class CoverageError(NetdistError, ValueError):
    """A relation fails to cover every row or every column."""


class GuardError(NetdistError):
    """An exhaustive computation would exceed its configured size guard."""

    def __init__(self, message, guard_name=None, limit=None, requested=None):
        super().__init__(message)
        self.guard_name = guard_name
        self.limit = limit
        self.requested = requested


class CardinalityError(NetdistError, ValueError):
    pass


class ParameterError(NetdistError, ValueError):
    pass


class EmptySetError(NetdistError, ValueError):
    pass


class MetricError(NetdistError, ValueError):
    pass


class DegenerateInputError(NetdistError, ValueError):
    pass


class SimulationError(NetdistError, RuntimeError):
    pass
