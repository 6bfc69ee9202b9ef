class WassignError(Exception):
    pass


class DegenerateError(WassignError, ValueError):
    pass


class CoincidentCirclesError(DegenerateError):
    pass


class PreconditionError(WassignError, ValueError):
    pass


class OracleScaleError(WassignError, ValueError):
    pass


class NonMonotoneOracleError(WassignError, RuntimeError):
    pass


class InstanceFormatError(WassignError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
