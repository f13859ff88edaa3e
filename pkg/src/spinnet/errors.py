"""Error hierarchy. Each class carries the CLI exit code for its category."""


class SpinNetError(Exception):
    category = "error"
    exit_code = 1


class ParseError(SpinNetError, ValueError):
    category = "parse"
    exit_code = 2


class CapacityError(SpinNetError):
    category = "capacity"
    exit_code = 3


class DegenerateError(SpinNetError, ValueError):
    category = "degenerate"
    exit_code = 4


class NotFoundError(SpinNetError):
    category = "not-found"
    exit_code = 5


class InvalidCurveError(SpinNetError, ValueError):
    category = "parse"
    exit_code = 2


class UndefinedNormalizationError(DegenerateError):
    pass


class UnsupportedError(DegenerateError):
    pass
