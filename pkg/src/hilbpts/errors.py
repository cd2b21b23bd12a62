"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command-line frontend:
2 for malformed input or usage, 3 for well-formed input the library
cannot handle.
"""


class HilbptsError(Exception):
    exit_code = 3


class UsageError(HilbptsError):
    exit_code = 2


class ParseError(UsageError):
    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class ContextMismatch(HilbptsError):
    pass


class InvalidArgument(UsageError):
    pass


class NotZeroDimensional(HilbptsError):
    pass


class NonRationalSupport(HilbptsError):
    pass


class NotMonomial(HilbptsError):
    pass


class UnsupportedClass(HilbptsError):
    pass


class UnsupportedRadical(HilbptsError):
    pass


class PointNotOnScheme(HilbptsError):
    pass


class NotPrimary(HilbptsError):
    pass


class NotFirstOrderFlat(HilbptsError):
    pass


class MultiParameter(HilbptsError):
    pass


class SupportNotOrigin(HilbptsError):
    pass


class BaseMismatch(HilbptsError):
    pass
