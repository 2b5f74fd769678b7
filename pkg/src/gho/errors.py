"""Exception hierarchy shared by all gho modules."""


class GHOError(Exception):
    """Base class for every error raised by the package."""


class InvalidParam(GHOError, ValueError):
    pass


class MissingParam(InvalidParam):
    pass


class NonPositiveMass(GHOError, ValueError):
    def __init__(self, x, value=None):
        self.x = float(x)
        self.value = value
        msg = f"mass is not positive at x={self.x!r}"
        if value is not None:
            msg += f" (m={value!r})"
        super().__init__(msg)


class SingularDomain(GHOError, ValueError):
    pass


class OutOfDomain(GHOError, ValueError):
    pass


class QuadratureFailure(GHOError, ArithmeticError):
    pass


class DerivativeFailure(GHOError, ArithmeticError):
    pass


class DegreeTooLarge(GHOError, ValueError):
    pass


class BoundedRangeUnsupported(GHOError, ValueError):
    pass


class GridTooCoarse(GHOError, ValueError):
    pass


class ConvergenceFailure(GHOError, ArithmeticError):
    pass


class AmplitudeTooLarge(GHOError, ValueError):
    pass


class InadmissibleRange(GHOError, ValueError):
    pass
