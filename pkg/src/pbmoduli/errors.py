"""Exception hierarchy shared by all modules."""


class ModuliError(Exception):
    """Base class for every error raised by this package."""


class InvalidTau(ModuliError, ValueError):
    pass


class NonConvergence(ModuliError, ArithmeticError):
    pass


class ToleranceFailure(ModuliError, ArithmeticError):
    pass


class DegenerateSamples(ModuliError, ArithmeticError):
    pass


class BadSameDirection(ModuliError, ValueError):
    pass


class NotStable(ModuliError, ValueError):
    pass


class NotBadLocus(ModuliError, ValueError):
    pass


class OnCurveInput(ModuliError, ValueError):
    pass


class InexactDivision(ModuliError, ArithmeticError):
    pass
