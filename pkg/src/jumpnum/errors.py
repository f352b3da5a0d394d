"""Exception types raised by jumpnum."""


class JumpnumError(Exception):
    """Base class for every error raised by this package."""


# constellation input

class MalformedProximity(JumpnumError, ValueError):
    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class NotATree(JumpnumError, ValueError):
    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class EmptySet(JumpnumError, ValueError):
    pass


# divisors

class DimensionMismatch(JumpnumError, ValueError):
    pass


class BasisMismatch(JumpnumError, ValueError):
    pass


class NonTermination(JumpnumError, RuntimeError):
    """Unloading exceeded its iteration budget; closures always exist, so this is a bug."""


class NotAntinef(JumpnumError, ValueError):
    pass


# ideals

class ZeroIdeal(JumpnumError, ValueError):
    pass


class NonMinimalResolution(JumpnumError, ValueError):
    def __init__(self, message, vertices=()):
        super().__init__(message)
        self.vertices = tuple(vertices)


class NonPositiveParameter(JumpnumError, ValueError):
    pass


# jumping numbers and contributions

class InfeasibleSplit(JumpnumError, RuntimeError):
    pass


class InvalidCertificate(JumpnumError, ValueError):
    pass


class NotAReesVertex(JumpnumError, ValueError):
    pass


class HypothesisFailed(JumpnumError, ValueError):
    pass


class MismatchedXi(JumpnumError, ValueError):
    pass


class SubsetBudgetExceeded(JumpnumError, ValueError):
    pass


class TooSmall(JumpnumError, ValueError):
    pass


class Inconsistency(JumpnumError, RuntimeError):
    """The combinatorial criterion and the closure oracle disagree."""


class ParseError(JumpnumError, ValueError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column
