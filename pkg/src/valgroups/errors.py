"""Exception hierarchy shared by every module.

Three families matter to callers: parse failures (bad input text), domain
failures (the requested object does not exist), and precision failures
(the answer is not determined by the stored t-adic data; retrying at a
higher working precision usually helps).
"""


class ValGroupsError(Exception):
    """Base class for all package errors."""


class ParseError(ValGroupsError):
    """Syntax error in a literal or formula, with a byte offset."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class PrecisionLoss(ValGroupsError):
    """The stored precision does not determine the requested quantity."""


class DomainError(ValGroupsError):
    """Base class for "the object you asked about does not exist" errors."""


class DivisionByZero(DomainError):
    pass


class NotIntegral(DomainError):
    pass


class ZeroArgument(DomainError):
    pass


class NoConvergence(DomainError):
    pass


class Unsupported(DomainError):
    pass


class NotElliptic(DomainError):
    pass


class CharNotSupported(DomainError):
    pass


class NotSmooth(DomainError):
    pass


class NotInE0(DomainError):
    pass


class NotDivisible(DomainError):
    pass


class WrongShape(DomainError):
    pass


class BadParameter(DomainError):
    pass


class NotInKernel(DomainError):
    pass


class NormViolation(DomainError):
    pass


class NotInDomain(DomainError):
    pass
