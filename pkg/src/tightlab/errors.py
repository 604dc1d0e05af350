"""Exception hierarchy shared by every module."""


class TightlabError(Exception):
    pass


class FieldMismatch(TightlabError):
    pass


class DivisionByZero(TightlabError, ZeroDivisionError):
    pass


class AlgebraMismatch(TightlabError):
    pass


class ZeroElement(TightlabError):
    pass


class NotInvertible(TightlabError):
    """Raised by :func:`tightlab.algebra.invert`.

    ``certificate`` is a nonzero element ``w`` with ``u*w == 0`` or ``w*u == 0``.
    """

    def __init__(self, element, certificate):
        self.element = element
        self.certificate = certificate
        super().__init__(f"{element} is a zero divisor; certificate {certificate}")


class NotASubring(TightlabError):
    pass


class NotFree(TightlabError):
    pass


class IndexOutOfRange(TightlabError, IndexError):
    pass


class NotLeftSubmodule(TightlabError):
    pass


class DimensionMismatch(TightlabError):
    pass


class ShapeMismatch(TightlabError):
    pass


class NotOneTight(TightlabError):
    pass


class NotDivisionCertified(TightlabError):
    """The right-acting ring carries a zero-divisor certificate."""


class ParseError(TightlabError):
    pass


class ValidationError(TightlabError):
    pass


class UnknownCommand(TightlabError):
    pass


class UnknownObject(TightlabError):
    pass
