"""Exception hierarchy shared by every module."""


class HahnError(Exception):
    """Base class for all library errors."""


class BoundExceeded(HahnError):
    """A configured search or size bound was hit before an answer was certain."""


class NotInGroup(HahnError, ValueError):
    pass


class UnrepresentableCut(HahnError):
    pass


class NonPositiveCut(HahnError, ValueError):
    pass


class DivisionByZero(HahnError, ZeroDivisionError):
    pass


class ZeroDivisor(DivisionByZero):
    """Inverting the zero series."""


class RootDepthExceeded(HahnError):
    pass


class HorizonExceeded(BoundExceeded):
    """The first `horizon` grid points were all zero."""


class NotPseudoCauchy(HahnError):
    pass


class NotSimpleRoot(HahnError):
    pass


class ParseError(HahnError, ValueError):
    def __init__(self, message, text="", pos=0, expected=()):
        self.text = text
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.expected = tuple(sorted(set(expected)))
        where = f"line {self.line}, col {self.col}"
        if self.expected:
            message = f"{message} (expected one of: {', '.join(self.expected)})"
        super().__init__(f"{where}: {message}")
