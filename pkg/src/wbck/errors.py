"""Exception hierarchy for the workbench."""


class WbckError(Exception):
    pass


class TableFormatError(WbckError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class OrderError(WbckError):
    """The relation x <= y :<=> x - y = 0 is not a partial order with least 0."""


class NotReflexive(OrderError):
    def __init__(self, x):
        self.x = x
        super().__init__(f"not reflexive at {x}")


class NotAntisymmetric(OrderError):
    def __init__(self, x, y):
        self.x, self.y = x, y
        super().__init__(f"not antisymmetric at ({x}, {y})")


class NotTransitive(OrderError):
    def __init__(self, x, y, z):
        self.x, self.y, self.z = x, y, z
        super().__init__(f"not transitive at ({x}, {y}, {z})")


class NoLeastZero(OrderError):
    def __init__(self, x):
        self.x = x
        super().__init__(f"0 is not below {x}")


class NotWbck(WbckError):
    pass


class NotMeetSemilattice(WbckError):
    pass


class NotLattice(WbckError):
    pass


class LawSyntaxError(WbckError):
    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} at position {position}")


class UnknownName(WbckError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class GstarViolation(WbckError):
    def __init__(self, p, x, reason=""):
        self.p, self.x = p, x
        super().__init__(f"section {p}: not a g*-complementation at {x}"
                         + (f" ({reason})" if reason else ""))


class ReconstructionFailure(WbckError):
    def __init__(self, pairs):
        self.pairs = list(pairs)
        shown = ", ".join(f"({x},{y})" for x, y in self.pairs)
        super().__init__(f"no minimum candidate for pairs {shown}")


class InternalConsistencyError(WbckError, AssertionError):
    """Two independent routes to the same fact disagreed."""


class BudgetExhausted(WbckError):
    pass
