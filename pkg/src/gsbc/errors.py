"""Exception hierarchy shared by every module of the package."""


class GSBCError(Exception):
    """Base class. ``at_index`` is set when a failure happened while
    evaluating one coordinate of a window."""

    at_index = None


class DomainError(GSBCError, ValueError):
    pass


class ArithmeticRangeError(GSBCError, OverflowError):
    pass


class ParseError(GSBCError, ValueError):
    pass


class ScaleError(GSBCError):
    """A desk-scale enumeration guard was violated."""


class Undecided(GSBCError):
    """Language membership could not be settled within the search budget."""


class NotDecidable(GSBCError):
    """The operation needs a finite description but got a generator-backed config."""


class NoMatch(GSBCError):
    def __init__(self, probed, message=None):
        self.probed = tuple(sorted(probed))
        super().__init__(message or f"no cylinder matched (probed {list(self.probed)})")


class BudgetExceeded(GSBCError):
    def __init__(self, trace, budget):
        self.trace = tuple(trace)
        self.budget = budget
        super().__init__(f"probe budget {budget} exceeded (trace starts {list(self.trace[:8])})")


class RuleIncomplete(GSBCError):
    def __init__(self, pattern):
        self.pattern = pattern
        super().__init__(f"local rule has no entry for {pattern}")


class PartitionTooDeep(GSBCError):
    pass
