"""Exception hierarchy shared by every dimlab module."""


class DimlabError(Exception):
    """Base class for all library errors."""


class CapExceeded(DimlabError):
    """An input is larger than the enumeration cap of an exact routine."""


class ArityMismatch(DimlabError):
    """Two objects live over different instance spaces."""


# alias kept for callers of core.difference_set
MismatchedArity = ArityMismatch


class InvalidClassFile(DimlabError):
    pass


class EmptyClass(DimlabError):
    pass


class DuplicateConcept(DimlabError):
    pass


class ContradictorySamples(DimlabError):
    pass


class NotAMember(DimlabError):
    pass


class EmptyLevelSet(DimlabError):
    """The requested side X^b of a Boolean function has no inputs."""


class InvalidAnchor(DimlabError):
    pass


class InvalidK(DimlabError):
    pass


class DegenerateK(DimlabError):
    pass


class BudgetExceeded(DimlabError):
    """Raised by budgeted solvers; carries the best proven lower bound."""

    def __init__(self, lower_bound, budget):
        super().__init__(f"optimum exceeds budget {budget} (lower bound {lower_bound})")
        self.lower_bound = lower_bound
        self.budget = budget
