"""Exception hierarchy shared by every module of the workbench."""


class LlponError(Exception):
    """Base class for all workbench errors."""


class MalformedSequence(LlponError, ValueError):
    """An opaque sequence produced a non-bit or increased somewhere."""


class RequiresClosedForm(LlponError, TypeError):
    """A decision procedure was handed an opaque sequence."""


class InvalidArity(LlponError, ValueError):
    pass


class ArityMismatch(LlponError, ValueError):
    pass


class ClauseIndexOutOfRange(LlponError, IndexError):
    pass


class IncompleteAssignment(LlponError, KeyError):
    __str__ = Exception.__str__


class SearchExhausted(LlponError):
    """A bounded membership search found no index."""


class OverlapBoundViolated(LlponError):
    """More than ``k`` members were forced into a witness set."""


class WitnessCountViolated(LlponError, ValueError):
    pass


class UnknownSymbol(LlponError, KeyError):
    __str__ = Exception.__str__


class FormulaSyntaxError(LlponError, SyntaxError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NotProven(LlponError):
    pass


class BudgetExhausted(LlponError):
    def __init__(self, argument: int, budget: int):
        super().__init__(f"no algorithm halted on input {argument} within {budget} steps")
        self.argument = argument
        self.budget = budget


class ApplicationUndefined(LlponError):
    """A stream application did not answer within its fuel."""

    def __init__(self, argument: int, fuel: int):
        super().__init__(f"application undefined at {argument} within fuel {fuel}")
        self.argument = argument
        self.fuel = fuel
