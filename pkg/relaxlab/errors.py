from typing import Any, Optional, Sequence


class RelaxLabError(Exception):
    """Base class for all errors raised by relaxlab"""


class InvalidParameterError(RelaxLabError, ValueError):
    """A parameter lies outside its documented range"""


class InvalidGraphError(RelaxLabError, ValueError):
    """A digraph, weight assignment or instance breaks one of its invariants"""


class NegativeCycleError(RelaxLabError):
    """A negative cycle is reachable from the source vertex"""

    def __init__(self, cycle: Sequence[int]) -> None:
        super().__init__(
            "negative cycle reachable from source: {}".format(list(cycle))
        )
        self.cycle = list(cycle)


class ScheduleMismatchError(RelaxLabError, ValueError):
    """A relaxation schedule was built for a different digraph"""


class DistanceOverflowError(RelaxLabError, OverflowError):
    """Distance arithmetic left the signed 64-bit range"""


class ScheduleNotCorrectError(RelaxLabError):
    """The schedule leaves some vertex incorrect on the witness instance"""

    def __init__(self, path: Sequence[int], instance: Any) -> None:
        super().__init__(
            "schedule never corrects the zero-weight path {}".format(
                list(path)
            )
        )
        self.path = list(path)
        self.instance = instance


class MalformedRequestError(RelaxLabError, ValueError):
    """A routing request repeats an input or output, or is out of range"""


class RoutingError(RelaxLabError):
    """Routing failed on a network that should be rearrangeable"""

    def __init__(self, message: str, request: Optional[Any] = None) -> None:
        super().__init__(message)
        self.request = request


class InfeasibleBudgetError(RelaxLabError, ValueError):
    """No hard-graph capacity fits the requested vertex and edge budgets"""


class FormatError(RelaxLabError, ValueError):
    """A JSON document does not describe a valid object"""


class ConfigError(RelaxLabError, ValueError):
    """An experiment configuration is invalid"""


class TrialError(RelaxLabError):
    """An experiment trial failed"""

    def __init__(self, trial_seed: int, cause: BaseException) -> None:
        super().__init__("trial seed {}: {}".format(trial_seed, cause))
        self.trial_seed = trial_seed
