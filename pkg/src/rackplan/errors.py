"""Exception types shared across the package."""

from __future__ import annotations


class RackPlanError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(RackPlanError):
    """A model, state, or scenario invariant is violated."""


class UnknownObjectError(RackPlanError):
    """An object id does not name a (placed) object in the state."""


class UnknownClassError(RackPlanError):
    """A class name has no definition in the given catalog."""


class RegionTooSmallError(RackPlanError):
    """A goal region cannot fit the requested product groups."""


class UnresolvedGoalError(RackPlanError):
    """A relational goal was used where a resolved goal is required."""


class EmptyStateError(RackPlanError):
    """The heuristic is undefined for an object-free state with a non-empty goal."""


class PreconditionViolated(RackPlanError):
    """An action's precondition does not hold in the given state."""

    def __init__(self, action, reason: str):
        self.action = action
        self.reason = reason
        super().__init__(f"{action.describe()}: {reason}")


class NoSolutionError(RackPlanError):
    """The search found no plan (either exhausted or cut off by limits)."""

    def __init__(self, message: str, truncated: bool = False):
        self.truncated = truncated
        super().__init__(message)


class DesignatorError(RackPlanError):
    """Base class for designator parsing and resolution errors."""


class DesignatorSyntaxError(DesignatorError):
    """Malformed designator or scenario text."""

    def __init__(self, message: str, line: int | None = None,
                 column: int | None = None, expected: tuple[str, ...] = ()):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        loc = f" at {line}:{column}" if line is not None else ""
        exp = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message}{loc}{exp}")


class UnknownKeyError(DesignatorError):
    """A designator property key outside the supported vocabulary."""

    def __init__(self, key: str, line: int | None = None, column: int | None = None):
        self.key = key
        self.line = line
        self.column = column
        loc = f" at {line}:{column}" if line is not None else ""
        super().__init__(f"unknown designator key '{key}'{loc}")


class NoMatchError(DesignatorError):
    """A designator matched nothing in the given state."""


class NotAnObjectDesignatorError(DesignatorError):
    """An operation requiring an object designator got a different kind."""


class NotALocationDesignatorError(DesignatorError):
    """An operation requiring a location designator got a different kind."""


class UnresolvableInnerObjectError(DesignatorError):
    """A nested object designator inside a location constraint matched nothing."""


class UnsatisfiableRelationsError(DesignatorError):
    """A relational goal admits no layout satisfying all relations."""

    def __init__(self, message: str, pair: tuple[str, str] | None = None):
        self.pair = pair
        if pair is not None:
            message = f"{message}: {pair[0]} vs {pair[1]}"
        super().__init__(message)
