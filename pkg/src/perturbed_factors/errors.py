from __future__ import annotations


class FactorsError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(FactorsError, ValueError):
    """An argument is outside the domain of the operation."""


class GraphFormatError(ParameterError):
    """A serialized graph is malformed."""


class ConfigError(FactorsError, ValueError):
    """An experiment knob has an invalid value."""


class SizeError(FactorsError):
    """The instance is larger than the exact search supports."""

    def __init__(self, what: str, size: int, limit: int) -> None:
        super().__init__(f"{what} has size {size}, exact search is capped at {limit}")
        self.size = size
        self.limit = limit


class ExecutionError(FactorsError):
    """Replaying a move plan drove a part size negative."""

    def __init__(self, message: str, move_index: int) -> None:
        super().__init__(f"move {move_index}: {message}")
        self.move_index = move_index


class BracketError(FactorsError):
    """The probe grid does not bracket the target probability."""

    def __init__(self, target: float, low_prob: float, high_prob: float) -> None:
        super().__init__(
            f"success probability does not bracket {target}: "
            f"p_low end gives {low_prob:.3f}, p_high end gives {high_prob:.3f}"
        )
        self.target = target
        self.low_prob = low_prob
        self.high_prob = high_prob


class FitError(FactorsError):
    """Not enough usable points for a power-law fit."""


class ValidationError(FactorsError):
    """A certificate failed one or more checks."""

    def __init__(self, subject: str, problems: list[str]) -> None:
        lines = "\n".join(f"  - {p}" for p in problems)
        super().__init__(f"Unable to certify {subject} due to previous errors:\n{lines}")
        self.problems = problems
