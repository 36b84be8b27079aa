from __future__ import annotations

from fractions import Fraction
from typing import TypedDict

from typing_extensions import Unpack

from .errors import ConfigError
from .params import RParams
from .partitioner import PartitionConstants
from .utils import Rational, as_fraction


class ExperimentStateKwargs(TypedDict, total=False):
    seed: int
    threads: int
    out: str | None
    budget: int
    beta: Rational
    gamma: Rational
    c_cap: int | None
    step_limit: int | None
    epsilon: Rational
    gammas: list[Rational] | None
    trials: int
    tolerance: float
    validate_steps: bool


def _fraction_in(name: str, value: Rational, low: Fraction, high: Fraction) -> Fraction:
    try:
        v = as_fraction(value)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"{name} must be a number, got {value!r}") from e
    if not low < v < high:
        raise ConfigError(f"{name} must lie strictly between {low} and {high}, got {v}")
    return v


def _positive(name: str, value: int, allow_zero: bool = False) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < (0 if allow_zero else 1):
        bound = "non-negative" if allow_zero else "positive"
        raise ConfigError(f"{name} must be a {bound} integer, got {value!r}")
    return value


class ExperimentState:
    """
    Dumping ground for the knobs shared by one run: seeds, solver budgets,
    constants of the proof pipeline and Monte Carlo settings.
    """

    def __init__(self, **kwargs: Unpack[ExperimentStateKwargs]) -> None:
        # ------------------------
        # Run settings
        # ------------------------
        self.seed: int = _positive("seed", kwargs.pop("seed", 0), allow_zero=True)
        self.threads: int = _positive("threads", kwargs.pop("threads", 1))
        self.out: str | None = kwargs.pop("out", None)
        self.budget: int = _positive("budget", kwargs.pop("budget", 200_000))

        # ------------------------
        # Proof constants
        # ------------------------
        self.beta: Fraction = _fraction_in("beta", kwargs.pop("beta", Fraction(1, 20)), Fraction(0), Fraction(1, 4))
        self.gamma: Fraction = _fraction_in("gamma", kwargs.pop("gamma", Fraction(1, 20)), Fraction(0), Fraction(1))
        c_cap = kwargs.pop("c_cap", None)
        self.c_cap: int | None = None if c_cap is None else _positive("c_cap", c_cap)
        step_limit = kwargs.pop("step_limit", None)
        self.step_limit: int | None = None if step_limit is None else _positive("step_limit", step_limit)
        self.epsilon: Fraction = _fraction_in(
            "epsilon", kwargs.pop("epsilon", Fraction(1, 20)), Fraction(0), Fraction(1)
        )
        gammas = kwargs.pop("gammas", None)
        self.gammas: list[Fraction] | None = (
            None
            if gammas is None
            else [_fraction_in(f"gammas[{i}]", g, Fraction(0), Fraction(1)) for i, g in enumerate(gammas)]
        )
        self.validate_steps: bool = kwargs.pop("validate_steps", False)

        # ------------------------
        # Monte Carlo
        # ------------------------
        self.trials: int = _positive("trials", kwargs.pop("trials", 200))
        tolerance = kwargs.pop("tolerance", 0.05)
        if not 0 < tolerance < 1:
            raise ConfigError(f"tolerance must lie strictly between 0 and 1, got {tolerance}")
        self.tolerance: float = tolerance

        # Check for stray kwargs
        if kwargs:
            raise TypeError(f"got an unexpected keyword argument '{next(iter(kwargs.keys()))}'")

    def partition_constants(self, params: RParams) -> PartitionConstants:
        """Partitioner constants for ``params``, honouring ``beta`` and ``gammas``."""
        if self.gammas is not None and len(self.gammas) != params.m:
            raise ConfigError(f"gammas needs {params.m} values for m = {params.m}, got {len(self.gammas)}")
        return PartitionConstants.build(params, beta=self.beta, gammas=self.gammas)
