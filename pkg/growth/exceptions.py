"""Exceptions raised by the growth model."""
from typing import Optional


class GrowthError(Exception):
    """
    Base class for errors raised while solving or simulating the economy.

    Attributes:
        t: Simulation time (years) at which the error occurred, if known.
    """

    def __init__(self, message: str, t: Optional[float] = None) -> None:
        super().__init__(message)
        self.t = t

    def at_time(self, t: float) -> 'GrowthError':
        """Annotate the error with the simulation time it occurred at."""
        self.t = t
        self.add_note(f"while simulating t={t!r}")
        return self


class InvalidParameter(GrowthError, ValueError):
    """A domain value was constructed with parameters outside its range."""


class InfiniteCostWithCompute(GrowthError):
    """Compute was assigned to a task whose automation cost is infinite."""


class UndefinedMarginal(GrowthError):
    """A marginal product diverges at the requested input bundle."""


class DegenerateEconomy(GrowthError):
    """The economy has neither labor nor compute."""


class InfeasibleSpec(GrowthError):
    """Output is identically zero for every feasible allocation."""


class NonPositiveOutput(GrowthError):
    """A growth rate was requested over a trajectory with zero output."""


class UnknownParameter(GrowthError, KeyError):
    """A sweep parameter path does not name a numeric scenario field."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ''


class NumericOverflow(GrowthError):
    """A level on a time path leaves the floating-point range."""
