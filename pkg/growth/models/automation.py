"""Task classes and the compute cost of automating them."""
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple, Union

from django.db import models

from growth.exceptions import InvalidParameter


INFINITE_TOKEN = 'inf'


class TaskClass(models.TextChoices):
    """The two disjoint halves of the task space."""
    COGNITIVE = 'cognitive', 'Cognitive'
    PHYSICAL = 'physical', 'Physical'

    @property
    def other(self) -> 'TaskClass':
        """The complementary task class."""
        if self is TaskClass.COGNITIVE:
            return TaskClass.PHYSICAL
        return TaskClass.COGNITIVE


@dataclass(frozen=True)
class AutomationCost:
    """
    FLOP per year needed to replicate one human-hour per year of work.

    A cost is either a strictly positive finite number or the distinguished
    infinite cost. The infinite variant stores no float, so it can never leak
    into arithmetic: callers go through ``flops`` or ``compute_equivalent``.
    """
    _flops: Optional[float] = None

    def __post_init__(self) -> None:
        if self._flops is None:
            return
        if isinstance(self._flops, bool) or not math.isfinite(self._flops) or self._flops <= 0:
            raise InvalidParameter(
                f"Finite automation cost must be a positive real, got {self._flops!r}."
            )

    @classmethod
    def finite(cls, flops: float) -> 'AutomationCost':
        """Cost of ``flops`` FLOP/yr per human-hour/yr equivalent."""
        return cls(float(flops))

    @classmethod
    def infinite(cls) -> 'AutomationCost':
        """A task compute can never perform."""
        return cls(None)

    @classmethod
    def parse(cls, value: Union[str, float, int]) -> 'AutomationCost':
        """
        Parse a cost from a scenario document value.

        Args:
            value: A positive number, ``float('inf')`` or the token ``"inf"``.

        Raises:
            InvalidParameter: If the value is neither.
        """
        if isinstance(value, str):
            if value.strip().lower() in (INFINITE_TOKEN, 'infinite', 'infinity'):
                return cls.infinite()
            raise InvalidParameter(f"Expected a number or {INFINITE_TOKEN!r}, got {value!r}.")
        if isinstance(value, bool):
            raise InvalidParameter(f"Expected a number or {INFINITE_TOKEN!r}, got {value!r}.")
        if math.isinf(value) and value > 0:
            return cls.infinite()
        return cls.finite(value)

    @property
    def is_infinite(self) -> bool:
        return self._flops is None

    @property
    def flops(self) -> float:
        """
        The finite cost.

        Raises:
            InvalidParameter: If the cost is infinite.
        """
        if self._flops is None:
            raise InvalidParameter("An infinite automation cost has no finite value.")
        return self._flops

    def compute_equivalent(self, compute: float) -> float:
        """Human-hour equivalents produced by ``compute`` FLOP/yr (0 when infinite)."""
        if self._flops is None:
            return 0.0
        return compute / self._flops

    def __str__(self) -> str:
        if self._flops is None:
            return INFINITE_TOKEN
        return repr(self._flops)


@dataclass(frozen=True)
class TaskSpec:
    """A representative task of one class and its automation cost."""
    id: str
    task_class: TaskClass
    cost: AutomationCost

    def __post_init__(self) -> None:
        if not self.id or not self.id.strip():
            raise InvalidParameter("Task id must be a non-empty string.")


@dataclass(frozen=True)
class TaskPair:
    """
    The two-task economy: exactly one cognitive and one physical task.

    Raises:
        InvalidParameter: If the classes are mislabelled or the ids collide.
    """
    cognitive: TaskSpec
    physical: TaskSpec

    def __post_init__(self) -> None:
        if self.cognitive.task_class is not TaskClass.COGNITIVE:
            raise InvalidParameter(f"Task {self.cognitive.id!r} is not cognitive.")
        if self.physical.task_class is not TaskClass.PHYSICAL:
            raise InvalidParameter(f"Task {self.physical.id!r} is not physical.")
        if self.cognitive.id == self.physical.id:
            raise InvalidParameter(f"Task ids must be unique, got {self.cognitive.id!r} twice.")

    @classmethod
    def from_costs(cls, alpha_c: AutomationCost, alpha_p: AutomationCost) -> 'TaskPair':
        """Build the pair with the default ids ``cognitive`` and ``physical``."""
        return cls(
            cognitive=TaskSpec('cognitive', TaskClass.COGNITIVE, alpha_c),
            physical=TaskSpec('physical', TaskClass.PHYSICAL, alpha_p),
        )

    def task(self, task_class: TaskClass) -> TaskSpec:
        if task_class is TaskClass.COGNITIVE:
            return self.cognitive
        return self.physical

    def cost(self, task_class: TaskClass) -> AutomationCost:
        return self.task(task_class).cost

    def compute_favoured(self) -> Tuple[TaskClass, TaskClass]:
        """
        Order the classes by compute's comparative advantage.

        Returns:
            (primary, secondary): compute is cheapest relative to labor in the
            primary class. Ties and the all-infinite case favour cognitive.
        """
        alpha_c, alpha_p = self.cognitive.cost, self.physical.cost
        if alpha_p.is_infinite or (not alpha_c.is_infinite and alpha_c.flops <= alpha_p.flops):
            return TaskClass.COGNITIVE, TaskClass.PHYSICAL
        return TaskClass.PHYSICAL, TaskClass.COGNITIVE

    def __iter__(self) -> Iterator[TaskSpec]:
        yield self.cognitive
        yield self.physical
