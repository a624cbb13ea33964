"""Aggregate production over the cognitive and physical aggregates."""
import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple, Union, overload

import numpy as np
from django.db import models
from numpy.typing import NDArray

from growth.exceptions import InvalidParameter, UndefinedMarginal
from .automation import TaskClass


class ProductionFamily(models.TextChoices):
    """Supported constant-returns aggregators."""
    COBB_DOUGLAS = 'cobb-douglas', 'Cobb-Douglas'
    CES = 'ces', 'CES'


@dataclass(frozen=True)
class ProductionSpec:
    """
    Y = A * F(x_c, x_p) with F Cobb-Douglas or CES and weights (1 - beta, beta).

    Attributes:
        family: Aggregator family.
        beta: Weight on the physical aggregate, 0 < beta < 1.
        rho: CES curvature (rho < 1, rho != 0); None for Cobb-Douglas.
        hicks_neutral: Level of Hicks-neutral productivity A.
        labor_augmenting: Level of labor-augmenting productivity A^L.
    """
    family: ProductionFamily
    beta: float
    rho: Optional[float] = None
    hicks_neutral: float = 1.0
    labor_augmenting: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 < self.beta < 1.0:
            raise InvalidParameter(f"beta must lie in (0, 1), got {self.beta!r}.")
        if self.family == ProductionFamily.CES:
            if self.rho is None or not math.isfinite(self.rho):
                raise InvalidParameter("CES production requires a finite rho.")
            if self.rho >= 1.0:
                raise InvalidParameter(f"CES rho must be < 1, got {self.rho!r}.")
            if self.rho == 0.0:
                raise InvalidParameter("rho = 0 is Cobb-Douglas; use the Cobb-Douglas family.")
        elif self.rho is not None:
            raise InvalidParameter("Cobb-Douglas production takes no rho.")
        if not (math.isfinite(self.hicks_neutral) and self.hicks_neutral > 0):
            raise InvalidParameter(f"Hicks-neutral productivity must be > 0, got {self.hicks_neutral!r}.")
        if not (math.isfinite(self.labor_augmenting) and self.labor_augmenting > 0):
            raise InvalidParameter(
                f"Labor-augmenting productivity must be > 0, got {self.labor_augmenting!r}."
            )

    @classmethod
    def cobb_douglas(cls, beta: float, hicks_neutral: float = 1.0,
                     labor_augmenting: float = 1.0) -> 'ProductionSpec':
        return cls(ProductionFamily.COBB_DOUGLAS, beta, None, hicks_neutral, labor_augmenting)

    @classmethod
    def ces(cls, beta: float, rho: float, hicks_neutral: float = 1.0,
            labor_augmenting: float = 1.0) -> 'ProductionSpec':
        return cls(ProductionFamily.CES, beta, rho, hicks_neutral, labor_augmenting)

    @property
    def curvature(self) -> float:
        """rho, with Cobb-Douglas as its rho = 0 member."""
        return 0.0 if self.rho is None else self.rho

    @property
    def substitution_elasticity(self) -> float:
        """sigma = 1 / (1 - rho)."""
        return 1.0 / (1.0 - self.curvature)

    def weight(self, task_class: TaskClass) -> float:
        """Distribution weight of an aggregate: 1 - beta cognitive, beta physical."""
        if task_class is TaskClass.COGNITIVE:
            return 1.0 - self.beta
        return self.beta

    def with_levels(self, hicks_neutral: float, labor_augmenting: float) -> 'ProductionSpec':
        """Same technology at different productivity levels."""
        return replace(self, hicks_neutral=hicks_neutral, labor_augmenting=labor_augmenting)


FloatArray = NDArray[np.float64]


@overload
def aggregate_output(x_cognitive: float, x_physical: float, spec: ProductionSpec) -> float: ...


@overload
def aggregate_output(x_cognitive: FloatArray, x_physical: FloatArray,
                     spec: ProductionSpec) -> FloatArray: ...


def aggregate_output(
    x_cognitive: Union[float, FloatArray],
    x_physical: Union[float, FloatArray],
    spec: ProductionSpec,
) -> Union[float, FloatArray]:
    """
    Output per year from the two aggregates.

    Accepts scalars or equally shaped arrays (the brute-force oracle evaluates
    whole grids at once). Zero inputs give zero output under Cobb-Douglas and
    under complementary CES; substitutable CES stays positive.

    Raises:
        InvalidParameter: If any input is negative.
    """
    x_c = np.asarray(x_cognitive, dtype=np.float64)
    x_p = np.asarray(x_physical, dtype=np.float64)
    if np.any(x_c < 0) or np.any(x_p < 0):
        raise InvalidParameter("Aggregate quantities must be nonnegative.")

    beta = spec.beta
    with np.errstate(divide='ignore', over='ignore', invalid='ignore'):
        if spec.family == ProductionFamily.COBB_DOUGLAS:
            y = spec.hicks_neutral * np.power(x_c, 1.0 - beta) * np.power(x_p, beta)
        else:
            rho = spec.curvature
            inner = (1.0 - beta) * np.power(x_c, rho) + beta * np.power(x_p, rho)
            # rho < 0: a zero input makes inner infinite and inf**(1/rho) == 0
            y = spec.hicks_neutral * np.power(inner, 1.0 / rho)

    if y.ndim == 0:
        return float(y)
    return y


def marginal_products(x_cognitive: float, x_physical: float,
                      spec: ProductionSpec) -> Tuple[float, float]:
    """
    Partial derivatives of output with respect to each aggregate.

    Both partials are written as share * Y / x so that Euler's identity
    mp_c * x_c + mp_p * x_p = Y holds to rounding.

    Returns:
        (mp_cognitive, mp_physical)

    Raises:
        UndefinedMarginal: If a partial diverges at the requested point.
    """
    if x_cognitive < 0 or x_physical < 0:
        raise InvalidParameter("Aggregate quantities must be nonnegative.")
    beta = spec.beta

    if spec.family == ProductionFamily.COBB_DOUGLAS:
        if x_cognitive == 0 or x_physical == 0:
            raise UndefinedMarginal(
                "Cobb-Douglas marginal product diverges at a zero input "
                f"(x_c={x_cognitive!r}, x_p={x_physical!r})."
            )
        y = aggregate_output(x_cognitive, x_physical, spec)
        return (1.0 - beta) * y / x_cognitive, beta * y / x_physical

    rho = spec.curvature
    if x_cognitive == 0 or x_physical == 0:
        if rho > 0 or (x_cognitive == 0 and x_physical == 0):
            raise UndefinedMarginal(
                f"CES marginal product diverges at (x_c={x_cognitive!r}, x_p={x_physical!r})."
            )
        # Complements: the scarce input's partial tends to A * w**(1/rho), the other to 0.
        if x_cognitive == 0:
            return spec.hicks_neutral * (1.0 - beta) ** (1.0 / rho), 0.0
        return 0.0, spec.hicks_neutral * beta ** (1.0 / rho)

    share_p = ces_weight_share(x_cognitive, x_physical, beta, rho)
    y = aggregate_output(x_cognitive, x_physical, spec)
    return (1.0 - share_p) * y / x_cognitive, share_p * y / x_physical


def ces_weight_share(x_cognitive: float, x_physical: float, beta: float, rho: float) -> float:
    """
    Physical aggregate's share of income, beta x_p^rho / ((1-beta) x_c^rho + beta x_p^rho).

    Evaluated through the log ratio so that very unequal inputs neither
    overflow nor lose the smaller term.
    """
    log_ratio = rho * (math.log(x_cognitive) - math.log(x_physical))
    # share = 1 / (1 + ((1-beta)/beta) * (x_c/x_p)**rho)
    exponent = math.log((1.0 - beta) / beta) + log_ratio
    if exponent > 700:
        return math.exp(-exponent)
    return 1.0 / (1.0 + math.exp(exponent))


def marginal_rate(spec: ProductionSpec, primary: TaskClass,
                  x_primary: float, x_secondary: float) -> float:
    """
    Marginal rate of substitution mp_primary / mp_secondary.

    For both families this is (w_k / w_o) * (x_o / x_k) ** (1 - rho), which
    stays defined at zero inputs: infinity when the primary aggregate is
    empty and zero when the secondary one is.
    """
    if x_primary == 0 and x_secondary == 0:
        raise UndefinedMarginal("Marginal rate is undefined with both aggregates empty.")
    if x_primary == 0:
        return math.inf
    if x_secondary == 0:
        return 0.0
    weight_ratio = spec.weight(primary) / spec.weight(primary.other)
    exponent = 1.0 - spec.curvature
    return weight_ratio * math.exp(exponent * (math.log(x_secondary) - math.log(x_primary)))
