"""Two-player planning problems: the planner picks theta, the adversary picks chi."""
from __future__ import annotations

from typing import Callable, Optional, Sequence

import numpy as np

from stlplan.autodiff import Scalar
from stlplan.dynamics.exogenous import Box

CostFunction = Callable[[Sequence[Scalar], Sequence[Scalar]], Scalar]


class Problem:
    """min over theta, max over chi in `chi_box`, of J(theta, chi).

    `cost` must be built from the autodiff math helpers so it runs on floats and on
    Vars alike.
    """

    def __init__(self, theta0: Sequence[float], chi_box: Box, theta_box: Optional[Box] = None) -> None:
        self.theta0 = np.asarray(theta0, dtype=float).ravel()
        self.chi_box = chi_box
        self.theta_box = theta_box

    def cost(self, theta: Sequence[Scalar], chi: Sequence[Scalar]) -> Scalar:
        raise NotImplementedError

    def annealed(self) -> Problem:
        """Problem to use after the first outer round; the default is unchanged."""
        return self

    def exact_robustness(self, theta: Sequence[float], chi: Sequence[float]) -> Optional[float]:
        """Exact robustness of the plan under chi, when the problem has one."""
        return None


class FunctionProblem(Problem):
    """Problem defined by a plain cost function."""

    def __init__(
        self,
        fn: CostFunction,
        theta0: Sequence[float],
        chi_box: Box,
        theta_box: Optional[Box] = None,
    ) -> None:
        super().__init__(theta0, chi_box, theta_box)
        self.fn = fn

    def cost(self, theta, chi):
        return self.fn(theta, chi)
