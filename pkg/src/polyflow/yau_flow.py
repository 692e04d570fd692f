"""Flowing one polygon to another: the semi-discrete Yau difference flow.

The difference polygon Z(t) = X(t) - Y evolves by the homogeneous flow, so
the solution is the homogeneous evolution of X0 - Y translated back by the
target.  As t grows, X(t) converges exponentially to Y translated by the
centroid of the initial difference.
"""
from __future__ import annotations

from dataclasses import dataclass

from .polygon import Polygon, centroid, reconcile_vertex_counts
from .spectral_flow import FlowSolution, flow_solution, rescaled_limit


@dataclass(frozen=True)
class YauProblem:
    """A fully specified difference-flow instance: order, start, and target."""

    m: int
    initial: Polygon
    target: Polygon

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"flow order must be >= 1, got {self.m}")
        if self.initial.p != self.target.p:
            raise ValueError(
                f"ambient dimensions differ: {self.initial.p} != {self.target.p}"
            )
        if self.initial.n != self.target.n:
            raise ValueError(
                f"vertex counts differ: {self.initial.n} != {self.target.n}; "
                "reconcile them first (see yau_flow_between)"
            )
        if self.initial.n < 3:
            raise ValueError(f"flow needs n >= 3, got n = {self.initial.n}")

    def difference(self) -> Polygon:
        return self.initial - self.target

    def target_at(self, t: float) -> Polygon:
        """Extension point for time-dependent targets; constant for now."""
        return self.target


@dataclass(frozen=True)
class YauSolution:
    """Evaluator closed over the spectral data of the difference polygon."""

    problem: YauProblem
    difference_flow: FlowSolution

    @property
    def kind(self) -> str:
        return "yau"

    @property
    def m(self) -> int:
        return self.problem.m

    def polygon_at(self, t: float) -> Polygon:
        return self.difference_flow.polygon_at(t) + self.problem.target

    def limit(self) -> Polygon:
        return yau_limit(self.problem)


def yau_solution(problem: YauProblem) -> YauSolution:
    """Prepare the exact evaluator: homogeneous flow on X0 - Y, plus Y."""
    return YauSolution(
        problem=problem,
        difference_flow=flow_solution(problem.difference(), problem.m),
    )


def yau_solve(problem: YauProblem, t: float) -> Polygon:
    """The evolved polygon at time t; X(0) = X0 and X = Y stays exactly at Y."""
    return yau_solution(problem).polygon_at(t)


def yau_limit(problem: YauProblem) -> Polygon:
    """Forward limit: the target translated by the centroid of X0 - Y."""
    return problem.target.translated(centroid(problem.difference()))


def yau_ancient_limit(problem: YauProblem) -> tuple[int, Polygon]:
    """Rescaled backward-in-time shape of the difference polygon.

    Rescaling is applied to Z(t) = X(t) - Y about its centroid, the same
    convention as the homogeneous ancient limit.
    """
    return rescaled_limit(problem.difference(), problem.m, direction="ancient")


def yau_flow_between(
    x0: Polygon, y: Polygon, m: int, strategy: str = "midpoint"
) -> tuple[YauProblem, YauSolution]:
    """Flow between polygons with possibly different vertex counts.

    Vertex counts are reconciled first (default: midpoint insertion, which
    preserves the target geometry without repeated vertices), then the
    problem and its evaluator are constructed.
    """
    x0r, yr = reconcile_vertex_counts(x0, y, strategy)
    problem = YauProblem(m=m, initial=x0r, target=yr)
    return problem, yau_solution(problem)
