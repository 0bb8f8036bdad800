"""Solver-agnostic linear model and assignment checking."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

SENSES = ("<=", "=", ">=")


class ModelInputError(ValueError):
    pass


@dataclass
class Variable:
    name: str
    kind: str = "binary"  # binary | continuous
    lower: float = 0.0
    upper: float = 1.0


@dataclass
class Constraint:
    name: str
    terms: list[tuple[float, int]]
    sense: str
    rhs: float

    def lhs(self, values) -> float:
        return sum(c * values[j] for c, j in self.terms)


@dataclass
class Violation:
    name: str
    lhs: float
    sense: str
    rhs: float

    def __str__(self) -> str:
        return f"{self.name}: {self.lhs:g} {self.sense} {self.rhs:g} violated"


@dataclass
class LinearModel:
    name: str = "model"
    variables: list[Variable] = field(default_factory=list)
    constraints: list[Constraint] = field(default_factory=list)
    objective: list[tuple[float, int]] = field(default_factory=list)
    sense: str = "min"
    meta: dict = field(default_factory=dict, repr=False, compare=False)

    def add_var(self, name: str, kind: str = "binary", lower: float = 0.0, upper: float = 1.0) -> int:
        self.variables.append(Variable(name, kind, lower, upper))
        return len(self.variables) - 1

    def add_constraint(self, name: str, terms, sense: str, rhs: float) -> None:
        if sense not in SENSES:
            raise ValueError(f"bad sense {sense!r}")
        self.constraints.append(Constraint(name, list(terms), sense, float(rhs)))

    @property
    def n_binary(self) -> int:
        return sum(v.kind == "binary" for v in self.variables)

    @property
    def n_continuous(self) -> int:
        return sum(v.kind == "continuous" for v in self.variables)

    def var_index(self) -> dict[str, int]:
        return {v.name: i for i, v in enumerate(self.variables)}

    def validate(self) -> None:
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise ModelInputError("duplicate variable names")
        cnames = [c.name for c in self.constraints]
        if len(set(cnames)) != len(cnames):
            raise ModelInputError("duplicate constraint names")
        n = len(self.variables)
        for c in self.constraints:
            for _, j in c.terms:
                if not 0 <= j < n:
                    raise ModelInputError(f"constraint {c.name} references unknown variable {j}")

    def objective_value(self, values) -> float:
        return sum(c * values[j] for c, j in self.objective)

    def dense(self, columns: list[int] | None = None):
        """(A, sense codes, rhs) with rows for every constraint; sense codes
        are -1 for <=, 0 for =, 1 for >=."""
        A = np.zeros((len(self.constraints), len(self.variables)))
        for i, c in enumerate(self.constraints):
            for coef, j in c.terms:
                A[i, j] += coef
        code = np.array([{"<=": -1, "=": 0, ">=": 1}[c.sense] for c in self.constraints], dtype=int)
        rhs = np.array([c.rhs for c in self.constraints])
        return A, code, rhs

    def structure(self):
        """Name-free structural fingerprint for round-trip comparison."""
        return (
            [(v.kind, v.lower, v.upper) for v in self.variables],
            [(sorted((j, c) for c, j in k.terms), k.sense, k.rhs) for k in self.constraints],
            sorted((j, c) for c, j in self.objective),
        )


def check_assignment(model: LinearModel, assignment: Mapping[str, float], tol: float = 1e-9) -> list[Violation]:
    """Evaluate every bound and constraint of ``model`` at ``assignment``."""
    missing = [v.name for v in model.variables if v.name not in assignment]
    if missing:
        raise ModelInputError(f"assignment misses {len(missing)} variables, e.g. {missing[:3]}")
    values = [float(assignment[v.name]) for v in model.variables]
    out = []
    for v, x in zip(model.variables, values):
        if x < v.lower - tol:
            out.append(Violation(f"bound:{v.name}", x, ">=", v.lower))
        if x > v.upper + tol:
            out.append(Violation(f"bound:{v.name}", x, "<=", v.upper))
        if v.kind == "binary" and abs(x - round(x)) > tol:
            out.append(Violation(f"integrality:{v.name}", x, "=", round(x)))
    for c in model.constraints:
        lhs = c.lhs(values)
        ok = (
            lhs <= c.rhs + tol if c.sense == "<="
            else lhs >= c.rhs - tol if c.sense == ">="
            else abs(lhs - c.rhs) <= tol
        )
        if not ok:
            out.append(Violation(c.name, lhs, c.sense, c.rhs))
    return out
