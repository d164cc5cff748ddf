"""The twelve biclustering algorithms behind a uniform registry interface.

Every algorithm is ``run(matrix, params, seed) -> BiclusterSet`` and is
deterministic given the seed. Parameter schemas live in the registry so the
CLI and the HTTP service can validate and render forms without per-algorithm
code.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from ..core import BiclusterSet, ExpressionMatrix, ParameterError


@dataclass(frozen=True)
class ParamSpec:
    name: str
    type: str  # int | float | str | bool
    default: object = None  # None means computed from the matrix at run time
    min: Optional[float] = None
    max: Optional[float] = None
    min_exclusive: bool = False
    choices: Optional[tuple] = None
    description: str = ""

    def coerce(self, value):
        try:
            if self.type == "int":
                if isinstance(value, float) and not value.is_integer():
                    raise ValueError
                value = int(value)
            elif self.type == "float":
                value = float(value)
            elif self.type == "bool":
                if isinstance(value, str):
                    value = {"true": True, "false": False}[value.lower()]
                value = bool(value)
            else:
                value = str(value)
        except (ValueError, KeyError, TypeError):
            raise ParameterError(f"parameter {self.name!r} expects {self.type}, got {value!r}")
        if self.min is not None:
            if value < self.min or (self.min_exclusive and value == self.min):
                op = ">" if self.min_exclusive else ">="
                raise ParameterError(f"parameter {self.name!r} must be {op} {self.min}")
        if self.max is not None and value > self.max:
            raise ParameterError(f"parameter {self.name!r} must be <= {self.max}")
        if self.choices is not None and value not in self.choices:
            raise ParameterError(f"parameter {self.name!r} must be one of {self.choices}")
        return value


@dataclass(frozen=True)
class AlgorithmInfo:
    name: str
    run: Callable
    params: tuple = ()
    description: str = ""

    def schema(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "params": [
                {
                    "name": p.name,
                    "type": p.type,
                    "default": p.default,
                    "min": p.min,
                    "max": p.max,
                    "choices": list(p.choices) if p.choices else None,
                    "description": p.description,
                }
                for p in self.params
            ],
        }


REGISTRY: dict = {}


def register(name: str, params: tuple, description: str = ""):
    def wrap(fn):
        REGISTRY[name] = AlgorithmInfo(name, fn, params, description)
        return fn
    return wrap


def get_algorithm(name: str) -> AlgorithmInfo:
    if name not in REGISTRY:
        raise ParameterError(
            f"unknown algorithm {name!r}; valid algorithms: {', '.join(sorted(REGISTRY))}"
        )
    return REGISTRY[name]


def algorithm_names() -> list:
    return sorted(REGISTRY)


def resolve_params(name: str, params: Optional[dict]) -> dict:
    """Fill defaults and validate against the algorithm's parameter schema."""
    info = get_algorithm(name)
    specs = {p.name: p for p in info.params}
    given = dict(params or {})
    unknown = set(given) - set(specs)
    if unknown:
        raise ParameterError(
            f"unknown parameter(s) {sorted(unknown)} for algorithm {name!r}; "
            f"valid: {sorted(specs)}"
        )
    resolved = {}
    for pname, spec in specs.items():
        if pname in given and given[pname] is not None:
            resolved[pname] = spec.coerce(given[pname])
        else:
            resolved[pname] = spec.default
    return resolved


def run_algorithm(name: str, m: ExpressionMatrix, params: Optional[dict] = None,
                  seed: int = 42, trace: Optional[list] = None) -> BiclusterSet:
    """Validate parameters, run the algorithm, and return a validated set."""
    info = get_algorithm(name)
    resolved = resolve_params(name, params)
    m.require_complete(f"algorithm {name!r}")
    if not isinstance(seed, (int, np.integer)) or seed < 0:
        raise ParameterError("seed must be a non-negative integer")
    kwargs = {}
    if trace is not None:
        kwargs["trace"] = trace
    result = info.run(m, resolved, int(seed), **kwargs)
    out = BiclusterSet(name, {k: v for k, v in resolved.items() if v is not None},
                       int(seed), result.biclusters)
    out.params.update(result.params)
    out.validate_against(m)
    return out


from . import (  # noqa: E402,F401  (import for registration side effects)
    cc,
    floc,
    bsgp,
    opsm,
    isa,
    kspectral,
    itl,
    xmotif,
    plaid,
    bimax,
    las,
    msvd,
)
