"""Weighted xi-Bergman kernels, fiberwise sub-mean checks, ideal annihilators and extensions."""

import json
from dataclasses import dataclass, field

from . import _core

__all__ = ["Result", "run", "gram", "kernel", "membership", "command_names"]


@dataclass
class Result:
    exit_code: int
    summary: dict
    files: dict
    warnings: list = field(default_factory=list)
    error: str = ""

    @property
    def ok(self):
        return self.exit_code == 0


def _dump(obj):
    if obj is None:
        return ""
    return obj if isinstance(obj, str) else json.dumps(obj)


def run(command, config, seed=None, threads=None):
    """Runs one CLI command on a config dict. Nothing is written to disk."""
    code, summary, files, warnings, error = _core.run_command(command, _dump(config), seed, threads)
    return Result(code, json.loads(summary) if summary and summary != "null" else {}, dict(files),
                  list(warnings), error)


def gram(domain, weight, degree, quadrature=None):
    """Returns (labels, gram, rank, closed_form)."""
    return _core.gram(_dump(domain), _dump(weight), degree, _dump(quadrature))


def kernel(domain, weight, functional, points, degree=20, quadrature=None):
    pts = [[complex(c) for c in p] for p in points]
    return _core.kernel(_dump(domain), _dump(weight), _dump(functional), pts, degree, _dump(quadrature))


def membership(ideal, grid, w, f, seed=0):
    """Returns (by_functionals, by_oracle) for f in the ideal at fiber w."""
    return _core.membership(_dump(ideal), _dump(grid), [complex(c) for c in w], _dump(f), seed)


def command_names():
    return list(_core.command_names())
