"""Run-time budgets.

Budgets live in a context variable so that the CLI (or a test) can tighten
them for a block of code without threading arguments through every call::

    with use_limits(max_tuples=10_000):
        higher_diff(A, 3)
"""
from __future__ import annotations

import contextlib
import contextvars
import dataclasses


@dataclasses.dataclass(frozen=True)
class Limits:
    max_n: int = 2**20
    # tuple sets and dense functions on G^k
    max_tuples: int = 10**7
    # nodes visited by the rho_l branch-and-bound search
    max_combinations: int = 10**6
    # largest N for which the O(N^2) reference transform may run
    naive_cutoff: int = 4096


_LIMITS: contextvars.ContextVar[Limits] = contextvars.ContextVar("limits", default=Limits())


def get_limits() -> Limits:
    return _LIMITS.get()


@contextlib.contextmanager
def use_limits(**overrides):
    token = _LIMITS.set(dataclasses.replace(_LIMITS.get(), **overrides))
    try:
        yield _LIMITS.get()
    finally:
        _LIMITS.reset(token)
