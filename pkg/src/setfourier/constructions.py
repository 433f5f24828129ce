"""Set generators: subgroups, random subsets, H + Lambda, quadratic residues.

Randomness
----------
Every random construction draws from numpy's PCG64 generator seeded with
``SeedSequence(seed, spawn_key=(crc32(kind),))``.  The per-kind spawn key
splits streams, so the same seed gives independent draws for different
construction kinds, and the sequence is bit-identical across platforms.
"""
from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .errors import ValidationError
from .group import GroupSpec
from .quantities import GroupSubset
from .spectral import DenseFunction

__all__ = [
    "SetSpec",
    "KINDS",
    "rng_for",
    "is_prime",
    "span",
    "build",
    "balanced_function",
    "hill_climb_tightness",
]

KINDS = (
    "explicit",
    "subgroup",
    "random_in_subgroup",
    "h_plus_lambda",
    "quadratic_residues",
    "progression",
    "random",
)


def rng_for(kind: str, seed: int) -> np.random.Generator:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValidationError("seed must be a 64-bit unsigned integer")
    ss = np.random.SeedSequence(seed, spawn_key=(zlib.crc32(kind.encode()),))
    return np.random.Generator(np.random.PCG64(ss))


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


@dataclass
class SetSpec:
    kind: str
    params: dict[str, Any] = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown construction kind {self.kind!r}")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": dict(self.params), "seed": self.seed}

    @classmethod
    def from_dict(cls, d: dict) -> "SetSpec":
        return cls(d["kind"], dict(d.get("params", {})), int(d.get("seed", 0)))


def _element_index(group: GroupSpec, token) -> int:
    """Accepts an index, a coordinate list, or ``"eI"`` (I-th unit vector, 1-based)."""
    if isinstance(token, str):
        t = token.strip()
        if t.startswith("e") and t[1:].isdigit():
            j = int(t[1:])
            if not 1 <= j <= group.rank:
                raise ValidationError(f"unit vector {t} outside rank {group.rank}")
            coords = [0] * group.rank
            coords[j - 1] = 1
            return group.element(coords).index
        if "." in t:
            return group.element([int(c) for c in t.split(".")]).index
        return group.element(int(t)).index
    if isinstance(token, (list, tuple)):
        return group.element(list(token)).index
    return group.element(int(token)).index


def span(group: GroupSpec, generators) -> GroupSubset:
    """Subgroup generated by ``generators``."""
    gens = [_element_index(group, g) for g in generators]
    mask = np.zeros(group.N, dtype=bool)
    mask[0] = True
    current = GroupSubset(group, mask)
    while True:
        grown = current
        for g in gens:
            grown = grown | grown.translate(g)
        if grown == current:
            return current
        current = grown


def _generators(group: GroupSpec, params: dict) -> list:
    if "generators" in params:
        return list(params["generators"])
    if "dim" in params:
        return [f"e{j}" for j in range(1, int(params["dim"]) + 1)]
    raise ValidationError("subgroup needs 'generators' or 'dim'")


def _h_plus_lambda(group: GroupSpec, params: dict) -> GroupSubset:
    if not group.is_elementary_2:
        raise ValidationError("h_plus_lambda is defined on F_2^n")
    gens = _generators(group, params)
    H = span(group, gens)
    if "representatives" in params:
        reps = [_element_index(group, r) for r in params["representatives"]]
    else:
        dim = int(params.get("dim", len(params.get("generators", []))))
        lam = int(params.get("lam", 2))
        if dim + lam - 1 > group.rank:
            raise ValidationError("not enough coordinates for the requested Lambda")
        reps = [_element_index(group, f"e{j}") for j in range(dim + 1, dim + lam)]
    # reps must be independent modulo H
    if len(set(reps)) != len(reps) or span(group, [*gens, *reps]).size != H.size * 2 ** len(reps):
        raise ValidationError("Lambda representatives are not independent over H")
    mask = H.mask.copy()
    for r in reps:
        mask |= H.translate(r).mask
    A = GroupSubset(group, mask)
    assert A.size == H.size * (len(reps) + 1)
    return A


def build(spec: SetSpec, group: GroupSpec) -> GroupSubset:
    """Materialise ``spec`` in ``group``; deterministic in ``(spec, group)``."""
    p = spec.params
    kind = spec.kind
    if kind == "explicit":
        return GroupSubset.from_indices(group, (_element_index(group, e) for e in p.get("elements", [])))
    if kind == "subgroup":
        return span(group, _generators(group, p))
    if kind == "random_in_subgroup":
        H = span(group, _generators(group, p))
        q = float(p.get("q", 0.5))
        draws = rng_for(kind, spec.seed).random(group.N)
        return GroupSubset(group, H.mask & (draws < q))
    if kind == "h_plus_lambda":
        return _h_plus_lambda(group, p)
    if kind == "quadratic_residues":
        prime = int(p.get("p", group.N))
        if not is_prime(prime):
            raise ValidationError(f"{prime} is not prime")
        if group.orders != (prime,):
            raise ValidationError(f"quadratic residues need the group Z/{prime}")
        return GroupSubset.from_indices(group, {x * x % prime for x in range(1, prime)})
    if kind == "progression":
        a, d, m = int(p.get("a", 0)), int(p.get("d", 1)), int(p["m"])
        a_i, d_i = _element_index(group, a), _element_index(group, d)
        steps = np.arange(m)
        coords = group.coords(a_i) + steps[:, None] * group.coords(d_i)
        return GroupSubset.from_indices(group, group.index(coords).ravel())
    if kind == "random":
        rng = rng_for(kind, spec.seed)
        if "size" in p:
            size = int(p["size"])
            if not 0 <= size <= group.N:
                raise ValidationError("random set size out of range")
            return GroupSubset.from_indices(group, rng.choice(group.N, size=size, replace=False))
        q = float(p.get("q", 0.5))
        return GroupSubset(group, rng.random(group.N) < q)
    raise ValidationError(f"unknown construction kind {kind!r}")


def balanced_function(A: GroupSubset) -> DenseFunction:
    """``A(x) - |A|/N``."""
    if A.size == 0:
        raise ValidationError("balanced function of the empty set")
    return DenseFunction(A.group, A.mask.astype(float) - A.size / A.group.N)


def hill_climb_tightness(
    group: GroupSpec,
    target_size: int,
    objective: str = "theorem_cor",
    seed: int = 0,
    iterations: int = 500,
    start: Optional[GroupSubset] = None,
) -> tuple[GroupSubset, list[float]]:
    """Single-swap hill climbing on a law's tightness ratio.

    Starting from a seeded random set of ``target_size`` elements, each step
    swaps one member for one non-member and keeps the swap only when the
    ratio strictly increases.  Returns the final set and the ratio trace
    (initial value first), which is nondecreasing by construction.
    """
    from .laws import OBJECTIVES

    if objective not in OBJECTIVES:
        raise ValidationError(f"unknown objective {objective!r}; choose from {sorted(OBJECTIVES)}")
    if not 1 <= target_size < group.N:
        raise ValidationError("target size must lie in [1, N)")
    score = OBJECTIVES[objective]
    rng = rng_for("hill_climb", seed)
    if start is None:
        mask = np.zeros(group.N, dtype=bool)
        mask[rng.choice(group.N, size=target_size, replace=False)] = True
    else:
        mask = start.mask.copy()
    current = score(GroupSubset(group, mask))
    trace = [current]
    for _ in range(iterations):
        members = np.flatnonzero(mask)
        others = np.flatnonzero(~mask)
        out_i = members[rng.integers(members.size)]
        in_i = others[rng.integers(others.size)]
        cand = mask.copy()
        cand[out_i], cand[in_i] = False, True
        value = score(GroupSubset(group, cand))
        if value > current:
            mask, current = cand, value
        trace.append(current)
    return GroupSubset(group, mask), trace
