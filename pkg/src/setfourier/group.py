"""Finite abelian groups as explicit products of cyclic groups.

A group ``Z/n_1 x ... x Z/n_r`` is stored by its list of orders.  Elements are
addressed either by their coordinate tuple or by a linear index in ``[0, N)``;
the two are related by mixed-radix encoding with the *first* coordinate most
significant (numpy's C order), so ``values.reshape(group.shape)`` puts each
coordinate on its own axis.

The dual group is identified with the group itself: the character labelled
by ``xi`` is ``g -> exp(2 pi i sum_j xi_j g_j / n_j)``.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .config import get_limits
from .errors import SizeError, ValidationError

__all__ = [
    "GroupSpec",
    "Element",
    "DualElement",
    "make_group",
    "add",
    "neg",
    "sub",
    "character",
]


@dataclass(frozen=True)
class GroupSpec:
    orders: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(n) for n in self.orders))
        if any(n < 2 for n in self.orders):
            raise ValidationError(f"non-canonical orders {self.orders}; use make_group")

    def __repr__(self) -> str:
        if not self.orders:
            return "GroupSpec(trivial)"
        return "GroupSpec(" + " x ".join(f"Z/{n}" for n in self.orders) + ")"

    @property
    def N(self) -> int:
        return math.prod(self.orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def shape(self) -> tuple[int, ...]:
        """Array shape with one axis per cyclic factor."""
        return self.orders if self.orders else (1,)

    @property
    def is_elementary_2(self) -> bool:
        return bool(self.orders) and all(n == 2 for n in self.orders)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.orders) if self.orders else 1

    def power(self, m: int) -> "GroupSpec":
        """The direct power ``G^m``; index of ``(g_1..g_m)`` is sum idx(g_i) N^(m-i)."""
        if m < 1:
            raise ValidationError("power must be at least 1")
        return make_group(list(self.orders) * m)

    # -- vectorised index arithmetic ---------------------------------------

    def coords(self, idx) -> np.ndarray:
        """Coordinates of linear indices; result has a trailing axis of length ``rank``."""
        idx = np.asarray(idx, dtype=np.int64)
        if not self.orders:
            return np.zeros(idx.shape + (0,), dtype=np.int64)
        return np.stack(np.unravel_index(idx, self.orders), axis=-1).astype(np.int64)

    def index(self, coords) -> np.ndarray:
        coords = np.asarray(coords, dtype=np.int64)
        if not self.orders:
            return np.zeros(coords.shape[:-1], dtype=np.int64)
        wrapped = np.mod(coords, self.orders)
        return np.ravel_multi_index(tuple(np.moveaxis(wrapped, -1, 0)), self.orders)

    def _combine(self, i, j, sign: int) -> np.ndarray:
        i, j = np.asarray(i, dtype=np.int64), np.asarray(j, dtype=np.int64)
        if self.is_elementary_2:
            return np.bitwise_xor(i, j)
        ci, cj = self.coords(i), self.coords(j)
        out = np.zeros(np.broadcast_shapes(i.shape, j.shape), dtype=np.int64)
        weight = 1
        # accumulate axis by axis so broadcasting never materialises a rank axis
        for c in range(self.rank - 1, -1, -1):
            n = self.orders[c]
            out += ((ci[..., c] + sign * cj[..., c]) % n) * weight
            weight *= n
        return out

    def add_idx(self, i, j) -> np.ndarray:
        return self._combine(i, j, 1)

    def sub_idx(self, i, j) -> np.ndarray:
        return self._combine(i, j, -1)

    def neg_idx(self, i) -> np.ndarray:
        return self.index(-self.coords(i))

    @functools.cached_property
    def neg_table(self) -> np.ndarray:
        """``neg_table[i]`` is the index of ``-g_i``."""
        return self.neg_idx(np.arange(self.N))

    def character_values(self, xi, g) -> np.ndarray:
        """Broadcasting ``character`` over index arrays."""
        cx, cg = self.coords(xi), self.coords(g)
        if not self.orders:
            return np.ones(np.broadcast_shapes(cx.shape[:-1], cg.shape[:-1]), dtype=complex)
        # integer phase modulo the exponent keeps the angle exact
        L = self.exponent
        scale = np.array([L // n for n in self.orders], dtype=np.int64)
        phase = np.sum(cx * cg * scale, axis=-1) % L
        return np.exp(2j * np.pi * phase / L)

    # -- element construction ----------------------------------------------

    def element(self, x: Union[int, Sequence[int]]) -> "Element":
        return Element.of(self, x)

    def dual(self, x: Union[int, Sequence[int]]) -> "DualElement":
        return DualElement.of(self, x)

    @property
    def zero(self) -> "Element":
        return Element(self, (0,) * self.rank)


def make_group(orders: Sequence[int]) -> GroupSpec:
    """Canonical group from cyclic orders; factors of order 1 are dropped.

    >>> make_group([1, 5, 1]).orders
    (5,)
    """
    orders = [int(n) for n in orders]
    if any(n <= 0 for n in orders):
        raise ValidationError(f"cyclic orders must be positive, got {orders}")
    kept = tuple(n for n in orders if n != 1)
    N = math.prod(kept)
    limit = get_limits().max_n
    if N > limit:
        raise SizeError(f"group of order {N} exceeds the maximum {limit}")
    return GroupSpec(kept)


@dataclass(frozen=True)
class Element:
    group: GroupSpec
    coords: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(v) for v in self.coords)
        if len(c) != self.group.rank or any(not 0 <= v < n for v, n in zip(c, self.group.orders)):
            raise ValidationError(f"coordinates {c} not valid in {self.group!r}")
        object.__setattr__(self, "coords", c)

    @classmethod
    def of(cls, group: GroupSpec, x):
        if isinstance(x, Element):
            if x.group != group:
                raise ValidationError("element belongs to a different group")
            return cls(group, x.coords)
        if isinstance(x, (int, np.integer)):
            if not 0 <= int(x) < group.N:
                raise ValidationError(f"index {x} out of range for {group!r}")
            return cls(group, tuple(group.coords(int(x)).tolist()))
        return cls(group, tuple(x))

    @property
    def index(self) -> int:
        return int(self.group.index(self.coords)) if self.coords else 0

    def __add__(self, other: "Element") -> "Element":
        return add(self, other)

    def __neg__(self) -> "Element":
        return neg(self)

    def __sub__(self, other: "Element") -> "Element":
        return sub(self, other)


class DualElement(Element):
    """Label of a character; same encoding as :class:`Element`."""


def _same_group(g: Element, h: Element) -> GroupSpec:
    if g.group != h.group:
        raise ValidationError(f"group mismatch: {g.group!r} vs {h.group!r}")
    return g.group


def add(g: Element, h: Element) -> Element:
    G = _same_group(g, h)
    return Element(G, tuple((a + b) % n for a, b, n in zip(g.coords, h.coords, G.orders)))


def neg(g: Element) -> Element:
    return Element(g.group, tuple((-a) % n for a, n in zip(g.coords, g.group.orders)))


def sub(g: Element, h: Element) -> Element:
    return add(g, neg(h))


def character(xi: Element, g: Element) -> complex:
    """Value of the character ``xi`` at ``g``."""
    G = _same_group(xi, g)
    return complex(G.character_values(xi.index, g.index))
