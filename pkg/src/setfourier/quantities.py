"""Subsets of a group and the additive quantities computed from them.

Every counting quantity is returned as an exact Python ``int`` (or
``Fraction`` for ratios of counts); only Fourier-side values such as the
bias ``M(A)`` are floats.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .config import get_limits
from .errors import ResourceError, ValidationError
from .group import Element, GroupSpec
from .spectral import (
    DenseFunction,
    Spectrum,
    _fft_batch,
    conv_power,
    convolve_star,
    correlate_circ,
    dft,
    wht,
)

__all__ = [
    "GroupSubset",
    "TupleSet",
    "QuantityReport",
    "sumset",
    "difference_set",
    "iterated_sumset",
    "rho",
    "fourier_bias",
    "rho_k",
    "rho_l",
    "representation_fn",
    "representation_counts",
    "energy",
    "energy_k",
    "energy_kl",
    "t_k_count",
    "t_k_spectral",
    "t_k_fn",
    "higher_diff",
    "higher_diff_size",
    "epsilon",
    "tuple_diff",
    "sigma_sum",
    "sigma_sum_spectral",
    "dyadic_level_sets",
    "quantity_report",
]


def _int_sum_of_powers(values: np.ndarray, p: int) -> int:
    return sum(int(v) ** p for v in values if v)


@dataclass(frozen=True, eq=False)
class GroupSubset:
    """A subset of ``group`` stored as a boolean membership vector."""

    group: GroupSpec
    mask: np.ndarray

    def __post_init__(self):
        m = np.array(self.mask, dtype=bool, copy=True)
        if m.shape != (self.group.N,):
            raise ValidationError(f"mask must have length {self.group.N}")
        m.setflags(write=False)
        object.__setattr__(self, "mask", m)

    @classmethod
    def from_indices(cls, group: GroupSpec, indices: Iterable[int]) -> "GroupSubset":
        m = np.zeros(group.N, dtype=bool)
        idx = np.fromiter((int(i) for i in indices), dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= group.N):
            raise ValidationError("element index out of range")
        m[idx] = True
        return cls(group, m)

    @classmethod
    def from_elements(cls, group: GroupSpec, elements: Iterable) -> "GroupSubset":
        return cls.from_indices(group, (group.element(e).index for e in elements))

    @classmethod
    def full(cls, group: GroupSpec) -> "GroupSubset":
        return cls(group, np.ones(group.N, dtype=bool))

    @classmethod
    def empty(cls, group: GroupSpec) -> "GroupSubset":
        return cls(group, np.zeros(group.N, dtype=bool))

    @functools.cached_property
    def size(self) -> int:
        return int(np.count_nonzero(self.mask))

    def __len__(self) -> int:
        return self.size

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupSubset)
            and self.group == other.group
            and bool(np.array_equal(self.mask, other.mask))
        )

    def __hash__(self) -> int:
        return hash((self.group, self.mask.tobytes()))

    def __repr__(self) -> str:
        shown = self.indices[:12].tolist()
        tail = ", ..." if self.size > 12 else ""
        return f"GroupSubset({self.group!r}, size={self.size}, {shown}{tail})"

    def __contains__(self, x) -> bool:
        idx = x.index if isinstance(x, Element) else int(x)
        return bool(self.mask[idx])

    def __iter__(self):
        return iter(self.indices.tolist())

    def __and__(self, other: "GroupSubset") -> "GroupSubset":
        _same(self, other)
        return GroupSubset(self.group, self.mask & other.mask)

    def __or__(self, other: "GroupSubset") -> "GroupSubset":
        _same(self, other)
        return GroupSubset(self.group, self.mask | other.mask)

    def issubset(self, other: "GroupSubset") -> bool:
        _same(self, other)
        return not np.any(self.mask & ~other.mask)

    @functools.cached_property
    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    @functools.cached_property
    def bits(self) -> int:
        """Membership as a Python integer, bit ``i`` set iff index ``i`` is in the set."""
        return int.from_bytes(np.packbits(self.mask, bitorder="little").tobytes(), "little")

    @functools.cached_property
    def indicator(self) -> DenseFunction:
        return DenseFunction(self.group, self.mask.astype(np.int64))

    @functools.cached_property
    def autocorrelation(self) -> DenseFunction:
        """``x -> |A & (A + x)|``."""
        return correlate_circ(self.indicator, self.indicator)

    @functools.cached_property
    def spectrum(self) -> Spectrum:
        return dft(self.indicator)

    def translate(self, g) -> "GroupSubset":
        """``A + g``."""
        gi = g.index if isinstance(g, Element) else int(g)
        if not self.group.orders:
            return self
        shaped = self.mask.reshape(self.group.shape)
        shift = tuple(int(c) for c in self.group.coords(gi))
        rolled = np.roll(shaped, shift, axis=tuple(range(self.group.rank)))
        return GroupSubset(self.group, rolled.reshape(-1))

    def negate(self) -> "GroupSubset":
        """``-A``."""
        return GroupSubset(self.group, self.mask[self.group.neg_table])


def _same(A: GroupSubset, B: GroupSubset) -> GroupSpec:
    if A.group != B.group:
        raise ValidationError(f"group mismatch: {A.group!r} vs {B.group!r}")
    return A.group


def _nontrivial(A: GroupSubset) -> None:
    if A.group.N < 2:
        raise ValidationError("quantity undefined on the trivial group")


# -- sumsets --------------------------------------------------------------------


def sumset(A: GroupSubset, B: GroupSubset, sign: int = 1) -> GroupSubset:
    """``A + B`` (``sign=+1``) or ``A - B`` (``sign=-1``)."""
    G = _same(A, B)
    if sign not in (1, -1):
        raise ValidationError("sign must be +1 or -1")
    if A.size == 0 or B.size == 0:
        return GroupSubset.empty(G)
    other = B.indicator if sign == 1 else B.indicator.reflect()
    counts = convolve_star(A.indicator, other)
    return GroupSubset(G, counts.values > 0)


def iterated_sumset(A: GroupSubset, s: int, tail_sign: int = 0) -> GroupSubset:
    """``sA`` (tail 0), ``sA + A`` (tail +1) or ``sA - A`` (tail -1)."""
    if s < 1:
        raise ValidationError("s must be at least 1")
    if tail_sign not in (-1, 0, 1):
        raise ValidationError("tail_sign must be -1, 0 or +1")
    acc = A
    for _ in range(s - 1):
        acc = sumset(acc, A)
    if tail_sign:
        acc = sumset(acc, A, tail_sign)
    return acc


def difference_set(A: GroupSubset) -> GroupSubset:
    return sumset(A, A, -1)


# -- translate intersections and Fourier bias ----------------------------------


def rho(A: GroupSubset) -> int:
    """``max_{x != 0} |A & (A + x)|``."""
    _nontrivial(A)
    return int(np.max(A.autocorrelation.values[1:]))


def fourier_bias(A: GroupSubset) -> float:
    """``M(A) = max_{xi != 0} |A^(xi)|``."""
    _nontrivial(A)
    return float(np.max(np.abs(A.spectrum.values[1:])))


def rho_k(A: GroupSubset, k: int) -> int:
    """``max_{x != 0} A^(k)(x)``."""
    _nontrivial(A)
    if k < 2:
        raise ValidationError("rho_k needs k >= 2")
    return int(np.max(conv_power(A.indicator, k).values[1:]))


def rho_l(A: GroupSubset, l: int) -> int:
    """``max_{|X| = l} |(A + x_1) & ... & (A + x_l)|``.

    By translation invariance the search fixes ``0 in X`` and draws the
    remaining ``l - 1`` shifts from ``(A - A) \\ {0}``; a branch-and-bound
    over bitsets prunes any partial intersection no larger than the best
    found.  If the node budget runs out, :class:`ResourceError` is raised
    with ``lower_bound`` set to the best value so far.
    """
    G = A.group
    if l < 2:
        raise ValidationError("rho_l needs l >= 2")
    if l > G.N:
        raise ValidationError(f"no {l}-element subsets in a group of order {G.N}")
    if A.size == 0:
        return 0
    ac = A.autocorrelation.values
    D = np.flatnonzero(ac > 0)
    cands = [int(x) for x in D if x != 0]
    if len(cands) < l - 1:
        return 0
    # strongest single shifts first so good bounds appear early
    cands.sort(key=lambda x: -int(ac[x]))
    shifted = [A.translate(x).bits for x in cands]
    budget = get_limits().max_combinations
    best = 0
    visited = 0
    top = A.size
    m = len(cands)

    stack = [(A.bits, 0, l - 1)]
    while stack:
        cur, start, need = stack.pop()
        if cur.bit_count() <= best:
            continue
        if need == 0:
            best = max(best, cur.bit_count())
            if best == top:
                break
            continue
        # push in reverse so the most promising branch is explored first
        for j in range(m - need, start - 1, -1):
            visited += 1
            if visited > budget:
                raise ResourceError(
                    f"rho_l search exceeded {budget} nodes", lower_bound=best
                )
            nxt = cur & shifted[j]
            if nxt.bit_count() > best:
                stack.append((nxt, j + 1, need - 1))
    return best


# -- representation functions and energies ----------------------------------------


def _diff_matrix(A: GroupSubset) -> np.ndarray:
    """``M[i, j]`` is the index of ``a_i - a_j``."""
    idx = A.indices
    return A.group.sub_idx(idx[:, None], idx[None, :])


def _tuple_codes(rows: Sequence[np.ndarray], N: int) -> np.ndarray:
    codes = np.zeros(1, dtype=np.int64)
    for r in rows:
        codes = (codes[:, None] * N + r[None, :]).ravel()
    return codes


def _check_code_space(N: int, arity: int) -> None:
    if N ** arity >= 2**63:
        raise ResourceError(f"tuple space N^{arity} does not fit 64-bit codes")


def _representation_code_chunks(A: GroupSubset, k: int):
    """Yield code arrays for tuples ``(a - b_1, ..., a - b_{k-1})``, one per ``a``."""
    N = A.group.N
    _check_code_space(N, k - 1)
    raw = A.size**k
    if raw > get_limits().max_tuples:
        raise ResourceError(f"|A|^{k} = {raw} tuples exceed the budget {get_limits().max_tuples}")
    diffs = _diff_matrix(A)
    for i in range(A.size):
        yield _tuple_codes([diffs[i]] * (k - 1), N)


def representation_counts(A: GroupSubset, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Sparse ``R^(k)_A``: sorted tuple codes on ``G^(k-1)`` and their values."""
    if k < 2:
        raise ValidationError("representation function needs k >= 2")
    if A.size == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    codes = np.concatenate(list(_representation_code_chunks(A, k)))
    return np.unique(codes, return_counts=True)


def representation_fn(A: GroupSubset, k: int) -> DenseFunction:
    """``R^(k)_A(x_1..x_{k-1}) = |A & (A + x_1) & ... & (A + x_{k-1})|`` on ``G^(k-1)``."""
    if k < 2:
        raise ValidationError("representation function needs k >= 2")
    if k == 2:
        return A.autocorrelation
    G = A.group
    H = G.power(k - 1)
    if H.N > get_limits().max_tuples:
        raise ResourceError(f"dense G^{k - 1} of size {H.N} exceeds the budget")
    out = np.zeros(H.N, dtype=np.int64)
    if A.size:
        for codes in _representation_code_chunks(A, k):
            out += np.bincount(codes, minlength=H.N)
    return DenseFunction(H, out)


def energy(A: GroupSubset, B: GroupSubset) -> int:
    """Additive energy ``E(A, B) = sum_x (A o A)(x) (B o B)(x)``."""
    _same(A, B)
    a = A.autocorrelation.values.astype(object)
    b = B.autocorrelation.values.astype(object)
    return int(np.dot(a, b))


def energy_k(A: GroupSubset, k) -> int | float:
    """``E_k(A) = sum_x (A o A)(x)^k``; exact for integral ``k``."""
    if k <= 1:
        raise ValidationError("energy_k needs k > 1")
    v = A.autocorrelation.values
    if float(k).is_integer():
        return _int_sum_of_powers(v, int(k))
    pos = v[v > 0].astype(float)
    return float(np.sum(pos ** float(k)))


def energy_kl(A: GroupSubset, k: int, l: int) -> int:
    """``E_{k,l}(A) = sum over G^(k-1) of R^(k)_A(x)^l``."""
    if k < 2 or l < 2:
        raise ValidationError("energy_kl needs k, l >= 2")
    if k == 2:
        return _int_sum_of_powers(A.autocorrelation.values, l)
    _, counts = representation_counts(A, k)
    return _int_sum_of_powers(counts, l)


def t_k_count(A: GroupSubset, k: int) -> int:
    """``T_k(A)``: number of solutions of ``a_1+..+a_k = a'_1+..+a'_k``.

    Computed as ``sum_x (A*...*A)(x)^2`` with exact convolutions; ``T_1 = |A|``.
    """
    if k < 1:
        raise ValidationError("T_k needs k >= 1")
    f = A.indicator
    acc = f
    for _ in range(k - 1):
        acc = convolve_star(acc, f)
    return _int_sum_of_powers(acc.values, 2)


def t_k_spectral(A: GroupSubset, k: int) -> float:
    """``N^-1 sum_xi |A^(xi)|^(2k)`` (floating point)."""
    mags = np.abs(A.spectrum.values)
    return float(np.sum(mags ** (2 * k)) / A.group.N)


def t_k_fn(f: DenseFunction, k: int) -> int | float:
    """``T_k(f) = sum_x (f^(k)(x))^2`` with ``f^(1) = f``."""
    if f.values.dtype.kind == "c" and np.any(np.abs(f.values.imag) > 0):
        raise ValidationError("T_k(f) is defined for real-valued f")
    p = conv_power(f, k)
    if p.exact:
        return _int_sum_of_powers(p.values, 2)
    return float(np.sum(np.real(p.values) ** 2))


# -- tuple sets ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TupleSet:
    """A set of ``arity``-tuples of group elements, stored as sorted codes.

    The code of ``(i_1, ..., i_k)`` is ``sum_j i_j N^(k-j)``, which is also the
    linear index of the tuple in ``G^k``.
    """

    group: GroupSpec
    arity: int
    codes: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.arity < 1:
            raise ValidationError("arity must be at least 1")
        _check_code_space(self.group.N, self.arity)
        c = np.unique(np.asarray(self.codes, dtype=np.int64))
        if c.size and (c[0] < 0 or c[-1] >= self.group.N ** self.arity):
            raise ValidationError("tuple code out of range")
        if c.size > get_limits().max_tuples:
            raise ResourceError(f"tuple set of size {c.size} exceeds the budget")
        c.setflags(write=False)
        object.__setattr__(self, "codes", c)

    @classmethod
    def from_tuples(cls, group: GroupSpec, tuples: Iterable[Sequence[int]], arity: Optional[int] = None):
        rows = [tuple(int(v) for v in t) for t in tuples]
        if arity is None:
            if not rows:
                raise ValidationError("arity required for an empty tuple set")
            arity = len(rows[0])
        if any(len(r) != arity for r in rows):
            raise ValidationError("tuples must share one arity")
        if any(not 0 <= v < group.N for r in rows for v in r):
            raise ValidationError("tuple entry out of range")
        arr = np.array(rows, dtype=np.int64).reshape(len(rows), arity)
        return cls(group, arity, _encode(arr, group.N))

    @classmethod
    def from_subset(cls, A: GroupSubset) -> "TupleSet":
        return cls(A.group, 1, A.indices)

    def __len__(self) -> int:
        return int(self.codes.size)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TupleSet)
            and self.group == other.group
            and self.arity == other.arity
            and bool(np.array_equal(self.codes, other.codes))
        )

    def __hash__(self):
        return hash((self.group, self.arity, self.codes.tobytes()))

    def __contains__(self, t) -> bool:
        code = int(_encode(np.array([t], dtype=np.int64), self.group.N)[0])
        pos = np.searchsorted(self.codes, code)
        return bool(pos < self.codes.size and self.codes[pos] == code)

    def tuples(self) -> np.ndarray:
        """Decoded tuples, shape ``(len, arity)``."""
        if self.codes.size == 0:
            return np.zeros((0, self.arity), dtype=np.int64)
        return np.stack(np.unravel_index(self.codes, (self.group.N,) * self.arity), axis=-1)

    def product(self, *others: "TupleSet") -> "TupleSet":
        """Cartesian product, arities add."""
        out = self
        for o in others:
            if o.group != out.group:
                raise ValidationError("group mismatch in tuple product")
            size = len(out) * len(o)
            if size > get_limits().max_tuples:
                raise ResourceError(f"product of size {size} exceeds the budget")
            _check_code_space(out.group.N, out.arity + o.arity)
            codes = (out.codes[:, None] * (out.group.N ** o.arity) + o.codes[None, :]).ravel()
            out = TupleSet(out.group, out.arity + o.arity, codes)
        return out


def _encode(arr: np.ndarray, N: int) -> np.ndarray:
    codes = np.zeros(arr.shape[0], dtype=np.int64)
    for j in range(arr.shape[1]):
        codes = codes * N + arr[:, j]
    return codes


def tuple_diff(S: TupleSet, T) -> TupleSet:
    """``{(s_1 - t, ..., s_k - t) : s in S, t in T}``; ``T`` is a subset of ``G``."""
    if isinstance(T, TupleSet):
        if T.arity != 1:
            raise ValidationError("T must have arity 1")
        t_idx = T.codes
    else:
        t_idx = T.indices
    if T.group != S.group:
        raise ValidationError("group mismatch")
    raw = len(S) * len(t_idx)
    if raw > get_limits().max_tuples:
        raise ResourceError(f"|S||T| = {raw} exceeds the budget")
    G = S.group
    tup = S.tuples()
    if raw == 0:
        return TupleSet(G, S.arity, np.zeros(0, dtype=np.int64))
    diffs = G.sub_idx(tup[None, :, :], t_idx[:, None, None])
    return TupleSet(G, S.arity, _encode(diffs.reshape(-1, S.arity), G.N))


def higher_diff(A: GroupSubset, k: int) -> TupleSet:
    """Higher difference set ``{(a_1 - a, ..., a_k - a) : a, a_i in A}`` in ``G^k``."""
    if k < 1:
        raise ValidationError("higher_diff needs k >= 1")
    G = A.group
    if k == 1:
        return TupleSet.from_subset(difference_set(A))
    _check_code_space(G.N, k)
    limits = get_limits()
    if A.size ** (k + 1) > 50 * limits.max_tuples:
        raise ResourceError(f"enumerating |A|^{k + 1} tuples exceeds the budget")
    acc = np.zeros(0, dtype=np.int64)
    pending: list[np.ndarray] = []
    pending_size = 0
    diffs = _diff_matrix(A)
    for i in range(A.size):
        # column i holds a_j - a_i
        codes = _tuple_codes([diffs[:, i]] * k, G.N)
        pending.append(codes)
        pending_size += codes.size
        if pending_size > limits.max_tuples:
            acc = np.unique(np.concatenate([acc] + pending))
            pending, pending_size = [], 0
            if acc.size > limits.max_tuples:
                raise ResourceError(f"higher difference set exceeds {limits.max_tuples} tuples")
    acc = np.unique(np.concatenate([acc] + pending))
    return TupleSet(G, k, acc)


def _batched_transform(G: GroupSpec, rows: np.ndarray, inverse: bool = False) -> np.ndarray:
    if G.is_elementary_2:
        out = wht(rows)
        return out / G.N if inverse else out
    return _fft_batch(G, rows, inverse=inverse)


def higher_diff_size(A: GroupSubset, k: int) -> int:
    """``|A^k - Delta_k(A)|`` without materialising the tuples when ``k <= 2``.

    For ``k = 2`` the count is ``sum_{x in A-A} |A - A_x|`` with
    ``A_x = A & (A + x)``, evaluated by batched transforms.
    """
    if k < 1:
        raise ValidationError("higher_diff_size needs k >= 1")
    G = A.group
    if A.size == 0:
        return 0
    if k == 1:
        return difference_set(A).size
    if k > 2:
        return len(higher_diff(A, k))
    ac = A.autocorrelation.values
    D = np.flatnonzero(ac > 0)
    neg = G.neg_table
    reflected = A.mask[neg]
    A_hat = _batched_transform(G, A.mask.astype(float)[None, :])[0]
    total = 0
    chunk = max(1, 2**21 // G.N)
    for start in range(0, D.size, chunk):
        xs = D[start : start + chunk]
        # row r is the reflection of A_x = A & (A + x), so convolving with A gives A - A_x
        rows = (reflected[None, :] & A.mask[G.sub_idx(neg[None, :], xs[:, None])]).astype(float)
        conv = _batched_transform(G, _batched_transform(G, rows) * A_hat[None, :], inverse=True)
        total += int(np.count_nonzero(np.real(conv) > 0.5))
    return total


def epsilon(A: GroupSubset, k: int) -> Fraction:
    """``eps_k = |A^k - Delta_k(A)| / |A - A|^k``."""
    d = difference_set(A).size
    if d == 0:
        raise ValidationError("epsilon undefined for the empty set")
    return Fraction(higher_diff_size(A, k), d**k)


# -- proof diagnostics ------------------------------------------------------------


def sigma_sum(A: GroupSubset, B: GroupSubset) -> int:
    """``sum_x |B_x| |S_x|`` with ``S = A + B``."""
    S = sumset(A, B)
    return energy(B, S)


def sigma_sum_spectral(A: GroupSubset, B: GroupSubset) -> float:
    """Fourier-side evaluation ``N^-1 sum_xi |B^(xi)|^2 |S^(xi)|^2``."""
    S = sumset(A, B)
    b = np.abs(B.spectrum.values) ** 2
    s = np.abs(S.spectrum.values) ** 2
    return float(np.sum(b * s) / A.group.N)


def dyadic_level_sets(A: GroupSubset) -> list[tuple[int, GroupSubset]]:
    """Split ``{x != 0 : |A_x| >= 1}`` into levels ``Delta <= |A_x| < 2 Delta``, ``Delta = 2^j``."""
    G = A.group
    v = A.autocorrelation.values
    levels: dict[int, list[int]] = {}
    for x in np.flatnonzero(v > 0):
        if x == 0:
            continue
        delta = 1 << (int(v[x]).bit_length() - 1)
        levels.setdefault(delta, []).append(int(x))
    return [(d, GroupSubset.from_indices(G, xs)) for d, xs in sorted(levels.items())]


# -- summary report -------------------------------------------------------------------


@dataclass
class QuantityReport:
    size: int
    N: int
    delta: Fraction
    K: Fraction
    rho: int
    M: float
    E: int
    T: dict[int, int]
    eps: dict[int, Fraction]
    # asymmetric quantities, present when a second set B is given
    B_size: Optional[int] = None
    K_star: Optional[Fraction] = None
    zeta: Optional[Fraction] = None
    omega: Optional[Fraction] = None
    kappa: Optional[Fraction] = None
    checks: dict[str, bool] = field(default_factory=dict)

    def to_dict(self) -> dict:
        out: dict = {
            "size": self.size,
            "N": self.N,
            "delta": float(self.delta),
            "K": float(self.K),
            "rho": self.rho,
            "M": self.M,
            "E": self.E,
        }
        for k, v in sorted(self.T.items()):
            out[f"T_{k}"] = v
        for k, v in sorted(self.eps.items()):
            out[f"eps_{k}"] = float(v)
        for name in ("B_size", "K_star", "zeta", "omega", "kappa"):
            v = getattr(self, name)
            if v is not None:
                out[name] = float(v) if isinstance(v, Fraction) else v
        for name, ok in sorted(self.checks.items()):
            out[f"check_{name}"] = ok
        return out


def quantity_report(
    A: GroupSubset,
    B: Optional[GroupSubset] = None,
    t_orders: Sequence[int] = (2, 3),
    eps_orders: Sequence[int] = (2,),
) -> QuantityReport:
    """All headline quantities of ``A`` (and of the pair ``(A, B)`` if given)."""
    if A.size == 0:
        raise ValidationError("quantity report needs a nonempty set")
    _nontrivial(A)
    G = A.group
    D = difference_set(A)
    K = Fraction(D.size, A.size)
    r = rho(A)
    rep = QuantityReport(
        size=A.size,
        N=G.N,
        delta=Fraction(A.size, G.N),
        K=K,
        rho=r,
        M=fourier_bias(A),
        E=energy(A, A),
        T={k: t_k_count(A, k) for k in t_orders},
        eps={k: epsilon(A, k) for k in eps_orders},
    )
    if A.size >= 2:
        rep.checks["rho_simple_bound"] = 2 * K * r >= A.size
    rep.checks["eps_bounds"] = all(K ** (-k) <= e <= 1 for k, e in rep.eps.items())
    if B is not None:
        _same(A, B)
        if B.size == 0:
            raise ValidationError("B must be nonempty")
        S = sumset(A, B)
        rep.B_size = B.size
        rep.K_star = Fraction(difference_set(B).size, B.size)
        rep.zeta = Fraction(B.size, A.size)
        rep.omega = Fraction(S.size, D.size)
        rep.kappa = K * rep.delta * rep.omega
    return rep
