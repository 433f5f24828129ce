"""Fourier transform, convolution and correlation on finite abelian groups.

Transform convention: ``F(xi) = sum_g f(g) * conj(xi(g))``.  Three routes
compute it and must agree:

* ``naive``: direct character sums, O(N^2), the reference oracle;
* ``fft``: numpy's multidimensional mixed-radix FFT over the cyclic axes;
* ``wht``: an in-house fast Walsh-Hadamard transform, used when every
  cyclic factor has order 2.  It stays in integer arithmetic for integer
  input, so spectra and convolutions over ``F_2^n`` are exact.

Integer-valued functions carry an ``exact`` flag (integer or object dtype).
Convolutions of exact functions are exact: via the integer WHT, via a float
FFT whose rounding residual is certified below ``ROUNDING_TOL``, or via
direct summation when magnitudes are too large for either.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import get_limits
from .errors import ExactnessError, ResourceError, ValidationError
from .group import GroupSpec

__all__ = [
    "DenseFunction",
    "Spectrum",
    "dft",
    "idft",
    "convolve_star",
    "correlate_circ",
    "conv_power",
    "parseval_residual",
    "wht",
]

ROUNDING_TOL = 1e-6
# largest result magnitude the float FFT route is trusted with
_FFT_EXACT_BOUND = 2.0**40
_INT64_BOUND = 2**62


def _is_exact_dtype(dtype) -> bool:
    return dtype.kind in "iu" or dtype == object


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DenseFunction:
    """A function ``G -> C`` stored as a length-N array in index order."""

    group: GroupSpec
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, copy=True)
        if v.dtype == bool:
            v = v.astype(np.int64)
        if v.shape != (self.group.N,):
            raise ValidationError(f"expected {self.group.N} values, got shape {v.shape}")
        if v.dtype.kind not in "iufc" and v.dtype != object:
            raise ValidationError(f"unsupported dtype {v.dtype}")
        object.__setattr__(self, "values", _freeze(v))

    @classmethod
    def indicator(cls, group: GroupSpec, indices) -> "DenseFunction":
        v = np.zeros(group.N, dtype=np.int64)
        v[np.asarray(indices, dtype=np.int64)] = 1
        return cls(group, v)

    @classmethod
    def delta(cls, group: GroupSpec, index: int = 0) -> "DenseFunction":
        return cls.indicator(group, [index])

    @classmethod
    def constant(cls, group: GroupSpec, c=1) -> "DenseFunction":
        return cls(group, np.full(group.N, c))

    @property
    def exact(self) -> bool:
        return _is_exact_dtype(self.values.dtype)

    @property
    def norm1(self):
        a = np.abs(self.values)
        return int(a.sum()) if self.exact else float(a.sum())

    @property
    def norm_inf(self):
        if self.group.N == 0:
            return 0
        a = np.abs(self.values)
        return int(a.max()) if self.exact else float(a.max())

    def support(self, rel_tol: float = 1e-9) -> np.ndarray:
        """Indices where ``|f| > rel_tol * max|f|`` (``!= 0`` for exact values)."""
        if self.exact:
            return np.flatnonzero(self.values != 0)
        a = np.abs(self.values)
        top = a.max()
        if top == 0:
            return np.zeros(0, dtype=np.int64)
        return np.flatnonzero(a > rel_tol * top)

    def reflect(self) -> "DenseFunction":
        """``x -> f(-x)``."""
        return DenseFunction(self.group, self.values[self.group.neg_table])

    def as_int(self) -> list[int]:
        if not self.exact:
            raise ExactnessError("function is not integer valued")
        return [int(v) for v in self.values]

    def __getitem__(self, idx):
        return self.values[idx]


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Fourier coefficients indexed by the dual group (same index scheme)."""

    group: GroupSpec
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=complex, copy=True)
        if v.shape != (self.group.N,):
            raise ValidationError(f"expected {self.group.N} values, got shape {v.shape}")
        object.__setattr__(self, "values", _freeze(v))

    def __getitem__(self, idx):
        return self.values[idx]


# -- transforms ---------------------------------------------------------------


def wht(values: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform along the last axis.

    The last axis length must be a power of two.  Integer input yields
    integer output.
    """
    x = np.array(values, copy=True)
    n = x.shape[-1]
    if n & (n - 1):
        raise ValidationError(f"length {n} is not a power of two")
    lead = x.shape[:-1]
    h = 1
    while h < n:
        y = x.reshape(lead + (n // (2 * h), 2, h))
        a, b = y[..., 0, :], y[..., 1, :]
        diff = a - b
        a += b
        b[...] = diff
        h *= 2
    return x


def _fft_batch(group: GroupSpec, arr: np.ndarray, inverse: bool = False) -> np.ndarray:
    lead = arr.shape[:-1]
    shaped = arr.reshape(lead + group.shape)
    axes = tuple(range(len(lead), len(lead) + len(group.shape)))
    out = np.fft.ifftn(shaped, axes=axes) if inverse else np.fft.fftn(shaped, axes=axes)
    return out.reshape(lead + (group.N,))


def _naive(group: GroupSpec, values: np.ndarray, inverse: bool = False) -> np.ndarray:
    N = group.N
    if N > get_limits().naive_cutoff:
        raise ResourceError(f"naive transform refused for N={N} > cutoff {get_limits().naive_cutoff}")
    L = group.exponent
    scale = np.array([L // n for n in group.orders], dtype=np.int64)
    cg = group.coords(np.arange(N)) * scale
    sign = 1 if inverse else -1
    roots = np.exp(sign * 2j * np.pi * np.arange(L) / L)
    f = np.asarray(values, dtype=complex)
    out = np.empty(N, dtype=complex)
    chunk = max(1, 2**20 // max(N, 1))
    for start in range(0, N, chunk):
        cx = group.coords(np.arange(start, min(N, start + chunk)))
        phase = (cx @ cg.T) % L if group.orders else np.zeros((len(cx), N), dtype=np.int64)
        out[start : start + len(cx)] = roots[phase] @ f
    return out / N if inverse else out


def dft(f: DenseFunction, method: str = "auto") -> Spectrum:
    """Fourier transform of ``f``.

    ``method`` is one of ``auto``, ``naive``, ``fft``, ``wht``; ``auto``
    picks ``wht`` on elementary abelian 2-groups and ``fft`` otherwise.
    """
    G = f.group
    if method == "auto":
        method = "wht" if G.is_elementary_2 else "fft"
    if method == "naive":
        return Spectrum(G, _naive(G, f.values))
    if method == "wht":
        if not G.is_elementary_2:
            raise ValidationError("Walsh-Hadamard route needs every order equal to 2")
        return Spectrum(G, wht(f.values).astype(complex))
    if method == "fft":
        return Spectrum(G, _fft_batch(G, np.asarray(f.values, dtype=complex)))
    raise ValidationError(f"unknown transform method {method!r}")


def idft(F: Spectrum, method: str = "auto") -> DenseFunction:
    """Inverse transform: ``f(g) = N^-1 sum_xi F(xi) xi(g)``."""
    G = F.group
    if method == "auto":
        method = "wht" if G.is_elementary_2 else "fft"
    if method == "naive":
        return DenseFunction(G, _naive(G, F.values, inverse=True))
    if method == "wht":
        if not G.is_elementary_2:
            raise ValidationError("Walsh-Hadamard route needs every order equal to 2")
        return DenseFunction(G, wht(F.values) / G.N)
    if method == "fft":
        return DenseFunction(G, _fft_batch(G, F.values, inverse=True))
    raise ValidationError(f"unknown transform method {method!r}")


# -- convolution ----------------------------------------------------------------


def _check_same(f: DenseFunction, g: DenseFunction) -> GroupSpec:
    if f.group != g.group:
        raise ValidationError(f"group mismatch: {f.group!r} vs {g.group!r}")
    return f.group


def _roll(group: GroupSpec, values: np.ndarray, shift_index: int) -> np.ndarray:
    """``out[x] = values[x - y]`` for the element ``y`` with the given index."""
    if not group.orders:
        return values
    shaped = values.reshape(group.shape)
    shift = tuple(int(c) for c in group.coords(shift_index))
    return np.roll(shaped, shift, axis=tuple(range(group.rank))).reshape(-1)


def _direct_star(group: GroupSpec, a: np.ndarray, b: np.ndarray, dtype) -> np.ndarray:
    # sum over the sparser operand's support
    if np.count_nonzero(a) > np.count_nonzero(b):
        a, b = b, a
    out = np.zeros(group.N, dtype=dtype)
    bb = b.astype(dtype)
    for y in np.flatnonzero(a):
        out = out + a[y] * _roll(group, bb, int(y))
    return out


def _round_certified(raw: np.ndarray) -> np.ndarray:
    rounded = np.rint(raw.real)
    residual = max(float(np.max(np.abs(raw.real - rounded), initial=0.0)),
                   float(np.max(np.abs(raw.imag), initial=0.0)) if np.iscomplexobj(raw) else 0.0)
    if residual >= ROUNDING_TOL:
        raise ExactnessError(f"rounding residual {residual:.3g} exceeds {ROUNDING_TOL}")
    return rounded.astype(np.int64)


def convolve_star(f: DenseFunction, g: DenseFunction, method: str = "auto") -> DenseFunction:
    """``(f*g)(x) = sum_y f(y) g(x - y)``.

    ``method`` is ``auto``, ``direct`` or ``fft``.  For exact inputs the
    result is exact whatever the route; ``fft`` raises
    :class:`ExactnessError` if it cannot certify the rounding.
    """
    G = _check_same(f, g)
    a, b = f.values, g.values
    if not (f.exact and g.exact):
        if method == "direct":
            return DenseFunction(G, _direct_star(G, a.astype(complex), b.astype(complex), complex))
        raw = _fft_batch(G, _fft_batch(G, a.astype(complex)) * _fft_batch(G, b.astype(complex)), inverse=True)
        if not (np.iscomplexobj(a) or np.iscomplexobj(b)):
            raw = raw.real
        return DenseFunction(G, raw)

    n1f, n1g = f.norm1, g.norm1
    bound = min(n1f * g.norm_inf, n1g * f.norm_inf)
    if method == "auto":
        if G.is_elementary_2 and G.N * n1f * n1g < _INT64_BOUND:
            method = "wht"
        elif bound < _FFT_EXACT_BOUND:
            method = "fft"
        else:
            method = "direct"
    if method == "wht":
        prod = wht(a.astype(np.int64)) * wht(b.astype(np.int64))
        out = wht(prod)
        return DenseFunction(G, out // G.N)
    if method == "fft":
        raw = _fft_batch(G, _fft_batch(G, a.astype(float)) * _fft_batch(G, b.astype(float)), inverse=True)
        return DenseFunction(G, _round_certified(raw))
    if method == "direct":
        dtype = np.int64 if bound < _INT64_BOUND else object
        return DenseFunction(G, _direct_star(G, a, b, dtype))
    raise ValidationError(f"unknown convolution method {method!r}")


def correlate_circ(f: DenseFunction, g: DenseFunction, method: str = "auto") -> DenseFunction:
    """``(f o g)(x) = sum_y f(y) g(y + x)``; for an indicator, ``(A o A)(x) = |A & (A+x)|``."""
    _check_same(f, g)
    return convolve_star(f.reflect(), g, method=method)


def conv_power(f: DenseFunction, k: int, method: str = "auto") -> DenseFunction:
    """``f^(k)``: the (k-1)-fold correlation, folded left, ``f^(k) = f^(k-1) o f``.

    ``k = 1`` returns ``f`` itself (the zero-fold case).
    """
    if k < 1:
        raise ValidationError(f"convolution power needs k >= 1, got {k}")
    out = f
    for _ in range(k - 1):
        out = correlate_circ(out, f, method=method)
    return out


def parseval_residual(f: DenseFunction, method: str = "auto") -> float:
    """Relative gap in ``N sum|f|^2 = sum|F|^2``."""
    G = f.group
    if f.exact and G.is_elementary_2 and method in ("auto", "wht"):
        left = G.N * sum(int(v) * int(v) for v in f.values)
        spec = wht(f.values.astype(object))
        right = sum(int(v) * int(v) for v in spec)
        return abs(left - right) / max(1, left)
    left = G.N * float(np.sum(np.abs(f.values.astype(complex)) ** 2))
    right = float(np.sum(np.abs(dft(f, method=method).values) ** 2))
    return abs(left - right) / max(1.0, left)
