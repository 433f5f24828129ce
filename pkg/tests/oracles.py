"""Brute-force reference implementations.

These work on plain Python ints and tuples and share no code with the
package beyond group construction, so agreement is meaningful.
"""
from __future__ import annotations

import cmath
import itertools
import math
from collections import Counter


def elements(orders):
    """All elements as coordinate tuples, in C-order (first coordinate most significant)."""
    return list(itertools.product(*[range(n) for n in orders]))


def index_of(orders, coords):
    idx = 0
    for c, n in zip(coords, orders):
        idx = idx * n + (c % n)
    return idx


def add(orders, g, h):
    return tuple((a + b) % n for a, b, n in zip(g, h, orders))


def sub(orders, g, h):
    return tuple((a - b) % n for a, b, n in zip(g, h, orders))


def chi(orders, xi, g):
    return cmath.exp(2j * math.pi * sum(x * y / n for x, y, n in zip(xi, g, orders)))


def dft(orders, values):
    """``F(xi) = sum_g f(g) conj(xi(g))`` by direct summation."""
    els = elements(orders)
    return [sum(values[i] * chi(orders, xi, g).conjugate() for i, g in enumerate(els)) for xi in els]


def convolve(orders, f, g):
    """``(f*g)(x) = sum_y f(y) g(x - y)``."""
    els = elements(orders)
    out = [0] * len(els)
    for i, x in enumerate(els):
        out[i] = sum(f[j] * g[index_of(orders, sub(orders, x, y))] for j, y in enumerate(els))
    return out


def members(orders, mask):
    els = elements(orders)
    return [els[i] for i, m in enumerate(mask) if m]


def intersect_count(orders, A, shifts):
    """``|A & (A + x_1) & ...|`` for coordinate-tuple shifts."""
    Aset = set(A)
    return sum(1 for a in A if all(sub(orders, a, x) in Aset for x in shifts))


def energy(orders, A, B):
    """Quadruples ``a1 - b1 = a2 - b2``."""
    diffs = Counter(sub(orders, a, b) for a in A for b in B)
    return sum(c * c for c in diffs.values())


def t_k(orders, A, k):
    """``2k``-tuples with equal k-fold sums."""
    zero = tuple(0 for _ in orders)
    sums = Counter()
    for tup in itertools.product(A, repeat=k):
        s = zero
        for a in tup:
            s = add(orders, s, a)
        sums[s] += 1
    return sum(c * c for c in sums.values())


def conv_power_at(orders, A, k, x):
    """``A^(k)(x)``: tuples ``a_1 - a_2 + a_3 - ... = x`` counted via the left fold of correlations."""
    els = elements(orders)
    Aset = set(A)
    cur = {g: (1 if g in Aset else 0) for g in els}
    for _ in range(k - 1):
        cur = {y: sum(cur[z] for z in els if add(orders, z, y) in Aset) for y in els}
    return cur[x]


def sumset(orders, A, B, sign=1):
    return {add(orders, a, b) if sign > 0 else sub(orders, a, b) for a in A for b in B}


def rho(orders, A):
    zero = tuple(0 for _ in orders)
    return max((intersect_count(orders, A, [x]) for x in elements(orders) if x != zero), default=0)


def rho_l_exhaustive(orders, A, l):
    """Unnormalised search over every l-subset of G."""
    return max(intersect_count(orders, A, X) for X in itertools.combinations(elements(orders), l))


def higher_diff(orders, A, k):
    return {tuple(sub(orders, ai, a) for ai in tup) for a in A for tup in itertools.product(A, repeat=k)}


def energy_kl(orders, A, k, l):
    """Sum over all (k-1)-tuples of shifts of ``|A & (A+x_1) & ...|^l``."""
    return sum(intersect_count(orders, A, X) ** l for X in itertools.product(elements(orders), repeat=k - 1))
