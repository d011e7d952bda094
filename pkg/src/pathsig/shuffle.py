"""Shuffle enumeration, shuffle projections, and the group-like test.

A tensor series ``g`` with unit constant term is group-like when
``g_m (x) g_n`` equals the sum of permuted copies of ``g_{m+n}`` over all
(m,n)-shuffles, for every bidegree.  Signatures of bounded-variation paths
satisfy this identity exactly; the checks here verify it level by level up
to the truncation depth.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .algebra import ScalarKind, TruncatedTensor, permute_level

#: enumeration guard: C(m+n, m) stays desk-sized below this total degree
MAX_SHUFFLE_DEGREE = 12


@dataclass(frozen=True)
class ShuffleSet:
    """All (m,n)-shuffles: permutations of {1..m+n} that keep positions
    1..m and positions m+1..m+n in increasing order."""

    m: int
    n: int
    permutations: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.permutations)


@lru_cache(maxsize=None)
def enumerate_shuffles(m: int, n: int) -> ShuffleSet:
    """Complete, duplicate-free list of (m,n)-shuffles, in deterministic order."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be >= 1")
    if m + n > MAX_SHUFFLE_DEGREE:
        raise ValueError(f"m+n = {m + n} exceeds enumeration guard {MAX_SHUFFLE_DEGREE}")
    total = m + n
    perms = []
    for first_block in itertools.combinations(range(1, total + 1), m):
        rest = [v for v in range(1, total + 1) if v not in first_block]
        perms.append(tuple(first_block) + tuple(rest))
    assert len(perms) == comb(total, m)
    return ShuffleSet(m, n, tuple(perms))


def _invert(sigma: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(sigma)
    for pos, val in enumerate(sigma, start=1):
        inv[val - 1] = pos
    return tuple(inv)


def shuffle_project(g: TruncatedTensor, m: int, n: int) -> np.ndarray:
    """Sum of shuffle-permuted copies of the degree-(m+n) part of ``g``.

    For group-like ``g`` this equals the degree-wise tensor product
    ``g_m (x) g_n``, returned as a flat degree-(m+n) coefficient array.
    """
    if m + n > g.depth:
        raise ValueError(f"m+n = {m + n} exceeds tensor depth {g.depth}")
    shuffles = enumerate_shuffles(m, n)
    top = g.level(m + n)
    acc = None
    for sigma in shuffles.permutations:
        # A shuffle sigma sends slot j to position sigma(j), so the
        # coefficient lookup goes through the inverse permutation.
        piece = permute_level(top, g.dimension, m + n, _invert(sigma))
        acc = piece if acc is None else acc + piece
    return acc


@dataclass(frozen=True)
class PairResidual:
    m: int
    n: int
    residual: float


@dataclass(frozen=True)
class GroupLikeReport:
    depth: int
    tolerance: float
    pairs: tuple[PairResidual, ...]
    passed: bool

    def to_dict(self) -> dict:
        return {
            "pairs": [{"m": p.m, "n": p.n, "residual": p.residual} for p in self.pairs],
            "pass": self.passed,
        }


def group_like_check(g: TruncatedTensor, tol: float = 0.0) -> GroupLikeReport:
    """Verify the shuffle identity at every bidegree with m+n <= depth.

    The residual for (m, n) is the max absolute coefficient of
    ``g_m (x) g_n - shuffle_project(g, m, n)``.  In rational mode the
    tolerance must be exactly zero.
    """
    if g.level(0)[0] != 1:
        raise ValueError("group-like check requires constant term exactly 1")
    if g.kind is ScalarKind.RATIONAL and tol != 0:
        raise ValueError("rational mode certifies exact zeros; tolerance must be 0")
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    pairs = []
    ok = True
    for total in range(2, g.depth + 1):
        for m in range(1, total):
            n = total - m
            lhs = np.multiply.outer(g.level(m), g.level(n)).reshape(-1)
            diff = lhs - shuffle_project(g, m, n)
            if g.kind is ScalarKind.RATIONAL:
                residual = float(max((abs(c) for c in diff), default=Fraction(0)))
            else:
                residual = float(np.abs(diff).max())
            pairs.append(PairResidual(m, n, residual))
            if residual > tol:
                ok = False
    return GroupLikeReport(g.depth, tol, tuple(pairs), ok)
