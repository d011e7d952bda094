"""Arithmetic of nonzero-degree sets.

The degrees at which a group-like tensor series is nonzero form a set that is
closed under addition inside the inspected window.  An additively closed set
whose complement is infinite must sit inside the multiples of some d >= 2; the
gcd of the observed elements decides which branch applies.  Everything here is
relative to a finite inspection depth and says so explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Optional

from .algebra import ScalarKind, TruncatedTensor

FROBENIUS_GUARD = 10**6


@dataclass(frozen=True)
class DegreePattern:
    """Degrees n <= depth at which a tensor is nonzero, plus certification."""

    depth: int
    nonzero: tuple[int, ...]
    exact: bool

    def to_dict(self) -> dict:
        return {"depth": self.depth, "nonzero": list(self.nonzero), "exact": self.exact}

    def divisible_by(self, d: int) -> bool:
        return all(n % d == 0 for n in self.nonzero)

    @property
    def is_trivial(self) -> bool:
        return not self.nonzero


@dataclass(frozen=True)
class AdditiveCheck:
    closed: bool
    missing: Optional[int]
    bound: int

    def to_dict(self) -> dict:
        return {"closed": self.closed, "missing": self.missing, "bound": self.bound}


def extract_pattern(g: TruncatedTensor, tol: float = 0.0) -> DegreePattern:
    """Degrees with some coefficient of magnitude above ``tol``.

    Rational tensors certify exact zeros, so they demand ``tol == 0``.
    """
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    if g.kind is ScalarKind.RATIONAL and tol != 0:
        raise ValueError("rational mode certifies exact zeros; tolerance must be 0")
    nonzero = []
    for n in range(1, g.depth + 1):
        lvl = g.level(n)
        if g.kind is ScalarKind.RATIONAL:
            hit = any(c != 0 for c in lvl)
        else:
            hit = bool((abs(lvl) > tol).any())
        if hit:
            nonzero.append(n)
    return DegreePattern(g.depth, tuple(nonzero), g.kind is ScalarKind.RATIONAL)


def verify_additive(elements: Iterable[int], bound: int) -> AdditiveCheck:
    """Is the set closed under addition below ``bound``?

    Reports the smallest sum of two members that escapes the set, if any.
    """
    s = set(elements)
    if any(x < 1 for x in s):
        raise ValueError("elements must be positive integers")
    missing = None
    for i, j in combinations_with_replacement(sorted(s), 2):
        total = i + j
        if total <= bound and total not in s:
            missing = total if missing is None else min(missing, total)
    return AdditiveCheck(missing is None, missing, bound)


def min_modulus(elements: Iterable[int]) -> Optional[int]:
    """gcd-based modulus of an additively closed set: d >= 2, or None if gcd is 1.

    With gcd 1 the generated semigroup has finite complement (see
    ``frobenius_number``); otherwise every element is a multiple of d.
    """
    s = sorted(set(elements))
    if not s:
        raise ValueError("empty set has no modulus")
    check = verify_additive(s, s[-1])
    if not check.closed:
        raise ValueError(f"set is not additively closed below {s[-1]}: missing {check.missing}")
    d = 0
    for x in s:
        d = math.gcd(d, x)
    return d if d >= 2 else None


def frobenius_number(generators: Iterable[int]) -> int:
    """Largest integer not representable as a nonnegative combination.

    Plain dynamic-programming scan up to min*max, valid whenever the
    generators are >= 2 with overall gcd 1.
    """
    gens = sorted(set(generators))
    if not gens:
        raise ValueError("need at least one generator")
    if any(g < 2 for g in gens):
        raise ValueError("generators must be >= 2")
    d = 0
    for g in gens:
        d = math.gcd(d, g)
    if d != 1:
        raise ValueError(f"generators have gcd {d}; Frobenius number undefined")
    bound = gens[0] * gens[-1]
    if bound > FROBENIUS_GUARD:
        raise ValueError(f"min*max = {bound} exceeds brute-force guard {FROBENIUS_GUARD}")
    representable = [False] * (bound + 1)
    representable[0] = True
    for x in range(1, bound + 1):
        representable[x] = any(x >= g and representable[x - g] for g in gens)
    return max(x for x in range(bound + 1) if not representable[x])


def semigroup_window(generators: Iterable[int], bound: int) -> list[int]:
    """All nonzero elements of the generated additive semigroup up to ``bound``."""
    gens = sorted(set(generators))
    if any(g < 1 for g in gens):
        raise ValueError("generators must be positive")
    reach = [False] * (bound + 1)
    reach[0] = True
    for x in range(1, bound + 1):
        reach[x] = any(x >= g and reach[x - g] for g in gens)
    return [x for x in range(1, bound + 1) if reach[x]]
