"""Normalized signature-norm sequences and their finite-depth trace.

For a tensor series ``g`` the degree-n term is ``b_n = n! * ||g_n||`` and its
normalized root ``a_n = b_n^(1/n)``, defined only where ``g_n`` is nonzero.
For group-like ``g`` the sequence ``b`` is supermultiplicative, which drives
the running supremum ``S_N = max a_n``; for the signature of a path of length
``L`` (in the matching base norm) factorial decay caps ``S_N`` at ``L``.
Only the finite-depth trace is reported -- no limits are extrapolated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import NormKind, ScalarKind, TruncatedTensor, level_norm
from .paths import PiecewiseLinearPath, path_length, signature

#: multiplicative slack absorbing float rounding in the supermultiplicativity test
SUPERMULT_SLACK = 1e-9
#: multiplicative slack for the factorial-decay comparison in float mode
DECAY_SLACK = 1e-12


@dataclass(frozen=True)
class DegreeTerm:
    n: int
    b: float
    b_exact: Optional[str]  # exact value of n!*||g_n||, when the norm is exact
    a: Optional[float]      # b^(1/n); None where the level vanishes

    def to_dict(self) -> dict:
        return {"n": self.n, "b": self.b, "b_exact": self.b_exact, "a": self.a}


@dataclass(frozen=True)
class AsymptoticsReport:
    depth: int
    norm: NormKind
    scalar: ScalarKind
    terms: tuple[DegreeTerm, ...]
    sup: Optional[float]                      # S_N over nonzero degrees
    violations: tuple[tuple[int, int], ...]   # (i, j) with b_{i+j} < b_i*b_j*(1-slack)
    length: Optional[float]
    ratio: Optional[float]
    trivial: bool
    sup_within_length: Optional[bool]

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "norm": self.norm.value,
            "scalar": self.scalar.value,
            "terms": [t.to_dict() for t in self.terms],
            "sup": self.sup,
            "violations": [list(v) for v in self.violations],
            "length": self.length,
            "ratio": self.ratio,
            "trivial": self.trivial,
            "sup_within_length": self.sup_within_length,
        }


def analyze(g: TruncatedTensor, kind: NormKind,
            length: Fraction | float | None = None) -> AsymptoticsReport:
    """Per-degree normalized norms, running supremum, and supermultiplicativity.

    ``b_n`` is exact (and carried as a string) in rational mode under the l1
    norm; roots are always binary64.  Degrees with a vanishing level are
    reported with ``a = None`` and excluded from the supremum.
    """
    if g.level(0)[0] != 1:
        raise ValueError("asymptotics expects a series with unit constant term")
    terms = []
    b_vals = [None]  # degree 0 placeholder
    for n in range(1, g.depth + 1):
        norm = level_norm(g, n, kind)
        exact = isinstance(norm, Fraction)
        b_frac = math.factorial(n) * norm if exact else None
        b = float(b_frac) if exact else math.factorial(n) * float(norm)
        zero = g.is_zero_level(n)
        a = None if zero else b ** (1.0 / n)
        terms.append(DegreeTerm(n, b, str(b_frac) if exact else None, a))
        b_vals.append(b)
    defined = [t.a for t in terms if t.a is not None]
    sup = max(defined) if defined else None
    violations = []
    for i in range(1, g.depth + 1):
        for j in range(i, g.depth + 1 - i):
            if b_vals[i + j] < b_vals[i] * b_vals[j] * (1.0 - SUPERMULT_SLACK):
                violations.append((i, j))
    length_f = None if length is None else float(length)
    ratio = None
    within = None
    if length_f is not None and sup is not None:
        ratio = sup / length_f if length_f else math.inf
        within = sup <= length_f * (1.0 + DECAY_SLACK)
    elif length_f is not None:
        within = True  # trivial signature: nothing exceeds the length
    return AsymptoticsReport(
        depth=g.depth, norm=kind, scalar=g.kind, terms=tuple(terms), sup=sup,
        violations=tuple(violations), length=length_f, ratio=ratio,
        trivial=sup is None, sup_within_length=within)


def length_estimate(path: PiecewiseLinearPath, kind: NormKind,
                    depth: int) -> AsymptoticsReport:
    """Signature-based length trace: S_N against the true polygonal length.

    ``S_N <= length`` always holds (factorial decay); equality at finite depth
    is special to monotone staircases under the l1 pairing.
    """
    g = signature(path, depth)
    return analyze(g, kind, length=path_length(path, kind))
