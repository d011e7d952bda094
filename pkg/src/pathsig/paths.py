"""Piecewise-linear paths: exact signatures, a Riemann-sum oracle, tree
reduction, and length.

The signature of a polygonal path is computed exactly as the Chen product of
per-segment exponentials.  ``riemann_signature`` rebuilds it independently as
iterated left-point Riemann sums on a uniform time grid and is the numerical
cross-check for the algebraic route.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import NormKind, ScalarKind, TruncatedTensor, _zeros

_RIEMANN_BLOCK = 16384


class PiecewiseLinearPath:
    """Ordered vertex list in R^d; consecutive duplicate vertices are dropped.

    Coordinates are either all exact rationals (ints, Fractions, "p/q"
    strings) or binary64 floats; the scalar kind is inferred unless given.
    """

    __slots__ = ("dimension", "kind", "vertices")

    def __init__(self, points: Sequence[Sequence], kind: ScalarKind | None = None):
        pts = [tuple(p) for p in points]
        if not pts:
            raise ValueError("a path needs at least one vertex")
        dim = len(pts[0])
        if dim < 1:
            raise ValueError("vertices must have at least one coordinate")
        if any(len(p) != dim for p in pts):
            raise ValueError("all vertices must have identical dimension")
        if kind is None:
            exact = all(isinstance(c, (int, Fraction, str)) for p in pts for c in p)
            kind = ScalarKind.RATIONAL if exact else ScalarKind.F64
        if kind is ScalarKind.C64:
            raise ValueError("paths live in a real vector space")
        conv = Fraction if kind is ScalarKind.RATIONAL else float
        pts = [tuple(conv(c) for c in p) for p in pts]
        deduped = [pts[0]]
        for p in pts[1:]:
            if p != deduped[-1]:
                deduped.append(p)
        object.__setattr__(self, "dimension", dim)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "vertices", tuple(deduped))

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("PiecewiseLinearPath is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, PiecewiseLinearPath):
            return NotImplemented
        return (self.dimension, self.kind, self.vertices) == \
            (other.dimension, other.kind, other.vertices)

    __hash__ = None

    def __repr__(self) -> str:
        return (f"PiecewiseLinearPath(d={self.dimension}, "
                f"{len(self.vertices)} vertices, {self.kind.value})")

    @property
    def num_segments(self) -> int:
        return len(self.vertices) - 1

    @property
    def is_trivial(self) -> bool:
        return len(self.vertices) == 1

    def increments(self) -> list[tuple]:
        return [tuple(b - a for a, b in zip(p, q))
                for p, q in zip(self.vertices, self.vertices[1:])]

    def to_float(self) -> "PiecewiseLinearPath":
        if self.kind is ScalarKind.F64:
            return self
        return PiecewiseLinearPath([[float(c) for c in p] for p in self.vertices],
                                   kind=ScalarKind.F64)

    def to_rational(self) -> "PiecewiseLinearPath":
        """Exact lift; binary64 coordinates are dyadic rationals, so lossless."""
        if self.kind is ScalarKind.RATIONAL:
            return self
        return PiecewiseLinearPath([[Fraction(c) for c in p] for p in self.vertices],
                                   kind=ScalarKind.RATIONAL)


def concat(p: PiecewiseLinearPath, q: PiecewiseLinearPath) -> PiecewiseLinearPath:
    """Concatenation, translating ``q`` so it starts at the endpoint of ``p``."""
    if p.dimension != q.dimension or p.kind is not q.kind:
        raise ValueError("concatenation needs matching dimension and scalar kind")
    shift = tuple(a - b for a, b in zip(p.vertices[-1], q.vertices[0]))
    moved = [tuple(c + s for c, s in zip(v, shift)) for v in q.vertices]
    return PiecewiseLinearPath(list(p.vertices) + moved[1:], kind=p.kind)


def _segment_exp(dimension: int, depth: int, kind: ScalarKind,
                 increment: Sequence) -> TruncatedTensor:
    """exp of a degree-1 element: level k is increment^(x)k / k!.

    Closed form of the tensor exponential for a straight segment; agrees
    exactly with the generic series.
    """
    v = np.empty(dimension, dtype=kind.dtype)
    for i, c in enumerate(increment):
        v[i] = Fraction(c) if kind is ScalarKind.RATIONAL else float(c)
    levels = [_zeros(1, kind)]
    levels[0][0] = Fraction(1) if kind is ScalarKind.RATIONAL else 1.0
    prev = levels[0]
    for k in range(1, depth + 1):
        inv = Fraction(1, k) if kind is ScalarKind.RATIONAL else 1.0 / k
        prev = np.multiply.outer(prev, v * inv).reshape(-1)
        levels.append(prev)
    return TruncatedTensor._wrap(dimension, depth, kind, levels)


def signature(path: PiecewiseLinearPath, depth: int) -> TruncatedTensor:
    """Signature of the path, truncated at ``depth``.

    Chen's identity reduces a polygonal path to the tensor product of its
    segment exponentials; with rational vertices the result is exact.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    kind = path.kind
    acc = TruncatedTensor.unit(path.dimension, depth, kind)
    for inc in path.increments():
        acc = acc * _segment_exp(path.dimension, depth, kind, inc)
    return acc


def riemann_signature(path: PiecewiseLinearPath, depth: int,
                      mesh: float) -> TruncatedTensor:
    """Iterated left-point Riemann sums for the signature on a uniform grid.

    The path is parametrized at constant speed over [0, 1] and sampled every
    ``mesh`` units of time; degree k accumulates
    ``sum_{j1<...<jk} dw_{j1} (x) ... (x) dw_{jk}``.  Converges to
    ``signature(path, depth)`` at first order in ``mesh``.  Float-only.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if not 0 < mesh <= 1:
        raise ValueError("mesh must lie in (0, 1]")
    d = path.dimension
    if path.is_trivial:
        return TruncatedTensor.unit(d, depth, ScalarKind.F64)
    verts = np.array([[float(c) for c in p] for p in path.vertices])
    seg_len = np.sqrt(((verts[1:] - verts[:-1]) ** 2).sum(axis=1))
    cum = np.concatenate([[0.0], np.cumsum(seg_len)])
    breaks = cum / cum[-1]
    steps = int(round(1.0 / mesh))
    if steps < path.num_segments:
        raise ValueError("mesh must subdivide every segment at least once")
    times = np.linspace(0.0, 1.0, steps + 1)
    samples = np.column_stack([np.interp(times, breaks, verts[:, i]) for i in range(d)])
    deltas = np.diff(samples, axis=0)

    totals = [np.zeros(d**k) for k in range(depth + 1)]
    totals[0][0] = 1.0
    carry = [t.copy() for t in totals]  # running sums S_k(j) at the block edge
    for start in range(0, steps, _RIEMANN_BLOCK):
        blk = deltas[start:start + _RIEMANN_BLOCK]
        b = blk.shape[0]
        prev_stream = np.ones((b, 1))
        for k in range(1, depth + 1):
            # left-point rule: degree k at step j uses degree k-1 up to j-1
            shifted = np.vstack([carry[k - 1][None, :], prev_stream[:-1]])
            contrib = (shifted[:, :, None] * blk[:, None, :]).reshape(b, -1)
            stream = np.cumsum(contrib, axis=0) + carry[k][None, :]
            prev_stream = stream
            carry[k] = stream[-1].copy()
        carry[0] = np.ones(1)
    levels = [np.array([1.0])] + [carry[k] for k in range(1, depth + 1)]
    return TruncatedTensor._wrap(d, depth, ScalarKind.F64, levels)


def path_length(path: PiecewiseLinearPath, kind: NormKind):
    """Total variation in the base norm paired with ``kind`` (l1 or l2).

    Exact Fraction for rational paths under the l1 pairing; float otherwise.
    """
    incs = path.increments()
    if kind is NormKind.L1_PROJECTIVE:
        total = sum((abs(c) for inc in incs for c in inc),
                    Fraction(0) if path.kind is ScalarKind.RATIONAL else 0.0)
        return total
    total = 0.0
    for inc in incs:
        total += float(np.sqrt(sum(float(c) * float(c) for c in inc)))
    return total


def _collinear(u: Sequence, v: Sequence) -> bool:
    """Exact test that two increments span the same line (any orientation)."""
    ur = [Fraction(c) for c in u]
    vr = [Fraction(c) for c in v]
    n = len(ur)
    for i in range(n):
        for j in range(i + 1, n):
            if ur[i] * vr[j] != ur[j] * vr[i]:
                return False
    return True


def tree_reduce(path: PiecewiseLinearPath) -> PiecewiseLinearPath:
    """Remove zero segments, merge collinear neighbours, cancel backtracks.

    Any two consecutive collinear segments trace a sub-path confined to one
    line, whose signature depends only on the net displacement; the pair is
    therefore replaced by its chord.  Iterating to a fixed point also resolves
    nested cancellations and partial backtracks.  The reduction preserves the
    signature exactly but does not chase non-adjacent tree-like excursions.
    """
    stack: list[tuple] = []
    for vertex in path.vertices:
        stack.append(vertex)
        while True:
            if len(stack) >= 2 and stack[-1] == stack[-2]:
                stack.pop()
                continue
            if len(stack) >= 3:
                u = tuple(b - a for a, b in zip(stack[-3], stack[-2]))
                v = tuple(b - a for a, b in zip(stack[-2], stack[-1]))
                if _collinear(u, v):
                    del stack[-2]
                    continue
            break
    return PiecewiseLinearPath(stack, kind=path.kind)


def insert_midpoints(path: PiecewiseLinearPath) -> PiecewiseLinearPath:
    """Reparametrization surrogate: add the midpoint of every segment."""
    two = Fraction(2) if path.kind is ScalarKind.RATIONAL else 2.0
    verts: list[tuple] = [path.vertices[0]]
    for a, b in zip(path.vertices, path.vertices[1:]):
        verts.append(tuple((x + y) / two for x, y in zip(a, b)))
        verts.append(b)
    return PiecewiseLinearPath(verts, kind=path.kind)
