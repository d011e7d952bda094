"""Dense truncated tensor algebra over exact rationals, floats, or complex floats.

An element of the algebra truncated at depth ``N`` over dimension ``d`` stores
one flat coefficient array per degree ``k`` in ``0..N``.  The degree-``k``
array has length ``d**k`` and is indexed by words ``(i_1, ..., i_k)`` with
letters in ``1..d``, at offset ``sum((i_j - 1) * d**(k - j))`` -- i.e. plain
row-major order, so ``level.reshape((d,) * k)`` recovers the word axes.

All values are immutable after construction and every operation is a pure
function, so tensors can be shared freely between threads.
"""

from __future__ import annotations

import cmath
import enum
import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np


class ShapeMismatchError(ValueError):
    """Raised when two tensors disagree on dimension, depth or scalar kind."""


class ScalarKind(enum.Enum):
    """Base scalar field of a tensor: exact rational, binary64, or complex binary64."""

    RATIONAL = "rational"
    F64 = "f64"
    C64 = "c64"

    @property
    def dtype(self) -> np.dtype:
        return _DTYPES[self]


_DTYPES = {
    ScalarKind.RATIONAL: np.dtype(object),
    ScalarKind.F64: np.dtype(np.float64),
    ScalarKind.C64: np.dtype(np.complex128),
}


class NormKind(enum.Enum):
    """Per-level coordinate norm: l1 (projective over l1) or l2 (Hilbert-Schmidt)."""

    L1_PROJECTIVE = "l1proj"
    L2_HILBERT_SCHMIDT = "l2hs"


def coerce_scalar(value, kind: ScalarKind):
    """Convert ``value`` to the scalar type of ``kind``, rejecting lossy casts."""
    if kind is ScalarKind.RATIONAL:
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise TypeError(f"rational tensors take int/Fraction coefficients, got {type(value).__name__}")
    if kind is ScalarKind.F64:
        if isinstance(value, complex):
            raise TypeError("f64 tensors cannot hold complex coefficients")
        return float(value)
    if isinstance(value, Fraction):
        return complex(float(value))
    return complex(value)


def word_index(dimension: int, word: Sequence[int]) -> int:
    """Flat offset of a word (1-based letters) inside its degree-``len(word)`` level."""
    idx = 0
    for letter in word:
        if not 1 <= letter <= dimension:
            raise ValueError(f"letter {letter} outside alphabet 1..{dimension}")
        idx = idx * dimension + (letter - 1)
    return idx


def _zeros(length: int, kind: ScalarKind) -> np.ndarray:
    if kind is ScalarKind.RATIONAL:
        arr = np.empty(length, dtype=object)
        arr[:] = Fraction(0)
        return arr
    return np.zeros(length, dtype=kind.dtype)


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


class TruncatedTensor:
    """Element of the tensor algebra over R^d or C^d truncated at a fixed depth."""

    __slots__ = ("dimension", "depth", "kind", "levels")

    def __init__(self, dimension: int, depth: int, kind: ScalarKind,
                 levels: Sequence[Iterable]):
        if dimension < 1:
            raise ValueError("dimension must be a positive integer")
        if depth < 1:
            raise ValueError("depth must be a positive integer")
        if len(levels) != depth + 1:
            raise ValueError(f"expected {depth + 1} levels, got {len(levels)}")
        coerced = []
        for k, lvl in enumerate(levels):
            want = dimension**k
            arr = np.empty(want, dtype=kind.dtype)
            data = list(lvl)
            if len(data) != want:
                raise ValueError(f"level {k} must have {want} coefficients, got {len(data)}")
            for i, c in enumerate(data):
                arr[i] = coerce_scalar(c, kind)
            coerced.append(_freeze(arr))
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "depth", depth)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "levels", tuple(coerced))

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("TruncatedTensor is immutable")

    @classmethod
    def _wrap(cls, dimension: int, depth: int, kind: ScalarKind,
              levels: list[np.ndarray]) -> "TruncatedTensor":
        """Trusted constructor: arrays already have the right dtype and shape."""
        self = object.__new__(cls)
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "depth", depth)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "levels", tuple(_freeze(a) for a in levels))
        return self

    @classmethod
    def zero(cls, dimension: int, depth: int, kind: ScalarKind) -> "TruncatedTensor":
        return cls._wrap(dimension, depth, kind,
                         [_zeros(dimension**k, kind) for k in range(depth + 1)])

    @classmethod
    def unit(cls, dimension: int, depth: int, kind: ScalarKind) -> "TruncatedTensor":
        levels = [_zeros(dimension**k, kind) for k in range(depth + 1)]
        levels[0] = levels[0].copy()
        levels[0][0] = coerce_scalar(1, kind)
        return cls._wrap(dimension, depth, kind, levels)

    @classmethod
    def from_level(cls, dimension: int, depth: int, degree: int,
                   coefficients: Iterable, kind: ScalarKind) -> "TruncatedTensor":
        """Tensor that is zero except at one degree."""
        if not 0 <= degree <= depth:
            raise ValueError(f"degree {degree} outside 0..{depth}")
        levels = [_zeros(dimension**k, kind) for k in range(depth + 1)]
        data = list(coefficients)
        if len(data) != dimension**degree:
            raise ValueError(f"degree {degree} needs {dimension**degree} coefficients")
        lvl = np.empty(dimension**degree, dtype=kind.dtype)
        for i, c in enumerate(data):
            lvl[i] = coerce_scalar(c, kind)
        levels[degree] = lvl
        return cls._wrap(dimension, depth, kind, levels)

    @classmethod
    def basis_vector(cls, dimension: int, depth: int, letter: int,
                     kind: ScalarKind = ScalarKind.RATIONAL) -> "TruncatedTensor":
        coeffs = [0] * dimension
        coeffs[letter - 1] = 1
        return cls.from_level(dimension, depth, 1, coeffs, kind)

    # -- inspection ---------------------------------------------------------

    def level(self, k: int) -> np.ndarray:
        if not 0 <= k <= self.depth:
            raise ValueError(f"degree {k} outside 0..{self.depth}")
        return self.levels[k]

    def coefficient(self, word: Sequence[int]):
        """Coefficient of a word given as a tuple of 1-based letters."""
        k = len(word)
        return self.level(k)[word_index(self.dimension, word)]

    def is_zero_level(self, k: int) -> bool:
        lvl = self.level(k)
        if self.kind is ScalarKind.RATIONAL:
            return all(c == 0 for c in lvl)
        return bool(np.all(lvl == 0))

    def max_abs(self) -> float:
        worst = 0.0
        for lvl in self.levels:
            if self.kind is ScalarKind.RATIONAL:
                worst = max(worst, float(max(abs(c) for c in lvl)))
            else:
                worst = max(worst, float(np.abs(lvl).max()))
        return worst

    def total_coefficients(self) -> int:
        return sum(len(lvl) for lvl in self.levels)

    # -- conversions --------------------------------------------------------

    def astype(self, kind: ScalarKind) -> "TruncatedTensor":
        if kind is self.kind:
            return self
        if self.kind is ScalarKind.C64 and kind is not ScalarKind.C64:
            raise TypeError("cannot narrow a complex tensor to a real scalar kind")
        if kind is ScalarKind.RATIONAL:
            raise TypeError("cannot convert float coefficients to exact rationals implicitly")
        levels = [lvl.astype(kind.dtype) for lvl in self.levels]
        return TruncatedTensor._wrap(self.dimension, self.depth, kind, levels)

    # -- arithmetic ---------------------------------------------------------

    def _check_compatible(self, other: "TruncatedTensor") -> None:
        if (self.dimension, self.depth, self.kind) != (other.dimension, other.depth, other.kind):
            raise ShapeMismatchError(
                f"tensor shapes differ: (d={self.dimension}, N={self.depth}, {self.kind.value})"
                f" vs (d={other.dimension}, N={other.depth}, {other.kind.value})")

    def __add__(self, other: "TruncatedTensor") -> "TruncatedTensor":
        if not isinstance(other, TruncatedTensor):
            return NotImplemented
        self._check_compatible(other)
        return TruncatedTensor._wrap(
            self.dimension, self.depth, self.kind,
            [a + b for a, b in zip(self.levels, other.levels)])

    def __sub__(self, other: "TruncatedTensor") -> "TruncatedTensor":
        if not isinstance(other, TruncatedTensor):
            return NotImplemented
        self._check_compatible(other)
        return TruncatedTensor._wrap(
            self.dimension, self.depth, self.kind,
            [a - b for a, b in zip(self.levels, other.levels)])

    def __neg__(self) -> "TruncatedTensor":
        return TruncatedTensor._wrap(self.dimension, self.depth, self.kind,
                                     [-a for a in self.levels])

    def __mul__(self, other):
        """Tensor-concatenation product with a tensor, or scalar multiplication."""
        if isinstance(other, TruncatedTensor):
            self._check_compatible(other)
            d, N = self.dimension, self.depth
            out = []
            for k in range(N + 1):
                acc = _zeros(d**k, self.kind)
                for p in range(k + 1):
                    acc = acc + np.multiply.outer(self.levels[p], other.levels[k - p]).reshape(-1)
                out.append(acc)
            return TruncatedTensor._wrap(d, N, self.kind, out)
        s = coerce_scalar(other, self.kind)
        return TruncatedTensor._wrap(self.dimension, self.depth, self.kind,
                                     [lvl * s for lvl in self.levels])

    def __rmul__(self, other):
        if isinstance(other, TruncatedTensor):  # pragma: no cover - handled by __mul__
            return NotImplemented
        return self.__mul__(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedTensor):
            return NotImplemented
        if (self.dimension, self.depth, self.kind) != (other.dimension, other.depth, other.kind):
            return False
        return all(bool(np.all(a == b)) for a, b in zip(self.levels, other.levels))

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    __hash__ = None  # value equality without hashing; tensors are not dict keys

    def __repr__(self) -> str:
        return (f"TruncatedTensor(d={self.dimension}, N={self.depth}, "
                f"kind={self.kind.value})")


def max_abs_diff(a: TruncatedTensor, b: TruncatedTensor) -> float:
    """Largest absolute coefficient difference across all levels.

    Scalar kinds may differ; coefficients are compared as complex numbers.
    """
    if (a.dimension, a.depth) != (b.dimension, b.depth):
        raise ShapeMismatchError("tensors differ in dimension or depth")
    worst = 0.0
    for la, lb in zip(a.levels, b.levels):
        if la.dtype == object or lb.dtype == object:
            for ca, cb in zip(la, lb):
                worst = max(worst, abs(complex(ca) - complex(cb)))
        else:
            worst = max(worst, float(np.abs(la.astype(np.complex128) -
                                            lb.astype(np.complex128)).max()))
    return worst


def tensor_exp(x: TruncatedTensor) -> TruncatedTensor:
    """exp in the truncated algebra; requires a vanishing constant term.

    The series stops at the truncation depth because ``x`` is nilpotent there.
    """
    if not x.is_zero_level(0):
        raise ValueError("tensor exponential requires a zero constant term")
    acc = TruncatedTensor.unit(x.dimension, x.depth, x.kind)
    term = acc
    for k in range(1, x.depth + 1):
        inv = Fraction(1, k) if x.kind is ScalarKind.RATIONAL else 1.0 / k
        term = (term * x) * inv
        acc = acc + term
    return acc


def tensor_log(g: TruncatedTensor) -> TruncatedTensor:
    """log in the truncated algebra; requires a unit constant term."""
    lvl0 = g.level(0)[0]
    if lvl0 != 1:
        raise ValueError("tensor logarithm requires constant term exactly 1")
    y = g - TruncatedTensor.unit(g.dimension, g.depth, g.kind)
    power = y
    acc = y
    for k in range(2, g.depth + 1):
        power = power * y
        coeff = Fraction((-1)**(k + 1), k) if g.kind is ScalarKind.RATIONAL else (-1.0)**(k + 1) / k
        acc = acc + power * coeff
    return acc


def permute(x: TruncatedTensor, k: int, sigma: Sequence[int]) -> TruncatedTensor:
    """Apply a degree-``k`` permutation: output at word ``w`` reads input at ``w∘sigma``.

    ``sigma`` is given as the tuple ``(sigma(1), ..., sigma(k))`` with 1-based values.
    Other levels are copied unchanged; coordinate norms are invariant under this map.
    """
    if not 1 <= k <= x.depth:
        raise ValueError(f"degree {k} outside 1..{x.depth}")
    sig = tuple(sigma)
    if sorted(sig) != list(range(1, k + 1)):
        raise ValueError(f"{sig} is not a permutation of 1..{k}")
    levels = list(x.levels)
    levels[k] = permute_level(levels[k], x.dimension, k, sig)
    return TruncatedTensor._wrap(x.dimension, x.depth, x.kind, levels)


def permute_level(level: np.ndarray, dimension: int, k: int,
                  sigma: Sequence[int]) -> np.ndarray:
    """Permutation action on one flat degree-``k`` coefficient array."""
    if k <= 1:
        return level.copy()
    sigma0 = np.asarray(sigma) - 1
    axes = tuple(int(a) for a in np.argsort(sigma0))
    cube = level.reshape((dimension,) * k)
    return np.transpose(cube, axes).reshape(-1).copy()


def level_norm(x: TruncatedTensor, k: int, kind: NormKind):
    """Norm of the degree-``k`` part.

    L1_PROJECTIVE sums absolute coefficients (exact Fraction in rational mode);
    L2_HILBERT_SCHMIDT is the Euclidean coefficient norm (always a float).
    Both are exactly multiplicative across tensor products of homogeneous parts
    and invariant under index permutations.
    """
    lvl = x.level(k)
    if kind is NormKind.L1_PROJECTIVE:
        if x.kind is ScalarKind.RATIONAL:
            return sum((abs(c) for c in lvl), Fraction(0))
        return float(np.abs(lvl).sum())
    if x.kind is ScalarKind.RATIONAL:
        ssq = sum((c * c for c in lvl), Fraction(0))
        return math.sqrt(float(ssq))
    return float(np.linalg.norm(lvl))


def dilate(x: TruncatedTensor, lam) -> TruncatedTensor:
    """Scale the degree-``k`` part by ``lam**k`` for every ``k``.

    Real tensors accept only real ``lam`` (rationals stay exact); complex
    scaling of a real tensor requires complexifying first.
    """
    if x.kind is ScalarKind.C64:
        lam_c = complex(lam)
        levels = [lvl * lam_c**k for k, lvl in enumerate(x.levels)]
        return TruncatedTensor._wrap(x.dimension, x.depth, x.kind, levels)
    if isinstance(lam, complex):
        if lam.imag != 0:
            raise TypeError("complex dilation of a real tensor: complexify it first")
        lam = lam.real
    s = coerce_scalar(lam, x.kind)
    levels = [lvl * s**k for k, lvl in enumerate(x.levels)]
    return TruncatedTensor._wrap(x.dimension, x.depth, x.kind, levels)


def root_of_unity(d: int) -> complex:
    """Primitive d-th root of unity e^(2*pi*i/d)."""
    if d < 1:
        raise ValueError("d must be positive")
    return cmath.exp(2j * cmath.pi / d)
