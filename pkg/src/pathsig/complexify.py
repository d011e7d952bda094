"""Complexification, the Taylor norm, dilation invariance, and Lie generators.

A real tensor embeds levelwise into its complexification by giving every
coefficient a zero imaginary part.  Scaling a path by a complex unit is
realized algebraically: degree k of the complexified signature picks up a
factor lambda^k.  A series is fixed by that dilation for a primitive d-th
root of unity exactly when it vanishes outside the multiples of d, which is
also checkable on the exact zero pattern -- the two routes must agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
import numpy as np

from .algebra import (NormKind, ScalarKind, TruncatedTensor, dilate,
                      level_norm, root_of_unity)
from .semigroup import DegreePattern, extract_pattern

MIN_L1_GRID = 4


def complexify(x: TruncatedTensor) -> TruncatedTensor:
    """Levelwise embedding of a real tensor into complex scalars."""
    if x.kind is ScalarKind.C64:
        raise ValueError("tensor is already complex")
    return x.astype(ScalarKind.C64) if x.kind is ScalarKind.F64 \
        else x.astype(ScalarKind.F64).astype(ScalarKind.C64)


def taylor_norm(z: TruncatedTensor, k: int, kind: NormKind,
                grid: int = 1024) -> float:
    """sup over t in [0, 2*pi] of ||Re(z_k) cos t - Im(z_k) sin t||.

    Extends the degree-k real norm to complex tensors; restricted to real
    input it reproduces the plain norm, and it is invariant under complex
    conjugation.  The l2 case has a closed form; the l1 case is a grid search
    with one Newton refinement per local maximum (never overshooting, since
    only true function values are compared).
    """
    lvl = z.level(k)
    if z.kind is ScalarKind.RATIONAL:
        lvl = np.array([float(c) for c in lvl], dtype=np.complex128)
    else:
        lvl = lvl.astype(np.complex128)
    x = lvl.real
    y = lvl.imag
    if kind is NormKind.L2_HILBERT_SCHMIDT:
        alpha = float(x @ x)
        beta = float(y @ y)
        gamma = float(x @ y)
        peak = 0.5 * (alpha + beta) + math.hypot(0.5 * (alpha - beta), gamma)
        return math.sqrt(max(peak, 0.0))
    if grid < MIN_L1_GRID:
        raise ValueError(f"l1 grid search needs grid >= {MIN_L1_GRID}")
    ts = np.linspace(0.0, 2.0 * math.pi, grid, endpoint=False)
    vals = np.abs(np.outer(np.cos(ts), x) - np.outer(np.sin(ts), y)).sum(axis=1)
    best = float(vals.max())
    # one Newton step from every grid-local maximum; f'' = -f away from kinks
    local = (vals >= np.roll(vals, 1)) & (vals >= np.roll(vals, -1))
    for t0, f0 in zip(ts[local], vals[local]):
        if f0 <= 0.0:
            continue
        c, s = math.cos(t0), math.sin(t0)
        signs = np.sign(x * c - y * s)
        deriv = float((signs * (-x * s - y * c)).sum())
        t1 = t0 + deriv / f0
        f1 = float(np.abs(x * math.cos(t1) - y * math.sin(t1)).sum())
        best = max(best, f1)
    return best


@dataclass(frozen=True)
class DegreeResidual:
    degree: int
    residual: float
    invariant: bool


@dataclass(frozen=True)
class DilationReport:
    """Outcome of the root-of-unity invariance test at modulus d."""

    modulus: int
    depth: int
    norm: NormKind
    tolerance: float
    residuals: tuple[DegreeResidual, ...]
    invariant_pass: bool          # all residuals within tolerance
    pattern: DegreePattern
    pattern_pass: bool            # every nonzero degree divisible by d
    verdicts_agree: bool

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "depth": self.depth,
            "norm": self.norm.value,
            "tolerance": self.tolerance,
            "residuals": [{"degree": r.degree, "residual": r.residual,
                           "invariant": r.invariant} for r in self.residuals],
            "invariant_pass": self.invariant_pass,
            "pattern": self.pattern.to_dict(),
            "pattern_pass": self.pattern_pass,
            "verdicts_agree": self.verdicts_agree,
        }


def dilation_invariance_check(g: TruncatedTensor, d: int,
                              kind: NormKind = NormKind.L2_HILBERT_SCHMIDT,
                              tol: float = 1e-12,
                              pattern_tol: float = 0.0) -> DilationReport:
    """Check delta_lambda-invariance of the complexified tensor, lambda = e^(2*pi*i/d).

    Residual per degree is the norm of the dilated-minus-original level, which
    vanishes exactly when the level is zero or d divides the degree.  The
    exact zero-pattern divisibility test runs independently and must concur.
    """
    if d < 2:
        raise ValueError("modulus d must be >= 2")
    if g.level(0)[0] != 1:
        raise ValueError("dilation check expects a series with unit constant term")
    zc = g if g.kind is ScalarKind.C64 else complexify(g)
    lam = root_of_unity(d)
    diff = dilate(zc, lam) - zc
    residuals = []
    ok = True
    for k in range(1, g.depth + 1):
        r = float(level_norm(diff, k, kind))
        residuals.append(DegreeResidual(k, r, r <= tol))
        ok = ok and r <= tol
    tol_pattern = 0.0 if g.kind is ScalarKind.RATIONAL else pattern_tol
    pattern = extract_pattern(g, tol_pattern)
    pattern_ok = pattern.divisible_by(d)
    return DilationReport(
        modulus=d, depth=g.depth, norm=kind, tolerance=tol,
        residuals=tuple(residuals), invariant_pass=ok,
        pattern=pattern, pattern_pass=pattern_ok,
        verdicts_agree=ok == pattern_ok)


@dataclass(frozen=True)
class LieElement:
    """Level-homogeneous nested-bracket element, stored as an exact tensor."""

    dimension: int
    degree: int
    tensor: TruncatedTensor  # rational, depth == degree, homogeneous

    def embed(self, depth: int) -> TruncatedTensor:
        """Place the element inside a depth-``depth`` tensor (zeros elsewhere)."""
        if depth < self.degree:
            raise ValueError(f"depth {depth} cannot hold a degree-{self.degree} element")
        return TruncatedTensor.from_level(self.dimension, depth, self.degree,
                                          list(self.tensor.level(self.degree)),
                                          ScalarKind.RATIONAL)

    @property
    def is_zero(self) -> bool:
        return self.tensor.is_zero_level(self.degree)


class _BracketParser:
    """Recursive-descent parser for the bracket mini-grammar.

    letter ::= integer ; expr ::= [rational "*"] (letter | "[" expr "," expr "]")
    """

    def __init__(self, text: str, dimension: int):
        self.text = text
        self.pos = 0
        self.dimension = dimension

    def fail(self, message: str):
        raise ValueError(f"bracket expression error at position {self.pos}: {message}")

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.fail(f"expected {ch!r}")
        self.pos += 1

    def number(self) -> Fraction:
        self.skip_ws()
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos < len(self.text) and self.text[self.pos] == "/":
            self.pos += 1
            if not (self.pos < len(self.text) and self.text[self.pos].isdigit()):
                self.fail("expected denominator digits")
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
        token = self.text[start:self.pos]
        try:
            return Fraction(token)
        except (ValueError, ZeroDivisionError):
            self.fail(f"bad rational {token!r}")

    def expr(self) -> tuple[int, np.ndarray]:
        """Returns (degree, flat coefficient array)."""
        scalar = Fraction(1)
        ch = self.peek()
        if ch.isdigit() or ch == "-":
            save = self.pos
            value = self.number()
            if self.peek() == "*":
                self.pos += 1
                scalar = value
            else:
                # plain letter
                self.pos = save
                return self.letter()
        degree, coeffs = self.atom()
        if scalar != 1:
            coeffs = coeffs * scalar
        return degree, coeffs

    def atom(self) -> tuple[int, np.ndarray]:
        ch = self.peek()
        if ch == "[":
            return self.bracket()
        if ch.isdigit():
            return self.letter()
        self.fail("expected a letter or '['")

    def letter(self) -> tuple[int, np.ndarray]:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected a basis letter")
        i = int(self.text[start:self.pos])
        if not 1 <= i <= self.dimension:
            self.fail(f"letter {i} outside alphabet 1..{self.dimension}")
        coeffs = np.empty(self.dimension, dtype=object)
        coeffs[:] = Fraction(0)
        coeffs[i - 1] = Fraction(1)
        return 1, coeffs

    def bracket(self) -> tuple[int, np.ndarray]:
        self.expect("[")
        da, a = self.expr()
        self.expect(",")
        db, b = self.expr()
        self.expect("]")
        ab = np.multiply.outer(a, b).reshape(-1)
        ba = np.multiply.outer(b, a).reshape(-1)
        return da + db, ab - ba

    def parse(self) -> LieElement:
        degree, coeffs = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.fail("unexpected trailing input")
        tensor = TruncatedTensor.from_level(self.dimension, max(degree, 1), degree,
                                            list(coeffs), ScalarKind.RATIONAL)
        return LieElement(self.dimension, degree, tensor)


def lie_generator(expression: str, dimension: int) -> LieElement:
    """Build a homogeneous Lie element from a nested-bracket expression.

    Examples: ``"[1,2]"``, ``"[1,[1,2]]"``, ``"3/2*[1,2]"``.
    """
    if dimension < 1:
        raise ValueError("dimension must be positive")
    return _BracketParser(expression, dimension).parse()
