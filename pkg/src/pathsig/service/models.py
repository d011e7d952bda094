"""Pydantic request/response models for the computation service.

The wire formats mirror the library's JSON schemas: rational coefficients as
"p/q" strings, complex ones as [re, im] pairs, paths as vertex lists.  Every
response carries ``schema_version`` so downstream scripts can pin layouts.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

SCHEMA_VERSION = 1

Coefficient = str | int | float | list[float]


class TensorLevel(BaseModel):
    degree: int
    coefficients: list[Coefficient]


class TensorModel(BaseModel):
    dimension: int = Field(ge=1)
    depth: int = Field(ge=1)
    scalar: Literal["rational", "f64", "c64"]
    levels: list[TensorLevel]


class PathModel(BaseModel):
    dimension: int = Field(ge=1)
    points: list[list[str | int | float]]


class TensorSource(BaseModel):
    """Exactly one of ``tensor``, ``path``, or ``exp_lie`` supplies the input.

    Paths are turned into signatures at ``depth``; ``exp_lie`` builds the
    group-like exponential of a nested-bracket Lie element and needs
    ``dimension``.
    """

    tensor: Optional[TensorModel] = None
    path: Optional[PathModel] = None
    exp_lie: Optional[str] = None
    dimension: Optional[int] = Field(default=None, ge=1)
    depth: int = Field(default=6, ge=1)
    scalar: Literal["rational", "f64"] = "rational"

    @model_validator(mode="after")
    def _exactly_one_input(self):
        given = sum(x is not None for x in (self.tensor, self.path, self.exp_lie))
        if given != 1:
            raise ValueError("provide exactly one of tensor, path, exp_lie")
        if self.exp_lie is not None and self.dimension is None:
            raise ValueError("exp_lie input needs a dimension")
        return self


NormName = Literal["l1proj", "l2hs"]


class SignatureRequest(BaseModel):
    path: PathModel
    depth: int = Field(default=6, ge=1)
    scalar: Literal["rational", "f64"] = "rational"
    norm: NormName = "l1proj"


class LevelNormEntry(BaseModel):
    degree: int
    norm: float


class SignatureResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    tensor: TensorModel
    norm: NormName
    level_norms: list[LevelNormEntry]


class RiemannRequest(BaseModel):
    path: PathModel
    depth: int = Field(default=6, ge=1)
    mesh: float = Field(default=2.0**-12, gt=0.0, le=1.0)


class RiemannResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    tensor: TensorModel
    mesh: float


class ShuffleCheckRequest(BaseModel):
    source: TensorSource
    tol: float = Field(default=0.0, ge=0.0)


class PairResidualModel(BaseModel):
    m: int
    n: int
    residual: float


class ShuffleCheckResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    depth: int
    tol: float
    pairs: list[PairResidualModel]
    passed: bool = Field(serialization_alias="pass")

    model_config = {"populate_by_name": True}


class ZerosRequest(BaseModel):
    source: TensorSource
    tol: float = Field(default=0.0, ge=0.0)


class PatternModel(BaseModel):
    depth: int
    nonzero: list[int]
    exact: bool


class AdditiveModel(BaseModel):
    closed: bool
    missing: Optional[int]
    bound: int


class ModulusModel(BaseModel):
    d: Optional[int] = None
    frobenius: Optional[int] = None
    note: str = ""


class ZerosResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    pattern: PatternModel
    additive: Optional[AdditiveModel]
    modulus: ModulusModel
    trivial: bool


class AsymptoticsRequest(BaseModel):
    path: PathModel
    depth: int = Field(default=8, ge=1)
    scalar: Literal["rational", "f64"] = "rational"
    norm: NormName = "l1proj"


class DegreeTermModel(BaseModel):
    n: int
    b: float
    b_exact: Optional[str]
    a: Optional[float]


class AsymptoticsResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    depth: int
    norm: NormName
    scalar: Literal["rational", "f64", "c64"]
    terms: list[DegreeTermModel]
    sup: Optional[float]
    violations: list[list[int]]
    length: Optional[float]
    ratio: Optional[float]
    trivial: bool
    sup_within_length: Optional[bool]


class DilationRequest(BaseModel):
    source: TensorSource
    modulus: int = Field(ge=2)
    norm: NormName = "l2hs"
    tol: float = Field(default=1e-12, ge=0.0)
    pattern_tol: float = Field(default=0.0, ge=0.0)


class DegreeResidualModel(BaseModel):
    degree: int
    residual: float
    invariant: bool


class DilationResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    modulus: int
    depth: int
    norm: NormName
    tolerance: float
    residuals: list[DegreeResidualModel]
    invariant_pass: bool
    pattern: PatternModel
    pattern_pass: bool
    verdicts_agree: bool


class ReduceRequest(BaseModel):
    path: PathModel
    check_depth: int = Field(default=6, ge=1)


class ReduceResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    path: PathModel
    vertices_before: int
    vertices_after: int
    length_before_l1: float
    length_after_l1: float
    removed_length_l1: float
    length_before_l2: float
    length_after_l2: float
    removed_length_l2: float
    signature_preserved: bool
    check_depth: int


class LieExpRequest(BaseModel):
    expression: str
    dimension: int = Field(ge=1)
    depth: int = Field(ge=1)
    scalar: Literal["rational", "f64"] = "rational"


class LieExpResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    degree: int
    tensor: TensorModel


class SelftestRequest(BaseModel):
    seed: int = 1729
    depth: Optional[int] = Field(default=None, ge=2)


class CheckResultModel(BaseModel):
    name: str
    passed: bool
    detail: str
    elapsed: float


class SelftestResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    seed: int
    checks: list[CheckResultModel]
    passed: bool
    elapsed: float


class HealthResponse(BaseModel):
    status: str
    service: str
    version: str
    schema_version: int = SCHEMA_VERSION
