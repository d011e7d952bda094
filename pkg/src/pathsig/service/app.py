"""FastAPI service wrapping the signature library.

Every endpoint is a pure function of its request body, so the service can be
scaled or called concurrently without coordination.  Input-contract
violations surface as HTTP 400 with a message; malformed payloads are 422.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..algebra import NormKind, ScalarKind, TruncatedTensor, level_norm, tensor_exp
from ..asymptotics import analyze
from ..complexify import dilation_invariance_check, lie_generator
from ..paths import PiecewiseLinearPath, path_length, riemann_signature, signature, tree_reduce
from ..selftest import run_selftest
from ..semigroup import (extract_pattern, frobenius_number, min_modulus,
                         verify_additive)
from ..serialize import path_from_dict, path_to_dict, tensor_from_dict, tensor_to_dict
from ..shuffle import group_like_check
from . import models as m


def _as_path(model: m.PathModel, scalar: str) -> PiecewiseLinearPath:
    path = path_from_dict(model.model_dump())
    return path.to_rational() if scalar == "rational" else path.to_float()


def _resolve_source(src: m.TensorSource) -> TruncatedTensor:
    if src.tensor is not None:
        return tensor_from_dict(src.tensor.model_dump())
    if src.path is not None:
        return signature(_as_path(src.path, src.scalar), src.depth)
    element = lie_generator(src.exp_lie, src.dimension)
    if element.degree > src.depth:
        raise ValueError(f"depth {src.depth} cannot hold exp of a degree-{element.degree} element")
    g = tensor_exp(element.embed(src.depth))
    return g if src.scalar == "rational" else g.astype(ScalarKind.F64)


def _modulus_report(nonzero: tuple[int, ...], depth: int) -> m.ModulusModel:
    if not nonzero:
        return m.ModulusModel(note=f"signature trivial to depth {depth}")
    d = min_modulus(nonzero)
    if d is not None:
        return m.ModulusModel(d=d, note=f"all nonzero degrees lie in ({d})")
    if 1 in nonzero:
        return m.ModulusModel(note="gcd 1 with degree 1 present; the generated "
                                   "semigroup already covers every positive integer")
    try:
        frob = frobenius_number(nonzero)
    except ValueError as exc:
        return m.ModulusModel(note=f"gcd 1; Frobenius diagnostic unavailable: {exc}")
    return m.ModulusModel(frobenius=frob,
                          note="gcd 1: the complement of the generated semigroup "
                               f"is finite, largest excluded integer {frob}")


def create_app() -> FastAPI:
    app = FastAPI(title="pathsig", version=__version__,
                  description="Exact path-signature computations as a service")

    @app.exception_handler(ValueError)
    async def _value_error(_: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(TypeError)
    async def _type_error(_: Request, exc: TypeError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health", response_model=m.HealthResponse)
    def health():
        return m.HealthResponse(status="ok", service="pathsig", version=__version__)

    @app.post("/signature", response_model=m.SignatureResponse)
    def post_signature(req: m.SignatureRequest):
        path = _as_path(req.path, req.scalar)
        g = signature(path, req.depth)
        kind = NormKind(req.norm)
        norms = [m.LevelNormEntry(degree=k, norm=float(level_norm(g, k, kind)))
                 for k in range(1, g.depth + 1)]
        return m.SignatureResponse(tensor=m.TensorModel(**tensor_to_dict(g)),
                                   norm=req.norm, level_norms=norms)

    @app.post("/riemann-signature", response_model=m.RiemannResponse)
    def post_riemann(req: m.RiemannRequest):
        path = _as_path(req.path, "f64")
        g = riemann_signature(path, req.depth, req.mesh)
        return m.RiemannResponse(tensor=m.TensorModel(**tensor_to_dict(g)), mesh=req.mesh)

    @app.post("/shuffle-check", response_model=m.ShuffleCheckResponse)
    def post_shuffle_check(req: m.ShuffleCheckRequest):
        g = _resolve_source(req.source)
        rep = group_like_check(g, req.tol)
        return m.ShuffleCheckResponse(
            depth=rep.depth, tol=rep.tolerance,
            pairs=[m.PairResidualModel(m=p.m, n=p.n, residual=p.residual)
                   for p in rep.pairs],
            passed=rep.passed)

    @app.post("/zeros", response_model=m.ZerosResponse)
    def post_zeros(req: m.ZerosRequest):
        g = _resolve_source(req.source)
        pattern = extract_pattern(g, req.tol)
        additive = None
        if pattern.nonzero:
            check = verify_additive(pattern.nonzero, pattern.depth)
            additive = m.AdditiveModel(closed=check.closed, missing=check.missing,
                                       bound=check.bound)
        return m.ZerosResponse(
            pattern=m.PatternModel(**pattern.to_dict()),
            additive=additive,
            modulus=_modulus_report(pattern.nonzero, pattern.depth),
            trivial=pattern.is_trivial)

    @app.post("/asymptotics", response_model=m.AsymptoticsResponse)
    def post_asymptotics(req: m.AsymptoticsRequest):
        path = _as_path(req.path, req.scalar)
        g = signature(path, req.depth)
        kind = NormKind(req.norm)
        rep = analyze(g, kind, length=path_length(path, kind))
        return m.AsymptoticsResponse(**rep.to_dict())

    @app.post("/dilation", response_model=m.DilationResponse)
    def post_dilation(req: m.DilationRequest):
        g = _resolve_source(req.source)
        rep = dilation_invariance_check(g, req.modulus, NormKind(req.norm),
                                        tol=req.tol, pattern_tol=req.pattern_tol)
        data = rep.to_dict()
        data["pattern"] = m.PatternModel(**data["pattern"])
        return m.DilationResponse(**data)

    @app.post("/reduce", response_model=m.ReduceResponse)
    def post_reduce(req: m.ReduceRequest):
        path = path_from_dict(req.path.model_dump())
        reduced = tree_reduce(path)
        # exact check: binary64 vertices lift losslessly to rationals
        before = signature(path.to_rational(), req.check_depth)
        after = signature(reduced.to_rational(), req.check_depth)
        return m.ReduceResponse(
            path=m.PathModel(**path_to_dict(reduced)),
            vertices_before=len(path.vertices),
            vertices_after=len(reduced.vertices),
            length_before_l1=float(path_length(path, NormKind.L1_PROJECTIVE)),
            length_after_l1=float(path_length(reduced, NormKind.L1_PROJECTIVE)),
            removed_length_l1=float(path_length(path, NormKind.L1_PROJECTIVE)
                                    - path_length(reduced, NormKind.L1_PROJECTIVE)),
            length_before_l2=path_length(path, NormKind.L2_HILBERT_SCHMIDT),
            length_after_l2=path_length(reduced, NormKind.L2_HILBERT_SCHMIDT),
            removed_length_l2=path_length(path, NormKind.L2_HILBERT_SCHMIDT)
            - path_length(reduced, NormKind.L2_HILBERT_SCHMIDT),
            signature_preserved=before == after,
            check_depth=req.check_depth)

    @app.post("/lie-exp", response_model=m.LieExpResponse)
    def post_lie_exp(req: m.LieExpRequest):
        element = lie_generator(req.expression, req.dimension)
        if element.degree > req.depth:
            raise ValueError(f"depth {req.depth} cannot hold exp of a "
                             f"degree-{element.degree} element")
        g = tensor_exp(element.embed(req.depth))
        if req.scalar == "f64":
            g = g.astype(ScalarKind.F64)
        return m.LieExpResponse(degree=element.degree,
                                tensor=m.TensorModel(**tensor_to_dict(g)))

    @app.post("/selftest", response_model=m.SelftestResponse)
    def post_selftest(req: m.SelftestRequest):
        rep = run_selftest(req.seed, depth=req.depth)
        return m.SelftestResponse(
            seed=rep.seed,
            checks=[m.CheckResultModel(**c.to_dict()) for c in rep.checks],
            passed=rep.passed, elapsed=rep.elapsed)

    return app


app = create_app()
