"""Thin command-line client for the pathsig service.

Every command builds a request, sends it through the service API, and renders
the response.  By default the service runs in-process over an ASGI transport,
so no server is needed; ``--server URL`` points the same commands at a remote
instance.  Exit codes: 0 success, 1 invariant/assertion failure, 2 input
error.
"""

from __future__ import annotations

import asyncio
import json
import sys
from pathlib import Path

import click
import httpx

from .serialize import canonical_dumps

DEFAULT_SEED = 1729
_TIMEOUT = 600.0


def _call(server: str | None, route: str, payload: dict) -> dict:
    """POST to the service, in-process unless a server URL is given."""
    if server:
        try:
            resp = httpx.post(server.rstrip("/") + route, json=payload, timeout=_TIMEOUT)
        except httpx.HTTPError as exc:
            click.echo(f"error: cannot reach {server}: {exc}", err=True)
            sys.exit(2)
    else:
        from .service.app import app

        async def go():
            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(transport=transport,
                                         base_url="http://pathsig.local",
                                         timeout=_TIMEOUT) as client:
                return await client.post(route, json=payload)

        resp = asyncio.run(go())
    if resp.status_code >= 400:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        click.echo(f"error: {detail}", err=True)
        sys.exit(2)
    return resp.json()


def _read_file(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


def _load_structured(path: str) -> dict:
    """Parse a JSON file, reporting position on syntax errors."""
    text = _read_file(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        click.echo(f"error: {path}: line {exc.lineno}, column {exc.colno}: {exc.msg}",
                   err=True)
        sys.exit(2)


def _load_path_payload(path: str) -> dict:
    """Path file -> PathModel payload; accepts JSON or CSV."""
    if path.endswith(".csv"):
        from .serialize import path_from_csv, path_to_dict
        try:
            return path_to_dict(path_from_csv(_read_file(path)))
        except ValueError as exc:
            click.echo(f"error: {path}: {exc}", err=True)
            sys.exit(2)
    data = _load_structured(path)
    if "points" not in data:
        click.echo(f"error: {path}: not a path file (missing \"points\")", err=True)
        sys.exit(2)
    return data


def _load_source_payload(input_file: str | None, exp_lie: str | None,
                         dim: int | None, depth: int, scalar: str) -> dict:
    """Build a TensorSource payload from a file or an exp-lie expression."""
    if (input_file is None) == (exp_lie is None):
        click.echo("error: provide exactly one of --input or --exp-lie", err=True)
        sys.exit(2)
    if exp_lie is not None:
        if dim is None:
            click.echo("error: --exp-lie needs --dim", err=True)
            sys.exit(2)
        return {"exp_lie": exp_lie, "dimension": dim, "depth": depth, "scalar": scalar}
    if input_file.endswith(".csv"):
        return {"path": _load_path_payload(input_file), "depth": depth, "scalar": scalar}
    data = _load_structured(input_file)
    if "levels" in data:
        return {"tensor": data}
    if "points" in data:
        return {"path": data, "depth": depth, "scalar": scalar}
    click.echo(f"error: {input_file}: neither a tensor nor a path file", err=True)
    sys.exit(2)


def _write_json(out: str | None, obj: dict, label: str) -> None:
    blob = canonical_dumps(obj)
    if out:
        Path(out).write_text(blob)
        click.echo(f"{label} written to {out}")
    else:
        click.echo(blob, nl=False)


@click.group()
@click.option("--server", default=None, metavar="URL",
              help="Remote service URL; default runs the service in-process.")
@click.pass_context
def main(ctx, server):
    """Exact path-signature computations: signatures, zero patterns,
    asymptotics, dilation invariance, and tree reduction."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server


_depth = click.option("--depth", default=6, show_default=True, help="Truncation depth N.")
_scalar = click.option("--scalar", type=click.Choice(["rational", "f64"]),
                       default="rational", show_default=True)
_norm = click.option("--norm", type=click.Choice(["l1proj", "l2hs"]),
                     default="l1proj", show_default=True)
_out = click.option("--out", "-o", default=None, metavar="FILE",
                    help="Write the JSON result here instead of stdout.")
_input = click.option("--input", "-i", "input_file", default=None, metavar="FILE",
                      help="Input file (path JSON/CSV, or tensor JSON where accepted).")
_exp_lie = click.option("--exp-lie", default=None, metavar="EXPR",
                        help="Group-like input exp(l) from a bracket expression, e.g. \"[1,2]\".")
_dim = click.option("--dim", type=int, default=None, help="Dimension for --exp-lie.")


@main.command()
@_input
@_depth
@_scalar
@_norm
@_out
@click.pass_context
def sig(ctx, input_file, depth, scalar, norm, out):
    """Signature of a path file; prints the level-norm table."""
    if input_file is None:
        click.echo("error: --input is required", err=True)
        sys.exit(2)
    payload = {"path": _load_path_payload(input_file), "depth": depth,
               "scalar": scalar, "norm": norm}
    body = _call(ctx.obj["server"], "/signature", payload)
    click.echo(f"signature depth {depth}, scalar {scalar}, norm {norm}")
    click.echo(f"{'degree':>6}  {'level norm':>18}")
    for entry in body["level_norms"]:
        click.echo(f"{entry['degree']:>6}  {entry['norm']:>18.12g}")
    _write_json(out, body["tensor"], "tensor")


@main.command()
@_input
@_exp_lie
@_dim
@_depth
@_scalar
@click.option("--tol", default=0.0, show_default=True,
              help="Zero threshold (must be 0 in rational mode).")
@_out
@click.pass_context
def zeros(ctx, input_file, exp_lie, dim, depth, scalar, tol, out):
    """Nonzero-degree pattern, additive closure, and modulus report."""
    source = _load_source_payload(input_file, exp_lie, dim, depth, scalar)
    body = _call(ctx.obj["server"], "/zeros", {"source": source, "tol": tol})
    pat = body["pattern"]
    tag = "exact" if pat["exact"] else f"thresholded at {tol:g}"
    if body["trivial"]:
        click.echo(f"signature trivial to depth {pat['depth']} ({tag})")
    else:
        click.echo(f"nonzero degrees to depth {pat['depth']} ({tag}): {pat['nonzero']}")
        add = body["additive"]
        if add["closed"]:
            click.echo(f"additively closed below {add['bound']}")
        else:
            click.echo(f"NOT additively closed: {add['missing']} is missing")
    mod = body["modulus"]
    if mod["d"] is not None:
        click.echo(f"min modulus d = {mod['d']}")
    click.echo(mod["note"])
    if out:
        _write_json(out, body, "report")


@main.command()
@_input
@click.option("--depth", default=8, show_default=True, help="Truncation depth N.")
@_scalar
@_norm
@_out
@click.pass_context
def asym(ctx, input_file, depth, scalar, norm, out):
    """Normalized-norm asymptotics table for a path file."""
    if input_file is None:
        click.echo("error: --input is required", err=True)
        sys.exit(2)
    payload = {"path": _load_path_payload(input_file), "depth": depth,
               "scalar": scalar, "norm": norm}
    body = _call(ctx.obj["server"], "/asymptotics", payload)
    click.echo(f"{'n':>3}  {'b_n = n!||g_n||':>18}  {'b_n exact':>14}  {'a_n = b_n^(1/n)':>16}")
    for t in body["terms"]:
        a = f"{t['a']:.12g}" if t["a"] is not None else "-"
        exact = t["b_exact"] if t["b_exact"] is not None else "-"
        click.echo(f"{t['n']:>3}  {t['b']:>18.12g}  {exact:>14}  {a:>16}")
    if body["trivial"]:
        click.echo("signature trivial: no nonzero degrees")
    else:
        click.echo(f"S_N = {body['sup']:.12g}   L = {body['length']:.12g}   "
                   f"S_N/L = {body['ratio']:.12g}")
    if body["violations"]:
        click.echo(f"supermultiplicativity violations: {body['violations']}")
    if out:
        _write_json(out, body, "report")
    if body["sup_within_length"] is False:
        click.echo("ASSERTION FAILED: S_N exceeds the path length", err=True)
        sys.exit(1)


@main.command()
@_input
@_exp_lie
@_dim
@click.option("--modulus", "-d", "modulus", type=int, required=True,
              help="Root-of-unity order d >= 2.")
@_depth
@_scalar
@click.option("--norm", type=click.Choice(["l1proj", "l2hs"]), default="l2hs",
              show_default=True)
@click.option("--tol", default=1e-12, show_default=True, help="Residual tolerance.")
@_out
@click.pass_context
def dilate(ctx, input_file, exp_lie, dim, modulus, depth, scalar, norm, tol, out):
    """Dilation-invariance check at a primitive d-th root of unity."""
    source = _load_source_payload(input_file, exp_lie, dim, depth, scalar)
    body = _call(ctx.obj["server"], "/dilation",
                 {"source": source, "modulus": modulus, "norm": norm, "tol": tol})
    click.echo(f"{'degree':>6}  {'residual':>14}  invariant")
    for r in body["residuals"]:
        click.echo(f"{r['degree']:>6}  {r['residual']:>14.6e}  {r['invariant']}")
    verdict = "PASS" if body["invariant_pass"] else "FAIL"
    click.echo(f"invariance under dilation by e^(2*pi*i/{modulus}): {verdict}")
    click.echo(f"zero-pattern divisibility by {modulus}: "
               f"{'PASS' if body['pattern_pass'] else 'FAIL'}")
    if out:
        _write_json(out, body, "report")
    if not body["verdicts_agree"]:
        click.echo("ASSERTION FAILED: residual and zero-pattern verdicts disagree",
                   err=True)
        sys.exit(1)


@main.command()
@_input
@click.option("--depth", default=6, show_default=True,
              help="Depth for the exact signature-preservation check.")
@_out
@click.pass_context
def reduce(ctx, input_file, depth, out):
    """Tree-reduce a path file; reports removed length."""
    if input_file is None:
        click.echo("error: --input is required", err=True)
        sys.exit(2)
    payload = {"path": _load_path_payload(input_file), "check_depth": depth}
    body = _call(ctx.obj["server"], "/reduce", payload)
    click.echo(f"vertices: {body['vertices_before']} -> {body['vertices_after']}")
    click.echo(f"l1 length: {body['length_before_l1']:.12g} -> {body['length_after_l1']:.12g}"
               f" (removed {body['removed_length_l1']:.12g})")
    click.echo(f"l2 length: {body['length_before_l2']:.12g} -> {body['length_after_l2']:.12g}"
               f" (removed {body['removed_length_l2']:.12g})")
    _write_json(out, body["path"], "reduced path")
    if not body["signature_preserved"]:
        click.echo(f"ASSERTION FAILED: signature changed at depth {depth}", err=True)
        sys.exit(1)
    click.echo(f"signature preserved exactly at depth {depth}")


@main.command("lie")
@click.option("--expr", required=True, metavar="EXPR",
              help="Bracket expression, e.g. \"[1,[1,2]]\" or \"3/2*[1,2]\".")
@click.option("--dim", type=int, required=True)
@_depth
@_scalar
@_out
@click.pass_context
def lie_cmd(ctx, expr, dim, depth, scalar, out):
    """Write the group-like tensor exp(l) of a bracket expression."""
    body = _call(ctx.obj["server"], "/lie-exp",
                 {"expression": expr, "dimension": dim, "depth": depth,
                  "scalar": scalar})
    click.echo(f"exp of degree-{body['degree']} element at depth {depth}")
    _write_json(out, body["tensor"], "tensor")


@main.command()
@click.option("--seed", default=DEFAULT_SEED, show_default=True,
              help="Seed for every randomized check.")
@click.option("--depth", type=int, default=None,
              help="Override depth of the heavier checks.")
@click.pass_context
def selftest(ctx, seed, depth):
    """Run the full seeded invariant suite; nonzero exit on any failure."""
    payload = {"seed": seed}
    if depth is not None:
        payload["depth"] = depth
    body = _call(ctx.obj["server"], "/selftest", payload)
    for c in body["checks"]:
        status = "PASS" if c["passed"] else "FAIL"
        click.echo(f"{status}  {c['name']:<28} {c['elapsed']:7.1f}s  {c['detail']}")
    overall = "PASS" if body["passed"] else "FAIL"
    click.echo(f"{overall}  ({len(body['checks'])} checks, seed {body['seed']}, "
               f"{body['elapsed']:.1f}s)")
    if not body["passed"]:
        sys.exit(1)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("pathsig.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
