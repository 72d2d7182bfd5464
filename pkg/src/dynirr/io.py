"""Text format for sets of monic quadratics.

    p=<int> d=<int> [modulus=<c0>:<c1>:...:<cd>]
    # comment
    b=<elem> c=<elem>
    ...

Elements are little-endian coefficient vectors joined by colons.
"""
from __future__ import annotations

from typing import Iterable

from .closure import DISetInstance
from .errors import BadModulus, CoefficientOutOfRange, ModulusNotIrreducible, ParseError
from .ff import FieldCtx, FieldElem
from .poly import MonicQuad


def _ints(token: str, lineno: int) -> list[int]:
    try:
        return [int(s) for s in token.split(":")]
    except ValueError:
        raise ParseError(f"malformed coefficient list {token!r}", lineno) from None


def parse_header(line: str, lineno: int = 1) -> FieldCtx:
    fields = {}
    for tok in line.split():
        key, sep, val = tok.partition("=")
        if not sep or key not in ("p", "d", "modulus") or key in fields:
            raise ParseError(f"bad header token {tok!r}", lineno)
        fields[key] = val
    if "p" not in fields or "d" not in fields:
        raise ParseError("header needs p= and d=", lineno)
    try:
        p, d = int(fields["p"]), int(fields["d"])
    except ValueError:
        raise ParseError("p and d must be integers", lineno) from None
    modulus = None
    if "modulus" in fields:
        modulus = _ints(fields["modulus"], lineno)
    try:
        return FieldCtx(p, d, modulus)
    except ModulusNotIrreducible as exc:
        raise BadModulus(str(exc), lineno) from None
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None


def _elem(ctx: FieldCtx, token: str, lineno: int) -> FieldElem:
    coeffs = _ints(token, lineno)
    if len(coeffs) != ctx.d:
        raise ParseError(f"element {token!r} needs {ctx.d} coefficients", lineno)
    if any(not 0 <= a < ctx.p for a in coeffs):
        raise CoefficientOutOfRange(f"coefficient out of range in {token!r}", lineno)
    return FieldElem(ctx, tuple(coeffs))


def parse_poly_set(text: str, diagnostics: list | None = None) -> DISetInstance:
    """Parse a polynomial-set file; duplicates are dropped and reported."""
    ctx = None
    polys = []
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ctx is None:
            ctx = parse_header(line, lineno)
            continue
        parts = {}
        for tok in line.split():
            key, sep, val = tok.partition("=")
            if not sep or key not in ("b", "c") or key in parts:
                raise ParseError(f"bad polynomial token {tok!r}", lineno)
            parts[key] = val
        if set(parts) != {"b", "c"}:
            raise ParseError("polynomial line needs b= and c=", lineno)
        polys.append(MonicQuad(_elem(ctx, parts["b"], lineno), _elem(ctx, parts["c"], lineno)))
        lines.append(lineno)
    if ctx is None:
        raise ParseError("missing header line")
    if not polys:
        raise ParseError("no polynomials")
    inst = DISetInstance(ctx, tuple(polys))
    for pos, f in inst.dropped:
        msg = f"line {lines[pos]}: duplicate polynomial {f.encode()} dropped"
        if diagnostics is not None:
            diagnostics.append(msg)
    return inst


def emit_poly_set(inst: DISetInstance, comments: Iterable[str] = ()) -> str:
    out = [inst.ctx.header()]
    out += [f"# {c}" for c in comments]
    out += [f.encode() for f in inst.polys]
    return "\n".join(out) + "\n"
