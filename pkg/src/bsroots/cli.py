"""Batch front end: JSON problem descriptions in, JSON or text reports out.

Exit codes: 0 success, 1 internal error, 2 malformed input, 3 oracle
bounds exhausted, 4 a mathematical hypothesis of the command is violated.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional

from pydantic import ValidationError

from . import __version__
from .bfunction import BFunction
from .errors import BoundsExhausted, BSRootsError, HypothesisError, ParseError, VariableMismatch
from .mpoly import MPoly, as_poly
from .multiplier import (
    budur_saito_check,
    jumping_numbers_snc,
    lct_g,
    min_exponent_from_bfunction,
    monomial_bfunctions,
    multiplier_membership,
    saito_criterion_check,
    sandwich_for_shifted,
)
from .newton import fan_rays, newton_polygon, nondegeneracy_check, resolution_from_newton
from .rational import format_rational, to_rational
from .resolution import (
    UNBOUNDED,
    ResolutionData,
    candidate_witness,
    is_negative_integer,
    lichtin_candidates,
    min_exponent_lower_bound,
    remark_g_candidates,
    thm12_g1_candidates,
    thm12_m0_bound,
    thm12_upper_bound,
)
from .schemas import PAYLOAD_MODELS, ProblemSpec, ResolutionModel
from .snc import (
    MonomialData,
    lem27_shift_bound,
    lem33_bound_general,
    lem33_bound_m0,
    lem33_bound_smooth_factor,
)
from .weyl import DEFAULT_BOUNDS, Bounds, solve_bfunction

EXIT_OK, EXIT_INTERNAL, EXIT_SCHEMA, EXIT_BOUNDS, EXIT_HYPOTHESIS = 0, 1, 2, 3, 4


@dataclass
class Report:
    document: Dict[str, Any]
    text: str
    exit_code: int


@dataclass
class Overrides:
    ell_max: Optional[int] = None
    bounds: Optional[Bounds] = None
    cap: Optional[int] = None


def _q(x) -> str:
    if x is UNBOUNDED:
        return "inf"
    return format_rational(x)


def _poly(value, nvars, field):
    try:
        return as_poly(value, nvars)
    except (ParseError, VariableMismatch) as exc:
        raise ParseError(str(exc), field=f"payload.{field}") from None


def _bounds(value, override: Optional[Bounds]) -> Bounds:
    if override is not None:
        return override
    if value is None:
        return DEFAULT_BOUNDS
    try:
        if isinstance(value, str):
            return Bounds.parse(value)
        if len(value) != 4:
            raise ParseError("bounds need four entries")
        return Bounds(*value)
    except ParseError as exc:
        raise ParseError(str(exc), field="payload.bounds") from None


def _resolution(model: ResolutionModel) -> ResolutionData:
    return ResolutionData.from_json(model.model_dump())


def _divisor_rows(res: ResolutionData) -> List[str]:
    return [
        f"  {d.label:<12} a={d.a:<3} k={d.k:<3} b={d.b:<3} {'exceptional' if d.exceptional else ''}".rstrip()
        for d in res.divisors
    ]


def _mono(a) -> str:
    return str(MPoly.monomial(tuple(a)))


def _sorted_desc(values) -> List[str]:
    return [_q(v) for v in sorted(values, reverse=True)]


# ---------------------------------------------------------------------------
# command handlers: each returns (result dict, text lines)


def _solve_b(p, ov):
    f = _poly(p.f, p.vars, "f")
    g = _poly(p.g, p.vars, "g")
    if f.is_zero():
        raise ParseError("f must be nonzero", field="payload.f")
    if g.is_zero():
        raise ParseError("g must be nonzero", field="payload.g")
    bounds = _bounds(p.bounds, ov.bounds)
    res = solve_bfunction(f, g, bounds)
    b = res.bfunction
    reduced = b.without_root(-1) if b.multiplicity(-1) else None
    doc = {
        "vars": p.vars,
        "f": f.to_json(),
        "g": g.to_json(),
        "bounds": bounds.to_json(),
        "bfunction": b.to_json(),
        "reduced_bfunction": reduced.to_json() if reduced is not None else None,
        "witness": res.witness.to_json(),
        "verified": True,
    }
    text = [
        f"b-function of g*f^s with f = {f}, g = {g}",
        f"  b(s) = {b.factored()}",
        f"  roots: {', '.join(_q(r) for r in b.root_list()) or '(none)'}",
        f"  bounds (order, coeff degree, s-degree, b-degree): {bounds}",
        f"  witness operator: {len(res.witness.terms)} terms, verified by substitution",
    ]
    return doc, text


def _snc_bound(p, ov):
    if p.kind == "shift":
        if p.roots is None:
            raise ParseError("kind 'shift' needs 'roots'", field="payload.roots")
        base = BFunction.from_roots(p.roots)
        bound = lem27_shift_bound(base, p.m)
        doc = {"kind": p.kind, "input": base.to_json(), "m": p.m, "bound": bound.to_json()}
        return doc, [f"shift bound for {base.factored()} with m={p.m}: {bound.factored()}"]
    if p.a is None:
        raise ParseError(f"kind '{p.kind}' needs 'a'", field="payload.a")
    b = p.b if p.b is not None else [0] * len(p.a)
    if len(b) != len(p.a):
        raise ParseError("'a' and 'b' must have equal length", field="payload.b")
    if any(x < 0 for x in list(p.a) + list(b)):
        raise ParseError("exponents must be non-negative", field="payload.a")
    data = MonomialData(tuple(p.a), tuple(b), p.m)
    fn = {"general": lem33_bound_general, "m0": lem33_bound_m0,
          "smooth_factor": lem33_bound_smooth_factor}[p.kind]
    bound = fn(data)
    doc = {"kind": p.kind, "a": list(data.a), "b": list(data.b), "m": data.m, "bound": bound.to_json()}
    return doc, [f"monomial bound ({p.kind}) for a={list(data.a)}, b={list(data.b)}, m={data.m}: "
                 f"{bound.factored()}"]


def _candidates(p, ov):
    res = _resolution(p.resolution)
    ell = ov.ell_max if ov.ell_max is not None else p.ell_max
    if p.kind == "lichtin":
        cands, escape = lichtin_candidates(res, ell), False
    elif p.kind == "g1":
        cands, escape = thm12_g1_candidates(res, p.m, ell, p.exceptional_only)
    else:
        cands, escape = remark_g_candidates(res, p.m, ell)
    doc = {
        "kind": p.kind,
        "m": p.m,
        "ell_max": ell,
        "exceptional_only": p.exceptional_only,
        "candidates": _sorted_desc(cands),
        "integer_escape": escape,
        "upper_bound": _q(thm12_upper_bound(res, p.m)),
    }
    if p.m == 0:
        doc["m0_upper_bound"] = _q(thm12_m0_bound(res))
    text = [f"{p.kind} candidates (m={p.m}, ell <= {ell}): {', '.join(doc['candidates'])}"]
    if escape:
        text.append("  negative integers are also admissible")
    text.append(f"  every root is <= {doc['upper_bound']}")
    return doc, text


def _lct(p, ov):
    res = _resolution(p.resolution)
    value = lct_g(res)
    return {"lct": _q(value)}, [f"lct_g(f) = {_q(value)}"]


def _membership(p, ov):
    res = _resolution(p.resolution)
    lam = to_rational(p.lam)
    if lam <= 0:
        raise ParseError("lambda must be positive", field="payload.lambda")
    member = multiplier_membership(res, lam)
    doc = {"lambda": _q(lam), "member": member, "lct": _q(lct_g(res))}
    return doc, [f"g {'is' if member else 'is not'} in the multiplier ideal at lambda = {_q(lam)}"]


def _jumps(p, ov):
    T = to_rational(p.T)
    if T <= 0:
        raise ParseError("T must be positive", field="payload.T")
    if any(x < 0 for x in p.a) or not any(p.a):
        raise ParseError("a must be a nonzero vector of non-negative integers", field="payload.a")
    jumps = jumping_numbers_snc(p.a, T)
    doc = {"a": list(p.a), "T": _q(T), "jumping_numbers": [_q(j) for j in jumps]}
    return doc, [f"jumping numbers of {_mono(p.a)} in (0, {_q(T)}]: {', '.join(doc['jumping_numbers'])}"]


def _budur_saito(p, ov):
    if any(x < 0 for x in p.a) or not any(p.a):
        raise ParseError("a must be a nonzero vector of non-negative integers", field="payload.a")
    alphas = p.alpha if isinstance(p.alpha, list) else [p.alpha]
    alphas = [to_rational(a) for a in alphas]
    if any(a <= 0 for a in alphas):
        raise ParseError("alpha must be positive", field="payload.alpha")
    cap = ov.cap if ov.cap is not None else p.cap
    bounds = _bounds(p.bounds, ov.bounds)
    bfuns = monomial_bfunctions(p.a, cap, bounds)
    checks = []
    text = [f"Budur-Saito check for f = {_mono(p.a)}, monomials with exponents <= {cap}"]
    for alpha in alphas:
        rep = budur_saito_check(p.a, alpha, cap, bounds)
        checks.append({
            "alpha": _q(alpha),
            "side_a": [list(e) for e in rep.side_a],
            "side_b": [list(e) for e in rep.side_b],
            "symmetric_difference": [list(e) for e in rep.symmetric_difference],
            "agrees": rep.agrees,
        })
        text.append(f"  alpha = {_q(alpha):>5}: |A| = {len(rep.side_a):>3}, |B| = {len(rep.side_b):>3}, "
                    f"{'agree' if rep.agrees else 'DISAGREE'}")
    doc = {
        "a": list(p.a),
        "cap": cap,
        "bounds": bounds.to_json(),
        "bfunctions": [{"g": list(e), **b.to_json()} for e, b in sorted(bfuns.items())],
        "checks": checks,
        "all_agree": all(c["agrees"] for c in checks),
    }
    return doc, text


def _min_exponent(p, ov):
    f = _poly(p.f, p.vars, "f")
    bounds = _bounds(p.bounds, ov.bounds)
    if p.resolution is not None:
        res = _resolution(p.resolution)
        source = "table"
    elif p.vars == 2:
        res = resolution_from_newton(f)
        source = "newton"
    else:
        raise ParseError("a resolution table is required unless vars = 2", field="payload.resolution")
    b_f = solve_bfunction(f, None, bounds).bfunction
    alpha = min_exponent_from_bfunction(b_f)
    lower = min_exponent_lower_bound(res)
    shifts = []
    for m in p.shifts:
        if m < 0:
            raise ParseError("shifts must be non-negative", field="payload.shifts")
        lo, up = sandwich_for_shifted(b_f, m)
        outside = [
            _q(r) for r in up.distinct_roots()
            if not is_negative_integer(r) and candidate_witness(r, res, m, exceptional_only=True) is None
        ]
        shifts.append({"m": m, "lower": lo.to_json(), "upper": up.to_json(),
                       "non_candidates": outside})
    doc = {
        "f": f.to_json(),
        "bounds": bounds.to_json(),
        "resolution_source": source,
        "resolution": res.to_json(),
        "bfunction": b_f.to_json(),
        "min_exponent": _q(alpha),
        "lower_bound": _q(lower),
        "bound_holds": lower <= alpha,
        "saito_check": saito_criterion_check(b_f, res),
        "sandwich": shifts,
    }
    text = [
        f"minimal exponent of f = {f}",
        f"  b_f(s) = {b_f.factored()}",
        f"  minimal exponent (oracle): {_q(alpha)}",
        f"  lower bound from exceptional divisors: {_q(lower)}",
        f"  bound holds: {doc['bound_holds']}; sandwich check: {doc['saito_check']}",
    ]
    return doc, text


def _newton_resolve(p, ov):
    f = _poly(p.f, 2, "f")
    if any(x < 0 for x in p.g):
        raise ParseError("g exponents must be non-negative", field="payload.g")
    np = newton_polygon(f)
    res = resolution_from_newton(f, tuple(p.g))
    doc = {
        "f": f.to_json(),
        "g": list(p.g),
        "newton": {
            "vertices": [list(v) for v in np.vertices],
            "faces": [{"start": list(fc.start), "end": list(fc.end), "normal": list(fc.normal)}
                      for fc in np.compact_faces],
        },
        "nondegenerate": nondegeneracy_check(f, np),
        "fan": [list(v) for v in fan_rays(f)],
        "resolution": res.to_json(),
        "lct_g": _q(lct_g(res)),
        "min_exponent_lower_bound": _q(min_exponent_lower_bound(res)),
    }
    text = [f"toric resolution of f = {f} (g = {_mono(p.g)})", *_divisor_rows(res),
            f"  lct_g = {doc['lct_g']}, minimal exponent >= {doc['min_exponent_lower_bound']}"]
    return doc, text


HANDLERS: Dict[str, Callable] = {
    "solve-b": _solve_b,
    "snc-bound": _snc_bound,
    "candidates": _candidates,
    "lct": _lct,
    "membership": _membership,
    "jumps": _jumps,
    "budur-saito": _budur_saito,
    "min-exponent": _min_exponent,
    "newton-resolve": _newton_resolve,
}


def _loc(prefix, err) -> str:
    return ".".join([prefix, *(str(x) for x in err["loc"])]) if err["loc"] else prefix


def _error(command, kind, message, field, code, extra=None):
    doc = {"command": command, "status": "error",
           "error": {"type": kind, "message": message, "field": field, **(extra or {})}}
    where = f" (at {field})" if field else ""
    return Report(doc, f"error [{kind}]{where}: {message}", code)


def run(spec, overrides: Overrides | None = None) -> Report:
    """Execute one problem description (a dict or :class:`ProblemSpec`)."""
    ov = overrides or Overrides()
    command = spec.get("command") if isinstance(spec, dict) else getattr(spec, "command", None)
    try:
        if not isinstance(spec, ProblemSpec):
            spec = ProblemSpec.model_validate(spec)
    except ValidationError as exc:
        err = exc.errors()[0]
        return _error(command, "SchemaError", err["msg"], _loc("", err).lstrip("."), EXIT_SCHEMA)
    command = spec.command
    try:
        payload = PAYLOAD_MODELS[command].model_validate(spec.payload)
    except ValidationError as exc:
        err = exc.errors()[0]
        return _error(command, "SchemaError", err["msg"], _loc("payload", err), EXIT_SCHEMA)
    try:
        result, lines = HANDLERS[command](payload, ov)
    except BoundsExhausted as exc:
        extra = {"bounds": exc.bounds.to_json()} if exc.bounds else None
        return _error(command, "BoundsExhausted", str(exc), exc.field or "payload.bounds",
                      EXIT_BOUNDS, extra)
    except HypothesisError as exc:
        return _error(command, type(exc).__name__, str(exc), _field(exc), EXIT_HYPOTHESIS)
    except (ParseError, VariableMismatch) as exc:
        return _error(command, "SchemaError", str(exc), _field(exc), EXIT_SCHEMA)
    except BSRootsError as exc:
        return _error(command, type(exc).__name__, str(exc), _field(exc), EXIT_INTERNAL)
    doc = {"command": command, "status": "ok", "result": result}
    return Report(doc, "\n".join(lines), EXIT_OK)


def _field(exc: BSRootsError) -> Optional[str]:
    if exc.field is None:
        return None
    return exc.field if exc.field.startswith("payload") else f"payload.{exc.field}"


def render(reports: List[Report], fmt: str, batch: bool) -> str:
    if fmt == "text":
        return "\n\n".join(r.text for r in reports) + "\n"
    docs = [r.document for r in reports]
    return json.dumps(docs if batch else docs[0], indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bsroots",
        description="Exact b-function oracle and resolution-based root bounds.",
    )
    ap.add_argument("--input", metavar="FILE", help="problem JSON (default: stdin)")
    ap.add_argument("--output", metavar="FILE", help="report destination (default: stdout)")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--ell-max", type=int, metavar="N", help="override ell_max for candidate sets")
    ap.add_argument("--bounds", metavar="ORD,DEG,SDEG,BDEG", help="override oracle bounds")
    ap.add_argument("--cap", type=int, metavar="N", help="override the monomial exponent cap")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    ov = Overrides(ell_max=args.ell_max, cap=args.cap)
    if args.ell_max is not None and args.ell_max < 0 or args.cap is not None and args.cap < 0:
        print("error: --ell-max and --cap must be non-negative", file=sys.stderr)
        return EXIT_SCHEMA
    if args.bounds is not None:
        try:
            ov.bounds = Bounds.parse(args.bounds)
        except ParseError as exc:
            print(f"error: --bounds: {exc}", file=sys.stderr)
            return EXIT_SCHEMA
    try:
        raw = open(args.input).read() if args.input else sys.stdin.read()
        data = json.loads(raw)
    except (OSError, json.JSONDecodeError) as exc:
        report = _error(None, "SchemaError", f"cannot read input: {exc}", "input", EXIT_SCHEMA)
        reports, batch = [report], False
    else:
        batch = isinstance(data, list)
        reports = [run(item, ov) for item in (data if batch else [data])]
    out = render(reports, args.format, batch)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return next((r.exit_code for r in reports if r.exit_code), EXIT_OK)


if __name__ == "__main__":
    sys.exit(main())
