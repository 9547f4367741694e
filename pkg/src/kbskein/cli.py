"""Command line front end: ``skein <verb> [flags]``.

Verbs: surface, bracket, rewrite, relations, verify, export.  Output is JSON
(or text where offered) written to ``-o PATH`` or standard output.  Exit
codes: 0 success, 2 bad flags or input, 3 computation aborted, 4 resource cap.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from . import __version__
from .linalg import NotInRingError
from .relations import (
    RelationSet,
    enumerate_supports,
    export_presentation,
    find_relations,
    specialized_terms,
    verify_localization,
)
from .rewrite import RewriteError, rewrite_element
from .ring import ONE, LaurentScalar, SpecializationError
from .skein import ResourceCapError, engine_for
from .terms import TermPoly, parse_letter
from .topology import CuttingSystem, CuttingSystemError, genus_boundary, planar, surface_invariants, validate

__all__ = ["main", "run", "parse_product", "emit_report"]

TOOL = "skein"


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Product specs

_SCALAR = re.compile(r"q\^\{?(-?\d+)(?:/(\d+))?\}?")


def _parse_scalar(tok: str) -> Optional[LaurentScalar]:
    m = _SCALAR.fullmatch(tok)
    if m:
        num, den = int(m.group(1)), m.group(2)
        if den is None:
            return LaurentScalar.q_half(2 * num)
        if den not in ("1", "2"):
            raise UsageError(f"exponent of {tok!r} is not a multiple of 1/2")
        return LaurentScalar.q_half(num * (2 // int(den)))
    if re.fullmatch(r"-?\d+", tok):
        return LaurentScalar(int(tok))
    return None


def _parse_term(text: str, active) -> TermPoly:
    coeff = ONE
    letters = []
    text = re.sub(r"\s*,\s*", ",", text.replace("*", " "))
    for chunk in text.split():
        for tok in chunk.split(","):
            if not tok:
                raise UsageError(f"empty generator in {text.strip()!r}")
            c = _parse_scalar(tok)
            if c is not None:
                if letters:
                    raise UsageError(f"scalar {tok!r} must precede the generators")
                coeff = coeff * c
                continue
            try:
                S = parse_letter(tok)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
            if active is not None and not set(S) <= set(active):
                raise UsageError(f"generator {tok!r} uses an inactive edge")
            letters.append(S)
    return TermPoly({tuple(letters): coeff})


def parse_product(spec: str, active=None) -> TermPoly:
    """Parse ``"t1,t2 - q^{1/2} t1.2"`` into a TermPoly.

    Tokens separated by commas are stacked top to bottom in reading order;
    terms are joined by `` + `` or `` - `` surrounded by spaces.
    """
    spec = spec.strip()
    if not spec:
        raise UsageError("empty product")
    sign = 1
    if spec.startswith("- "):
        sign, spec = -1, spec[2:]
    elif spec.startswith("+ "):
        spec = spec[2:]
    parts = re.split(r"\s+([+-])\s+", spec)
    out = TermPoly()
    signs = [sign] + [1 if s == "+" else -1 for s in parts[1::2]]
    for s, term in zip(signs, parts[0::2]):
        out.iadd(_parse_term(term, active), LaurentScalar(s))
    return out


# ---------------------------------------------------------------------------
# Output


def _header(cs: CuttingSystem) -> dict:
    return {"tool": TOOL, "version": __version__, "surface_hash": cs.digest()}


def emit_report(report: dict, fmt: str = "json") -> str:
    """Serialize with stable key order; text output lists ``key: value`` lines."""
    if fmt == "json":
        return json.dumps(report, indent=1, sort_keys=True) + "\n"
    if fmt == "text":
        lines = []
        for key in sorted(report):
            val = report[key]
            if isinstance(val, str) and "\n" in val:
                lines.append(f"{key}:")
                lines.extend("  " + x for x in val.rstrip("\n").split("\n"))
            elif isinstance(val, (dict, list)):
                lines.append(f"{key}: {json.dumps(val, sort_keys=True)}")
            else:
                lines.append(f"{key}: {val}")
        return "\n".join(lines) + "\n"
    raise UsageError(f"unknown format {fmt!r}")


def _write(text: str, path: Optional[str]):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# Arguments


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog=TOOL, description="Exact skein algebra computations.")
    ap.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = ap.add_subparsers(dest="verb", required=True)

    def common(p, product=False):
        g = p.add_argument_group("surface")
        g.add_argument("--surface", metavar="PATH", help="cutting system JSON")
        g.add_argument("--planar", type=int, metavar="N")
        g.add_argument("--genus", type=int, metavar="G")
        g.add_argument("--holes", type=int, metavar="K", help="extra boundary components")
        p.add_argument("--jobs", type=int, default=1, metavar="N")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--q-special", dest="q_special", metavar="VAL",
                       help="specialize q^(1/2) in the output only")
        p.add_argument("-o", "--output", metavar="PATH")
        if product:
            p.add_argument("--product", required=True, metavar="SPEC")

    common(sub.add_parser("surface", help="build and validate a cutting system"))
    common(sub.add_parser("bracket", help="bracket of a product of generators"), product=True)
    common(sub.add_parser("rewrite", help="rewrite the bracket of a product in the generators"),
           product=True)
    for verb, hlp in (("relations", "relations on supports"), ("verify", "localization check"),
                      ("export", "presentation")):
        p = sub.add_parser(verb, help=hlp)
        common(p)
        p.add_argument("--degree", type=int, default=6, metavar="D")
        p.add_argument("--support", metavar="LIST", help='e.g. "1,2,3"; default: all supports')
    return ap


def _surface(args) -> CuttingSystem:
    given = [x is not None for x in (args.surface, args.planar, args.genus)]
    if sum(given) != 1:
        raise UsageError("give exactly one of --surface, --planar, --genus")
    if args.holes is not None and args.genus is None:
        raise UsageError("--holes needs --genus")
    if args.surface is not None:
        with open(args.surface) as fh:
            data = json.load(fh)
        cs = CuttingSystem.from_json(data.get("surface", data))
    elif args.planar is not None:
        cs = planar(args.planar)
    else:
        cs = genus_boundary(args.genus, args.holes or 0)
    diag = validate(cs)
    if not diag.ok:
        raise UsageError("invalid cutting system: " + "; ".join(diag.messages))
    return cs


def _q_special(args) -> Optional[Fraction]:
    if args.q_special is None:
        return None
    try:
        at = Fraction(args.q_special)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad --q-special value {args.q_special!r}") from None
    ONE.specialize(at)
    return at


def _supports(args, cs: CuttingSystem) -> List[tuple]:
    if args.support is None:
        return enumerate_supports(cs)
    try:
        v = tuple(sorted({int(x) for x in args.support.split(",") if x.strip()}))
    except ValueError:
        raise UsageError(f"bad --support {args.support!r}") from None
    if not 2 <= len(v) <= 6 or not set(v) <= cs.active_edges:
        raise UsageError(f"support {v} must be 2 to 6 active edges")
    return [v]


def _vector_json(v, at) -> dict:
    out = v.to_json()
    if at is not None:
        out = {"terms": [dict(name.to_json(), coeff=str(c)) for name, c in sorted(v.specialize(at).items())]}
    return out


def _poly_json(p: TermPoly, at) -> dict:
    if at is None:
        return p.to_json()
    return {"terms": specialized_terms(p, at)}


# ---------------------------------------------------------------------------
# Verbs


def _cmd_surface(args, cs):
    diag = validate(cs)
    rep = _header(cs)
    rep.update(surface=cs.to_json(), word=cs.word(), invariants=surface_invariants(cs),
               diagnostics=diag.to_json())
    return emit_report(rep, args.format)


def _cmd_bracket(args, cs):
    p = parse_product(args.product, cs.active_edges)
    v = engine_for(cs).theta_eval(p)
    rep = _header(cs)
    rep.update(product=str(p), vector=_vector_json(v, _q_special(args)))
    return emit_report(rep, args.format)


def _cmd_rewrite(args, cs):
    p = parse_product(args.product, cs.active_edges)
    eng = engine_for(cs)
    v = eng.theta_eval(p)
    r = rewrite_element(cs, v)
    if eng.theta_eval(r) != v:  # pragma: no cover - guarded by the rewriter
        raise RewriteError("rewritten polynomial does not reproduce the bracket")
    rep = _header(cs)
    rep.update(product=str(p), rewrite=_poly_json(r, _q_special(args)), text=str(r), verified=True)
    return emit_report(rep, args.format)


def _relation_sets(args, cs) -> List[RelationSet]:
    return [find_relations(cs, v, args.degree) for v in _supports(args, cs)]


def _cmd_relations(args, cs):
    at = _q_special(args)
    rep = _header(cs)
    sets = []
    for rs in _relation_sets(args, cs):
        d = rs.to_json()
        if at is not None:
            d["relations"] = [_poly_json(p, at) for p in rs.relations]
        sets.append(d)
    rep["relation_sets"] = sets
    return emit_report(rep, args.format)


def _cmd_verify(args, cs):
    if args.degree > 7:
        raise ResourceCapError("verify is limited to degree 7")
    sets = _relation_sets(args, cs) if args.support is not None else None
    report = verify_localization(cs, args.degree, relation_sets=sets)
    rep = _header(cs)
    if args.format == "text":
        return f"{TOOL} {__version__} surface {cs.digest()}\n" + report.to_text()
    rep.update(report.to_json())
    return emit_report(rep, "json")


def _cmd_export(args, cs):
    doc = export_presentation(cs, _relation_sets(args, cs), args.format, _q_special(args))
    if args.format == "json":
        data = json.loads(doc)
        data.update(_header(cs))
        return json.dumps(data, indent=1, sort_keys=True) + "\n"
    return f"{TOOL} {__version__} surface {cs.digest()}\n" + doc


_VERBS = {
    "surface": _cmd_surface,
    "bracket": _cmd_bracket,
    "rewrite": _cmd_rewrite,
    "relations": _cmd_relations,
    "verify": _cmd_verify,
    "export": _cmd_export,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        cs = _surface(args)
        text = _VERBS[args.verb](args, cs)
        _write(text, args.output)
    except ResourceCapError as exc:
        print(f"{TOOL}: resource cap: {exc}", file=sys.stderr)
        return 4
    except (UsageError, CuttingSystemError, SpecializationError, OSError, json.JSONDecodeError) as exc:
        print(f"{TOOL}: {exc}", file=sys.stderr)
        return 2
    except (RewriteError, NotInRingError, ArithmeticError) as exc:
        print(f"{TOOL}: aborted: {exc}", file=sys.stderr)
        return 3
    return 0


def main(argv: Optional[Sequence[str]] = None):
    sys.exit(run(argv))


if __name__ == "__main__":  # pragma: no cover
    main()
