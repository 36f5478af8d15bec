"""Command-line front end: verification runs with machine-readable reports.

Exit status is 0 when every check passes (exactly or generically), 1 when
some check fails, and 2 when a check errors or the input is unusable.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .arith.poly import as_fraction
from .cartan import InvalidCartanMatrix, builtin_gcm, read_gcm_file
from .core import closure, conjugation, decomposition, forms, relations
from .core.generators import EDGE_KINDS, edge_generators, symbolic_vertex_params, vertex_generators
from .core.reports import ERROR, FAIL, GENERIC_PASS, PASS, VerificationReport
from .lie import BudgetExceeded
from . import suites

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# input parsing


def parse_params(text: str | None) -> dict | None:
    """JSON object (inline or a file path) mapping names to rationals ``"p/q"``."""
    if text is None:
        return None
    path = Path(text)
    raw = path.read_text() if not text.lstrip().startswith("{") and path.exists() else text
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"parameters are not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("parameters must be a JSON object")
    out = {}
    for k, v in data.items():
        if isinstance(v, float):
            raise UsageError(f"parameter {k}: give exact rationals as strings 'p/q', not floats")
        try:
            out[str(k)] = as_fraction(v)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise UsageError(f"parameter {k}: {exc}") from exc
    return out


def _gcm_from_args(args):
    if getattr(args, "gcm_file", None):
        return read_gcm_file(args.gcm_file)
    if not args.family:
        raise UsageError("give --family (and --rank) or --gcm-file")
    return builtin_gcm(args.family, args.rank, p=args.p, q=args.q)


def _model_from_args(args):
    gcm = _gcm_from_args(args)
    if getattr(args, "gcm_file", None):
        if args.backend == "matrix":
            raise UsageError("a GCM file runs on the km backend")
        return suites.make_model(gcm=gcm, backend="km", height=args.height)
    return suites.make_model(args.family, args.rank, backend=args.backend, height=args.height, p=args.p, q=args.q)


def _specialize(fam, params):
    if params is None:
        return fam
    names = fam.parameter_names()
    missing = [n for n in names if n not in params]
    if missing:
        raise UsageError(f"missing parameters {missing}; this family uses {names}")
    extra = sorted(set(params) - set(names))
    if extra:
        raise UsageError(f"unknown parameters {extra}; this family uses {names}")
    return fam.specialize(params)


def _family(args, kind: str):
    model = _model_from_args(args)
    if kind == "vertex":
        ring, a = symbolic_vertex_params(model.gcm)
        fam = vertex_generators(model, a, ring)
    else:
        opts = {}
        if args.k is not None:
            opts["k"] = args.k
        if args.root_sign is not None:
            opts["root_sign"] = args.root_sign
        if args.root is not None:
            opts["root"] = args.root
        if args.j_plus:
            opts["J_plus"] = tuple(args.j_plus)
        if args.r is not None:
            opts["r"] = args.r
        fam = edge_generators(kind, model, **opts)
    return _specialize(fam, parse_params(args.params))


# ---------------------------------------------------------------------------
# commands (each returns a list of reports)


def cmd_verify(args) -> list:
    if args.what == "vertex":
        fam = _family(args, "vertex")
        return [relations.verify_vertex_serre(fam, mode=args.mode, seed=args.seed)]
    if not args.kind:
        raise UsageError(f"verify edge needs --kind ({', '.join(EDGE_KINDS)})")
    kind = args.kind.upper()
    if kind == "MIN_CARTAN":
        gcm = _gcm_from_args(args)
        return [relations.min_cartan_check(gcm, args.r, height=args.height, injective=args.injective, mode=args.mode, seed=args.seed)]
    fam = _family(args, kind)
    return [relations.verify_edge_relations(fam, mode=args.mode, seed=args.seed)]


def cmd_form(args) -> list:
    params = parse_params(args.params)
    b = None if params is None else {int(k.lstrip("b")): v for k, v in params.items()}
    out = [forms.form_invariance_check(args.n, b)]
    if args.n == 6 and b is None:
        out.append(suites.omega6_display_check())
    if args.n % 2 == 0 and args.n >= 2:
        out.append(forms.sp_identification_check(args.n, b, seed=args.seed))
    return out


def cmd_flatness(args) -> list:
    kind = (args.kind or "vertex").lower()
    fam = _family(args, "vertex" if kind == "vertex" else kind.upper())
    return [closure.flatness_check(fam, seed=args.seed, max_degree=args.max_degree)]


def cmd_conjugation(args) -> list:
    scheme = args.scheme.upper()
    model = None
    gcm = None
    if scheme in ("CONICAL", "STAR", "PEACOCK"):
        model = _model_from_args(args) if (args.family or args.gcm_file) else None
        if model is None:
            raise UsageError(f"{scheme} needs --family/--rank or --gcm-file")
    elif scheme not in conjugation.SCHEMES:
        raise UsageError(f"unknown scheme {args.scheme!r}; choose from {', '.join(conjugation.SCHEMES)}")
    return [conjugation.conjugation_check(scheme, n=args.n, model=model, root=args.root, J_plus=tuple(args.j_plus or ()), gcm=gcm)]


def cmd_decomposition(args) -> list:
    params = parse_params(args.params)
    try:
        out = [decomposition.sp_decomposition_check(args.n, params, seed=args.seed)]
        if args.n == 3:
            out.append(decomposition.sp6_example_check(params))
    except decomposition.DegenerateParameters as exc:
        raise UsageError(f"{exc} (hypothesis: all b_i != 0)") from exc
    return out


def cmd_run_suite(args) -> list:
    if args.name not in suites.SUITES:
        raise UsageError(f"unknown suite {args.name!r}; see list-suites")
    return suites.run_suite(args.name, suites.SuiteConfig(seed=args.seed, height=args.height))


def cmd_run_all(args) -> list:
    cfg = suites.SuiteConfig(seed=args.seed, height=args.height)
    out = []
    for name in suites.SUITES:
        for r in suites.run_suite(name, cfg):
            r.title = f"{name}: {r.title}"
            out.append(r)
    return out


# ---------------------------------------------------------------------------
# report document


def jsonable(x):
    """Exact values as strings, tuples as lists: a lossless JSON object model."""
    if isinstance(x, bool) or x is None or isinstance(x, (str, int)):
        return x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return str(x)


def summarize(reports: list) -> dict:
    counts = {s: 0 for s in (PASS, GENERIC_PASS, FAIL, ERROR)}
    for r in reports:
        for k, v in r.counts().items():
            counts[k] += v
    return counts


def exit_status(reports: list) -> int:
    counts = summarize(reports)
    if counts[ERROR]:
        return EXIT_ERROR
    if counts[FAIL]:
        return EXIT_FAIL
    return EXIT_OK


def config_echo(args) -> dict:
    keep = {k: v for k, v in vars(args).items() if k not in ("func", "out", "quiet")}
    if "backend" in keep and keep.get("family") is not None:
        keep["resolved_backend"] = suites.resolve_backend(keep["family"], keep["backend"])
    keep["height_default"] = suites.default_height()
    return jsonable(keep)


def build_document(args, reports: list, timing: list) -> dict:
    return {
        "tool": "electrical-lie",
        "version": __version__,
        "config": config_echo(args),
        "reports": [jsonable(r.to_dict()) for r in reports],
        "summary": summarize(reports),
        "timing": timing,
    }


def document_body(doc: dict) -> str:
    """Canonical text of a document without wall-clock fields."""
    body = {k: v for k, v in doc.items() if k != "timing"}
    return json.dumps(body, indent=2, sort_keys=True)


def error_document(args, message: str) -> dict:
    r = VerificationReport(f"{getattr(args, 'command', 'run')}")
    r.add("input", "well-formed configuration", ERROR, None, message=message)
    return build_document(args, [r], [])


# ---------------------------------------------------------------------------
# argument parser


def _algebra_args(p):
    p.add_argument("--family", help="A, B, C, D, E, F, G, RANK2, AFFINE_A, AFFINE_D4")
    p.add_argument("--rank", type=int, help="rank (for AFFINE_A: size n of the cyclic index set)")
    p.add_argument("--p", type=int, help="RANK2: a_12 = -p")
    p.add_argument("--q", type=int, help="RANK2: a_21 = -q")
    p.add_argument("--gcm-file", help="plain-text GCM: rank on the first line, then integer rows")
    p.add_argument("--backend", choices=("matrix", "km", "auto"), default="auto")


def _family_args(p):
    _algebra_args(p)
    p.add_argument("--symbolic", action="store_true", help="keep parameters symbolic (the default without --params)")
    p.add_argument("--params", help="JSON object or file mapping parameter names to rationals 'p/q'")
    p.add_argument("--kind", help=f"edge model kind: {', '.join(EDGE_KINDS)}")
    p.add_argument("--k", type=int, help="TYPE_A_ROOT: root label")
    p.add_argument("--root-sign", type=int, choices=(-1, 1), help="TYPE_A_ROOT: sign of the cubic root term")
    p.add_argument("--root", type=int, help="tree kinds: root label")
    p.add_argument("--j-plus", type=int, nargs="*", help="PEACOCK: leaves in J+")
    p.add_argument("--r", type=int, help="MIN_CARTAN: chain length r")
    p.add_argument("--injective", action="store_true", help="MIN_CARTAN: also check the injectivity hypotheses and flatness")


def _common(p):
    p.add_argument("--seed", type=int, default=0, help="seed for generic specializations")
    p.add_argument("--height", type=int, help=f"KM height budget (default from ${suites.HEIGHT_ENV} or 12)")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--quiet", action="store_true", help="only the exit status and summary")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="electrical-lie", description="Exact verification of electrical Lie algebra identities.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="deformed Serre relations of a generator family")
    v.add_argument("what", choices=("vertex", "edge"))
    _family_args(v)
    v.add_argument("--mode", choices=("symbolic", "generic"), default="symbolic")
    _common(v)
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("form", help="invariant antisymmetric form of the type-A chain model")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--symbolic", action="store_true")
    f.add_argument("--params", help="JSON mapping b1.. to rationals")
    _common(f)
    f.set_defaults(func=cmd_form)

    fl = sub.add_parser("flatness", help="per-degree closure dimensions against the undeformed ones")
    _family_args(fl)
    fl.add_argument("--max-degree", type=int, help="closure bound (affine default 6)")
    _common(fl)
    fl.set_defaults(func=cmd_flatness)

    c = sub.add_parser("conjugation", help="Ad(g_a) of vertex generators against closed forms")
    c.add_argument("--scheme", required=True, help=", ".join(conjugation.SCHEMES))
    c.add_argument("--n", type=int)
    _algebra_args(c)
    c.add_argument("--root", type=int)
    c.add_argument("--j-plus", type=int, nargs="*")
    _common(c)
    c.set_defaults(func=cmd_conjugation)

    d = sub.add_parser("decomposition", help="splitting of the sp_2n chain model")
    d.add_argument("--n", type=int, default=3)
    d.add_argument("--params", help="JSON mapping b1..b_{n-1} to nonzero rationals")
    _common(d)
    d.set_defaults(func=cmd_decomposition)

    ls = sub.add_parser("list-suites", help="catalog of named suites")
    ls.set_defaults(func=None)

    rs = sub.add_parser("run-suite", help="run one named suite")
    rs.add_argument("name")
    _common(rs)
    rs.set_defaults(func=cmd_run_suite)

    ra = sub.add_parser("run-all", help="run every suite")
    _common(ra)
    ra.set_defaults(func=cmd_run_all)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list-suites":
        print(json.dumps(suites.list_suites(), indent=2))
        return EXIT_OK
    timing = []
    try:
        start = time.perf_counter()
        reports = args.func(args)
        timing.append({"command": args.command, "seconds": round(time.perf_counter() - start, 3)})
        doc = build_document(args, reports, timing)
        status = exit_status(reports)
    except (UsageError, InvalidCartanMatrix, OSError, KeyError, ValueError, BudgetExceeded) as exc:
        reports = []
        doc = error_document(args, f"{type(exc).__name__}: {exc}")
        status = EXIT_ERROR
    if args.out:
        Path(args.out).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    for r in reports:
        if not args.quiet:
            print(r.summary_line())
            for c in r.failures():
                print(f"  {c.status}: {c.name} [{c.ref}] {jsonable(c.witness or c.detail)}")
    if not reports:
        print(doc["reports"][0]["checks"][0]["detail"]["message"], file=sys.stderr)
    print(json.dumps(doc["summary"], sort_keys=True))
    return status


if __name__ == "__main__":
    sys.exit(main())
