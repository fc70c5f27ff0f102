"""Command-line front end: ``graph-ideals <verb> [graph file] [options]``.

Exit status: 0 on success, 2 when the answer is not covered by a theorem
(Unknown classification, NotSupported / RegimeUnsupported), 1 on operational
errors (unreadable file, parse error, inconsistent field flags, failed checks).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import __version__
from .classify import UNKNOWN, classify
from .errors import GraphIdealError, LinearSyzygyPresent, NotSupported, RegimeUnsupported
from .graph import Graph, cut_sets, parse_graph, recognize_shape, satisfies_cut_condition, verify_shape
from .ideals import IdealFamily
from .invariants import betti2, homological_report, linear_type_report
from .poly import FieldSpec, PolyRing, expected_sqrt_flag, is_prime
from .primes import height_route, ideal_height, lss_regime, minimal_primes
from .syzygy import first_syzygy, sym_ideal, verify_syzygies

SCHEMA_VERSION = 1
EXIT_OK, EXIT_ERROR, EXIT_NOT_COVERED = 0, 1, 2
FAMILY_CHOICES = ("J", "L", "I", "Pi")
GRAPH_VERBS = ("classify", "invariants", "primes", "syzygy", "sym", "verify", "oracle")


class UsageError(GraphIdealError):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; here 2 means "not covered", so use 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


@dataclass
class Outcome:
    report: dict
    status: int = EXIT_OK


def plain(obj):
    """Tuples to lists and keys to strings, so the report equals its JSON image."""
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    return obj


def field_from_flags(char: int, sqrt_flag: str = "auto") -> FieldSpec:
    if char < 0 or (char and not is_prime(char)):
        raise UsageError(f"--char must be 0 or a prime, got {char}")
    expected = expected_sqrt_flag(char)
    if sqrt_flag == "auto":
        return FieldSpec(char, expected)
    wanted = sqrt_flag == "yes"
    if wanted != expected:
        where = "Q" if char == 0 else f"F_{char}"
        have = "has" if expected else "has no"
        raise UsageError(f"--sqrt-minus-one {sqrt_flag} is inconsistent: {where} {have} a square root of -1")
    return FieldSpec(char, wanted)


def graph_json(g: Graph) -> dict:
    return {"n": g.n, "m": g.m, "edges": [list(e) for e in g.edges], "encoding": g.encode()}


def field_json(field: FieldSpec) -> dict:
    return {
        "characteristic": field.characteristic,
        "sqrt_minus_one": field.has_sqrt_minus_one,
        "name": field.describe(),
    }


# --- verbs -----------------------------------------------------------------------

def do_classify(g, fam, field, args) -> Outcome:
    cls = classify(fam, g, field)
    res = cls.to_json()
    res["label"] = cls.label
    prov = {"status": cls.witness}
    if cls.reason:
        prov["reason"] = cls.reason
    return Outcome({"result": res, "provenance": prov}, EXIT_NOT_COVERED if cls.status == UNKNOWN else EXIT_OK)


def do_invariants(g, fam, field, args) -> Outcome:
    rep = homological_report(g, fam, field).to_json()
    prov = rep.pop("provenance")
    if fam in (IdealFamily.LSS, IdealFamily.BINOMIAL_EDGE):
        lt = linear_type_report(g, fam, field)
        rep["linear_type"] = lt["flags"]
        prov["linear_type"] = lt["provenance"]
        if "caveat" in lt:
            prov["linear_type_caveat"] = lt["caveat"]
    return Outcome({"result": rep, "provenance": prov})


def do_primes(g, fam, field, args) -> Outcome:
    primes = minimal_primes(fam, g, field)
    res = {
        "height": ideal_height(fam, g, field),
        "count": len(primes),
        "primes": [p.to_json() for p in primes],
    }
    prov = {"height": height_route(fam, g, field), "primes": "cut sets with the sign-split criterion"}
    if fam == IdealFamily.LSS:
        res["regime"] = lss_regime(field)
        if res["regime"] == "Q_T":
            prov["primes"] = "Q_T over the cut sets"
    return Outcome({"result": res, "provenance": prov})


def do_syzygy(g, fam, field, args) -> Outcome:
    gens = first_syzygy(g, fam, field)
    check = verify_syzygies(g, fam, gens)
    res = {
        "count": len(gens),
        "generators": [dict(s.to_json(), label=s.label()) for s in gens],
        "verified": check,
    }
    prov = {
        "TypeA": "Koszul pairs over all edge pairs",
        "TypeB": "one relation per K_{1,3} subgraph, signs alternating by leaf rank",
        "verified": "exact expansion over Z",
    }
    if fam == IdealFamily.PARITY:
        prov["TypeB"] += "; parity signs mirror the LSS ones and are checked by expansion and the rank oracle, not by a cited theorem"
    return Outcome({"result": res, "provenance": prov}, EXIT_OK if check["ok"] else EXIT_ERROR)


def do_sym(g, fam, field, args) -> Outcome:
    polys = sym_ideal(g, fam, field)
    ring = PolyRing(g.n, tuple(g.edges))
    res = {"variables": list(ring.names), "count": len(polys), "generators": [str(p) for p in polys]}
    prov = {"generators": "entries of T*phi with phi the first-syzygy matrix"}
    return Outcome({"result": res, "provenance": prov})


def do_verify(g, fam, field, args) -> Outcome:
    checks = {}
    shape = recognize_shape(g) if g.is_connected() else None
    if shape is not None:
        checks["shape_witness"] = verify_shape(g, shape)
    cs = cut_sets(g)
    checks["cut_sets_recheck"] = all(satisfies_cut_condition(g, T) for T in cs)
    try:
        primes = minimal_primes(fam, g, field)
        checks["prime_heights"] = all(p.height == p.recomputed_height() for p in primes)
    except RegimeUnsupported:
        pass
    try:
        cls = classify(fam, g, field)
        h = ideal_height(fam, g, field)
        if cls.status != UNKNOWN:
            checks["ci_iff_height"] = (cls.status == "CI") == (h == g.m)
        if cls.status == "ACI":
            checks["aci_height"] = h == g.m - 1
    except RegimeUnsupported:
        pass
    if fam in (IdealFamily.LSS, IdealFamily.PARITY):
        try:
            checks["syzygies_exact"] = verify_syzygies(g, fam, first_syzygy(g, fam))["ok"]
        except NotSupported:
            pass
    ok = all(checks.values())
    res = {"ok": ok, "checks": checks}
    prov = {"checks": "independent re-checks of library outputs"}
    return Outcome({"result": res, "provenance": prov}, EXIT_OK if ok else EXIT_ERROR)


def do_oracle(g, fam, field, args) -> Outcome:
    from .oracle import beta24, linear_syzygies, syzygy_completeness

    primes = args.primes or [field.characteristic or 101]
    rows = []
    for p in primes:
        if not is_prime(p):
            raise UsageError(f"--primes entries must be prime, got {p}")
        row = {"p": p, "linear_syzygies": linear_syzygies(g, fam, p)}
        try:
            row["beta24"] = beta24(g, fam, p)
        except LinearSyzygyPresent:
            row["beta24"] = None
        if fam in (IdealFamily.LSS, IdealFamily.PARITY):
            try:
                row["betti2_formula"] = betti2(g, fam)
                row["syzygy_complete"] = syzygy_completeness(g, fam, p)
            except NotSupported:
                pass
        rows.append(row)
    ok = all(
        r.get("betti2_formula") in (None, r["beta24"]) and r.get("syzygy_complete", True)
        for r in rows
    )
    res = {"ok": ok, "primes": rows}
    prov = {
        "beta24": "m*C(2n+1,2) - rank of the degree-4 graded matrix over F_p",
        "linear_syzygies": "m*2n - rank of the degree-3 graded matrix over F_p",
    }
    return Outcome({"result": res, "provenance": prov}, EXIT_OK if ok else EXIT_ERROR)


def do_scan(args) -> Outcome:
    from .oracle import CHECKS, corpus_scan

    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    bad = [c for c in checks if c not in CHECKS]
    if bad:
        raise UsageError(f"unknown checks {bad}; choose from {', '.join(CHECKS)}")
    report = corpus_scan(
        args.nmax, checks, kind=args.kind, chars=tuple(args.chars), primes=tuple(args.primes or (2, 3, 101)),
        workers=args.workers, labeled=not args.iso,
    )
    prov = {"corpus": "labeled edge subsets of K_n" if report["labeled"] else "one graph per isomorphism class"}
    status = EXIT_OK if not report["violations"] else EXIT_ERROR
    return Outcome({"result": report, "provenance": prov}, status)


VERBS = {
    "classify": do_classify,
    "invariants": do_invariants,
    "primes": do_primes,
    "syzygy": do_syzygy,
    "sym": do_sym,
    "verify": do_verify,
    "oracle": do_oracle,
}


# --- rendering -------------------------------------------------------------------

def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def _text_lines(value, indent=0):
    pad = "  " * indent
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                yield f"{pad}{k}:"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}{k}: {_scalar(v)}"
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)):
                yield f"{pad}-"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}- {_scalar(v)}"
    else:
        yield pad + _scalar(value)


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, dict)):
        return "[]" if isinstance(v, list) else "{}"
    return str(v)


def render_text(report: dict) -> str:
    head = [f"command: {report['command']}"]
    if report.get("graph"):
        head.append(f"graph: {report['graph']['encoding']}")
    if report.get("family"):
        head.append(f"family: {report['family']}")
    if report.get("field"):
        head.append(f"field: {report['field']['name']}")
    res = report["result"]
    if report["command"] == "scan":
        head.append(f"{res['graphs']} graphs, {len(res['violations'])} violations")
    if report["command"] == "classify" and "label" in res:
        head.append(f"status: {res['label']} ({res['witness']})")
    body = list(_text_lines({"result": res, "provenance": report["provenance"]}))
    return "\n".join(head + body) + "\n"


# --- entry points ----------------------------------------------------------------

def int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graph-ideals", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--char", type=int, default=0, help="field characteristic (0 or a prime)")
    common.add_argument("--sqrt-minus-one", choices=("auto", "yes", "no"), default="auto")
    common.add_argument("--output", choices=("text", "json"), default="text")

    for verb in GRAPH_VERBS:
        p = sub.add_parser(verb, parents=[common])
        p.add_argument("graph", help="edge-list file ('-' for stdin)")
        p.add_argument("--family", choices=FAMILY_CHOICES, default="L")
        if verb == "oracle":
            p.add_argument("--primes", type=int_list, help="comma-separated primes for the rank oracle")

    s = sub.add_parser("scan", parents=[common])
    s.add_argument("--nmax", type=int, required=True)
    s.add_argument("--checks", default="ci-height", help="comma-separated check names")
    s.add_argument("--kind", choices=("all", "trees", "odd-unicyclic"), default="all")
    s.add_argument("--iso", action="store_true", help="one graph per isomorphism class (trees/odd-unicyclic)")
    s.add_argument("--chars", type=int_list, default=[0], help="comma-separated characteristics")
    s.add_argument("--primes", type=int_list, help="comma-separated primes for oracle checks")
    s.add_argument("--workers", type=int, default=1)
    return parser


def _read_graph(path: str) -> Graph:
    if path == "-":
        return parse_graph(sys.stdin.read())
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(text)


def run(argv=None) -> tuple[int, dict | None, str]:
    """Parse argv and execute; returns (exit status, report or None, rendered output)."""
    args = build_parser().parse_args(argv)
    field = field_from_flags(args.char, args.sqrt_minus_one)
    if args.verb == "scan":
        out = do_scan(args)
        report = {"schema_version": SCHEMA_VERSION, "command": "scan", "graph": None,
                  "family": None, "field": field_json(field)}
    else:
        g = _read_graph(args.graph)
        fam = IdealFamily.parse(args.family)
        report = {"schema_version": SCHEMA_VERSION, "command": args.verb, "graph": graph_json(g),
                  "family": fam.value, "field": field_json(field)}
        try:
            out = VERBS[args.verb](g, fam, field, args)
        except (NotSupported, RegimeUnsupported) as exc:
            out = Outcome(
                {"result": {"covered": False, "reason": str(exc)},
                 "provenance": {"covered": type(exc).__name__}},
                EXIT_NOT_COVERED,
            )
    report.update(out.report)
    report = plain(report)
    text = render_json(report) if args.output == "json" else render_text(report)
    return out.status, report, text


def main(argv=None) -> int:
    try:
        status, _, text = run(argv)
    except SystemExit as exc:  # argparse usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    except (GraphIdealError, ValueError) as exc:
        print(f"graph-ideals: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
