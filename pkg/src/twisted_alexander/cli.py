"""Command-line front end.

Every subcommand prints a text report, or with ``--json`` a versioned JSON
document.  The exit status is 0 when every check in the run passed, 1 when a
check failed and 2 on a precondition or usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .conjecture import ConjectureReport, verify_conjecture
from .errors import TwistedAlexanderError
from .families import (
    FamilyReport,
    family_point,
    find_row,
    known_f,
    load_appendix,
    verify_appendix,
    verify_family_point,
)
from .fox import twisted_alexander_oracle
from .laurent import IntLaurent, canonical_unit_normalize, format_poly, parse_poly
from .twisted import alexander, twisted_alexander_product
from .twobridge import TwoBridgeFraction, check_sigma_properties, sigma_sequence, vertex_labeling

FORMAT_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    subcommand: str
    p: int | None = None
    q: int | None = None
    ell: int | None = None
    m: int = 1
    k: int = 0
    j: int = 0
    kmax: int = 3
    jmax: int = 2
    method: str = "product"
    output: str = "text"
    root: str | None = None
    verify: bool = False
    f_file: str | None = None
    appendix: str | None = None
    workers: int = 1

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> RunConfig:
        fields = {k: v for k, v in vars(ns).items() if k in cls.__dataclass_fields__ and v is not None}
        fields["output"] = "structured" if ns.json else "text"
        return cls(**fields)


class Report:
    """Collects text lines and a structured payload for one run."""

    def __init__(self, command: str):
        self.command = command
        self.lines: list[str] = []
        self.data: dict = {}
        self.ok = True

    def line(self, text: str = ""):
        self.lines.append(text)

    def check(self, name: str, passed: bool, detail: str = ""):
        self.ok = self.ok and passed
        self.data.setdefault("checks", []).append({"name": name, "passed": passed, "detail": detail})
        self.line(f"[{'PASS' if passed else 'FAIL'}] {name}{': ' + detail if detail else ''}")

    def emit(self, structured: bool, stream=None):
        stream = stream or sys.stdout
        if structured:
            doc = {"format_version": FORMAT_VERSION, "command": self.command, "ok": self.ok, **self.data}
            json.dump(doc, stream, indent=2, sort_keys=True)
            stream.write("\n")
        else:
            stream.write("\n".join(self.lines) + "\n")


def poly_json(p: IntLaurent | None):
    return None if p is None else p.term_list()


def poly_from_json(data) -> IntLaurent:
    return IntLaurent.from_terms((e, c) for e, c in data)


def _fraction(cfg: RunConfig) -> TwoBridgeFraction:
    if cfg.p is None or cfg.q is None:
        raise argparse.ArgumentTypeError("--p and --q are required")
    return TwoBridgeFraction(cfg.p, cfg.q)


def _rows(cfg: RunConfig):
    return load_appendix(cfg.appendix)


def _conjecture_data(rep: ConjectureReport) -> dict:
    return {
        "fraction": str(rep.fraction),
        "ell": rep.ell,
        "delta": poly_json(rep.delta),
        "twisted": poly_json(rep.twisted),
        "f": poly_json(rep.f),
        "g": poly_json(rep.g),
        "form_holds": rep.form_holds,
        "congruence_holds": rep.congruence_holds,
        "form_unit": None if rep.form_unit is None else [rep.form_unit.sign, rep.form_unit.exponent],
        "congruence_unit": None if rep.congruence_unit is None
        else [rep.congruence_unit.sign, rep.congruence_unit.exponent],
        "g_is_even": rep.g_is_even,
        "verdict": rep.verdict,
        "notes": rep.notes,
    }


def _conjecture_lines(out: Report, rep: ConjectureReport):
    out.line(f"Delta    = {format_poly(rep.delta)}")
    out.line(f"twisted  = {format_poly(rep.twisted)}")
    if rep.f is not None:
        out.line(f"f        = {format_poly(rep.f)}")
    if rep.g is not None:
        out.line(f"g        = {format_poly(rep.g)}")
    out.line(f"form clause:       {rep.form_holds} (unit {rep.form_unit})")
    out.line(f"congruence clause: {rep.congruence_holds} (unit {rep.congruence_unit})")
    out.line(f"g even: {rep.g_is_even}; verdict: {rep.verdict}")
    for note in rep.notes:
        out.line(f"note: {note}")


# -- subcommands --------------------------------------------------------------------


def cmd_alexander(cfg: RunConfig) -> Report:
    f = _fraction(cfg)
    out = Report("alexander")
    delta = alexander(f)
    out.data.update(fraction=str(f), delta=poly_json(delta))
    out.line(f"Delta_{f} = {format_poly(delta)}")
    return out


def cmd_twisted(cfg: RunConfig) -> Report:
    f = _fraction(cfg)
    out = Report("twisted")
    out.data.update(fraction=str(f), ell=cfg.ell, m=cfg.m, method=cfg.method)
    results = {}
    if cfg.method in ("product", "both"):
        results["product"] = twisted_alexander_product(f, cfg.ell)
    if cfg.method in ("oracle", "both"):
        results["oracle"] = twisted_alexander_oracle(f, cfg.ell, cfg.m)
    first = next(iter(results.values()))
    out.data["delta"] = poly_json(first.delta)
    out.line(f"Delta = {format_poly(first.delta)}")
    for name, res in results.items():
        canon = canonical_unit_normalize(res.twisted, cfg.ell)
        out.data[name] = {"twisted": poly_json(res.twisted), "canonical": poly_json(canon)}
        out.line(f"{name}: {format_poly(res.twisted)}")
    if len(results) == 2:
        a, b = (canonical_unit_normalize(r.twisted, cfg.ell) for r in results.values())
        out.check("MATCH" if a == b else "MISMATCH", a == b, "canonical forms of product formula and oracle")
    return out


def cmd_epsilon_graph(cfg: RunConfig) -> Report:
    f = _fraction(cfg)
    out = Report("epsilon-graph")
    graph = f.epsilon_graph
    sigma = sigma_sequence(f)
    out.data.update(
        fraction=str(f),
        epsilons=list(graph.epsilons),
        levels=list(graph.levels),
        sigma=list(sigma),
    )
    out.line(f"epsilon: {' '.join('+' if e > 0 else '-' for e in graph.epsilons)}")
    out.line(f"sigma:   {list(sigma)}")
    out.line(graph.render())
    props = check_sigma_properties(f)
    out.data["properties"] = {k: list(v) for k, v in props.results.items()}
    for name, (status, detail) in props.results.items():
        if status == "skipped":
            out.line(f"[SKIP] {name}: {detail}")
        else:
            out.check(name, status == "pass", detail)
    if cfg.ell is not None:
        labels = vertex_labeling(f, cfg.ell)
        out.data["labels"] = [[v.index, v.level, v.label, v.target] for v in labels.vertices]
        out.line("labels: " + " ".join(f"{v.index}:{v.label:+d}" for v in labels.vertices))
    return out


def _family_report_data(rep: FamilyReport) -> dict:
    pt = rep.point
    return {
        "root": str(pt.root),
        "ell": pt.ell,
        "j": pt.j,
        "k": pt.k,
        "fraction": str(pt.fraction),
        "a": pt.a,
        "r": pt.r,
        "gcd_a_ell": pt.gcd_a_ell,
        "notes": rep.notes,
        "conjecture": _conjecture_data(rep.conjecture),
    }


def cmd_family(cfg: RunConfig) -> Report:
    if cfg.root is None or cfg.ell is None:
        raise argparse.ArgumentTypeError("--root and --ell are required")
    root = TwoBridgeFraction.parse(cfg.root)
    out = Report("family")
    point = family_point(root, cfg.ell, cfg.j, cfg.k)
    out.data.update(root=str(root), ell=cfg.ell, j=cfg.j, k=cfg.k, fraction=str(point.fraction))
    out.line(f"{root} with j={cfg.j}, k={cfg.k}, ell={cfg.ell} -> {point.fraction}"
             f" (q = {point.a}*p + {point.r})")
    if cfg.verify:
        row = find_row(_rows(cfg), root, cfg.ell)
        rep = verify_family_point(row, cfg.j, cfg.k)
        out.data["report"] = _family_report_data(rep)
        _conjecture_lines(out, rep.conjecture)
        for note in rep.notes:
            out.line(f"note: {note}")
        out.check("strong form", rep.ok)
    return out


def cmd_appendix(cfg: RunConfig) -> Report:
    rows = _rows(cfg)
    out = Report("appendix")
    if not cfg.verify:
        out.data["rows"] = [
            {"root": str(r.root), "ell": r.ell, "j_zero_only": r.j_zero_only,
             "f": [list(t) for t in r.f.terms]}
            for r in rows
        ]
        for r in rows:
            out.line(f"{r}: alpha degree {r.f.alpha_degree}, {len(r.f.terms)} terms")
        return out
    reports = verify_appendix(rows, cfg.kmax, cfg.jmax, cfg.workers)
    out.data["points"] = [_family_report_data(r) for r in reports]
    for rep in reports:
        pt = rep.point
        c = rep.conjecture
        out.check(
            f"{pt.root} ell={pt.ell} j={pt.j} k={pt.k} -> {pt.fraction}",
            rep.ok,
            f"{c.verdict}, units {c.form_unit} / {c.congruence_unit}",
        )
    passed = sum(r.ok for r in reports)
    out.line(f"{passed}/{len(reports)} family points verified in strong form")
    return out


def cmd_verify_conjecture(cfg: RunConfig) -> Report:
    f = _fraction(cfg)
    out = Report("verify-conjecture")
    result = twisted_alexander_product(f, cfg.ell)
    source = None
    if cfg.f_file:
        with open(cfg.f_file) as fh:
            text = fh.read().strip()
        poly = poly_from_json(json.loads(text)) if text.startswith("[") else parse_poly(text)
        source = f"file {cfg.f_file}"
    elif cfg.root:
        row = find_row(_rows(cfg), TwoBridgeFraction.parse(cfg.root), cfg.ell)
        point = family_point(row.root, cfg.ell, cfg.j, cfg.k)
        if point.fraction != f:
            raise argparse.ArgumentTypeError(
                f"--family {cfg.root} with j={cfg.j}, k={cfg.k} gives {point.fraction}, not {f}")
        poly = row.f.substitute(cfg.ell, cfg.k)
        source = f"family {cfg.root} j={cfg.j} k={cfg.k}"
    else:
        found = known_f(f, cfg.ell, _rows(cfg))
        poly, source = found if found else (None, None)
    rep = verify_conjecture(result, poly)
    out.data.update(_conjecture_data(rep))
    out.data["f_source"] = source
    out.line(f"{f}, ell={cfg.ell}; f from {source or 'nowhere (not supplied, no known family)'}")
    _conjecture_lines(out, rep)
    out.check("strong form", rep.strong)
    return out


def cmd_selftest(cfg: RunConfig) -> Report:
    out = Report("selftest")
    t = IntLaurent.t()
    out.check("alexander 11/19", alexander(TwoBridgeFraction(11, 19)) == parse_poly("-t^-1 + 5 - 7*t + 5*t^2 - t^3"))
    f513 = TwoBridgeFraction(5, 13)
    prod = twisted_alexander_product(f513, 13)
    fox = twisted_alexander_oracle(f513, 13, 1)
    out.check("product formula = oracle on 5/13, ell=13", prod.twisted == fox.twisted)
    f_513 = ((1 + t) ** 6 * (t ** 6 - 2 * t ** 5 + t ** 3 - 2 * t + 1) ** 2).shift(-12)
    out.check("conjecture on 5/13, ell=13", verify_conjecture(prod, f_513).strong)
    rows = _rows(cfg)
    reports = verify_appendix(rows, kmax=1, jmax=1)
    out.check("appendix rows at j, k <= 1", all(r.ok for r in reports), f"{len(reports)} points")
    return out


COMMANDS = {
    "alexander": cmd_alexander,
    "twisted": cmd_twisted,
    "epsilon-graph": cmd_epsilon_graph,
    "family": cmd_family,
    "appendix": cmd_appendix,
    "verify-conjecture": cmd_verify_conjecture,
    "selftest": cmd_selftest,
}


def dispatch(cfg: RunConfig) -> tuple[int, Report]:
    report = COMMANDS[cfg.subcommand](cfg)
    return (EXIT_OK if report.ok else EXIT_FAIL), report


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a versioned JSON report")
    common.add_argument("--appendix", metavar="FILE", help="override the family table data file")

    knot = argparse.ArgumentParser(add_help=False)
    knot.add_argument("--p", type=int, required=True)
    knot.add_argument("--q", type=int, required=True)

    parser = argparse.ArgumentParser(
        prog="twisted-alexander",
        description="Twisted Alexander polynomials of 2-bridge knots for dihedral representations.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    sub.add_parser("alexander", parents=[common, knot], help="Alexander polynomial")

    tw = sub.add_parser("twisted", parents=[common, knot], help="ell-twisted Alexander polynomial")
    tw.add_argument("--ell", type=int, required=True)
    tw.add_argument("--m", type=int, default=1, help="coloring parameter for the oracle (1 <= m < ell)")
    tw.add_argument("--method", choices=["product", "oracle", "both"], default="product")

    eg = sub.add_parser("epsilon-graph", parents=[common, knot], help="epsilon graph, sigma and labels")
    eg.add_argument("--ell", type=int, help="also print the vertex labelling for this prime")

    fam = sub.add_parser("family", parents=[common], help="a point of a root-fraction family")
    fam.add_argument("--root", required=True, metavar="P/Q")
    fam.add_argument("--ell", type=int, required=True)
    fam.add_argument("--k", type=int, default=0)
    fam.add_argument("--j", type=int, default=0)
    fam.add_argument("--verify", action="store_true", help="check the conjecture at this point")

    app = sub.add_parser("appendix", parents=[common], help="list or verify the family table")
    app.add_argument("--verify", action="store_true")
    app.add_argument("--kmax", type=int, default=3)
    app.add_argument("--jmax", type=int, default=2)
    app.add_argument("--workers", type=int, default=1)

    vc = sub.add_parser("verify-conjecture", parents=[common, knot], help="check the conjectured form")
    vc.add_argument("--ell", type=int, required=True)
    src = vc.add_mutually_exclusive_group()
    src.add_argument("--f", dest="f_file", metavar="FILE", help="f(t) as text or a JSON term list")
    src.add_argument("--family", dest="root", metavar="ROOT", help="take f from this family row")
    vc.add_argument("--k", type=int, default=0)
    vc.add_argument("--j", type=int, default=0)

    sub.add_parser("selftest", parents=[common], help="quick end-to-end checks")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = RunConfig.from_args(ns)
    try:
        status, report = dispatch(cfg)
    except (TwistedAlexanderError, argparse.ArgumentTypeError, KeyError, OSError) as exc:
        name = type(exc).__name__
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {name}: {msg}", file=sys.stderr)
        return EXIT_USAGE
    report.emit(cfg.output == "structured")
    return status


if __name__ == "__main__":
    sys.exit(main())
