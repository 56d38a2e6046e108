"""Command-line front end.

Diagram input is given by exactly one of

    --pd '[[a,b,c,d], ...]'    JSON array of 4-element arrays
    --gauss '1 -2 3 ...'       signed crossing numbers, + for over
    --dt '4 6 2'               even DT entries, negative for an over-crossing at the even visit
    --file PATH --format FMT   the same text read from PATH (or - for stdin)

The format of a file is taken from --format only; contents are never sniffed.
Slopes are written p/q, a bare integer n, or 1/0 for the meridian.

Exit codes: 0 certified (or a clean report), 1 not certified or gaps found,
2 trivial surgery or non-hyperbolic knot, 64 usage, 65 bad input, 70 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import SCHEMA
from .census import default_jobs, enumerate_fat_graphs, verify_lemma2
from .classify import classify_small_twist_diagram
from .diagram import FORMATS, DiagramCode, PlanarDiagram, faces, is_alternating, is_connected_prime, parse
from .errors import AltSurgeryError, ClassificationGap, InternalInvariantError
from .gate import Slope
from .twist import reduced_twist_graph, twist_regions
from .verdict import certify_surgery, exceptional_count_bound, max_twist_crossing

EXIT_OK = 0
EXIT_NOT_CERTIFIED = 1
EXIT_NON_HYPERBOLIC = 2
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_INTERNAL = 70

VERDICT_EXIT = {
    "CertifiedHyperbolic": EXIT_OK,
    "NotCertified": EXIT_NOT_CERTIFIED,
    "TrivialSurgery": EXIT_NON_HYPERBOLIC,
    "NonHyperbolicKnot": EXIT_NON_HYPERBOLIC,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    source: Optional[str] = None  # inline code or file path
    fmt: Optional[str] = None
    from_file: bool = False
    slope: Optional[str] = None
    fill_bound: Optional[int] = None
    output: str = "json"
    jobs: int = 1

    def __post_init__(self):
        if self.fill_bound is not None and self.fill_bound < 2:
            raise UsageError("--fill-bound must be at least 2")
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "RunConfig":
        source, fmt, from_file = None, None, False
        for f in FORMATS:
            if getattr(ns, f, None) is not None:
                source, fmt = getattr(ns, f), f
        if getattr(ns, "file", None) is not None:
            source, fmt, from_file = ns.file, ns.format, True
        return cls(
            subcommand=ns.command,
            source=source,
            fmt=fmt,
            from_file=from_file,
            slope=getattr(ns, "slope", None),
            fill_bound=getattr(ns, "fill_bound", None),
            output=ns.output,
            jobs=default_jobs() if getattr(ns, "jobs", None) is None else ns.jobs,
        )

    def diagram(self, stdin=None) -> PlanarDiagram:
        text = self.source
        if self.from_file:
            if text == "-":
                text = (stdin or sys.stdin).read()
            else:
                with open(text, encoding="utf-8") as fh:
                    text = fh.read()
        return parse(DiagramCode.from_text(self.fmt, text))


def _add_input(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--pd", help="PD code as a JSON array of 4-arrays")
    g.add_argument("--gauss", help="Gauss code, signed integers")
    g.add_argument("--dt", help="Dowker-Thistlethwaite code, even integers")
    g.add_argument("--file", help="read the code from a file, - for stdin")
    p.add_argument("--format", choices=FORMATS, default="pd", help="format of --file (default pd)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="altsurgery", description="Certify hyperbolic Dehn surgeries on alternating knots.")
    parser.add_argument("--output", choices=("json", "table"), default="json")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("parse", help="read a diagram and report its structure")
    _add_input(p)
    p = sub.add_parser("twist", help="twist number of an alternating diagram")
    _add_input(p)
    p = sub.add_parser("gate", help="certify a surgery slope on a diagram")
    _add_input(p)
    p.add_argument("--slope", required=True, help="p/q, n, or 1/0")
    p = sub.add_parser("classify", help="classify a diagram with at most four twist regions")
    _add_input(p)
    sub.add_parser("enumerate", help="list the reduced twist graphs with at most four vertices")
    p = sub.add_parser("verify-lemma2", help="sweep all box fillings and classify them")
    p.add_argument("--fill-bound", type=int, default=4)
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default $ALTSURGERY_JOBS or 1)")
    sub.add_parser("bounds", help="twist-crossing and exceptional-count bounds")

    # allow --output after the subcommand too
    for choice in sub.choices.values():
        choice.add_argument("--output", choices=("json", "table"), default=argparse.SUPPRESS)
    return parser


# ---- subcommands ---------------------------------------------------------


def cmd_parse(cfg: RunConfig) -> tuple[dict, int]:
    d = cfg.diagram()
    return {
        "crossings": d.n_crossings,
        "pd": d.to_pd(),
        "writhe": d.writhe,
        "faces": sorted(f.size for f in faces(d)),
        "alternating": is_alternating(d),
        "primality": is_connected_prime(d).to_dict(),
    }, EXIT_OK


def cmd_twist(cfg: RunConfig) -> tuple[dict, int]:
    regions = twist_regions(cfg.diagram())
    return {"twist_number": len(regions)}, EXIT_OK


def cmd_gate(cfg: RunConfig) -> tuple[dict, int]:
    d = cfg.diagram()
    v = certify_surgery(d, Slope.parse(cfg.slope))
    return v.to_dict(), VERDICT_EXIT[v.outcome]


def cmd_classify(cfg: RunConfig) -> tuple[dict, int]:
    d = cfg.diagram()
    cls = classify_small_twist_diagram(d)
    g = reduced_twist_graph(d)
    out = {"twist_number": g.n_vertices, "class": cls.to_dict(), "twist_graph": g.to_dict()}
    return out, EXIT_OK if cls.hyperbolic == "yes" else EXIT_NON_HYPERBOLIC


def cmd_enumerate(cfg: RunConfig) -> tuple[dict, int]:
    graphs = enumerate_fat_graphs(4)
    counts = {str(v): sum(1 for g in graphs if g.n_vertices == v) for v in range(1, 5)}
    return {"counts": counts, "graphs": [g.to_dict() for g in graphs]}, EXIT_OK


def cmd_verify(cfg: RunConfig) -> tuple[dict, int]:
    report = verify_lemma2(cfg.fill_bound, jobs=cfg.jobs)
    out = report.to_dict()
    out["_table"] = report.table()
    return out, EXIT_OK if not report.gaps else EXIT_NOT_CERTIFIED


def cmd_bounds(cfg: RunConfig) -> tuple[dict, int]:
    return {
        "genus0_b1": max_twist_crossing("genus0", 1),
        "torus_b1": max_twist_crossing("punctured_torus", 1),
        "torus_b2": max_twist_crossing("punctured_torus", 2),
        "max_exceptional": exceptional_count_bound(),
    }, EXIT_OK


COMMANDS = {
    "parse": cmd_parse,
    "twist": cmd_twist,
    "gate": cmd_gate,
    "classify": cmd_classify,
    "enumerate": cmd_enumerate,
    "verify-lemma2": cmd_verify,
    "bounds": cmd_bounds,
}


def _table(data: dict) -> str:
    if "_table" in data:
        return data["_table"]
    lines = []
    for k in sorted(data):
        v = data[k]
        if isinstance(v, (dict, list)):
            v = json.dumps(v, sort_keys=True)
        lines.append(f"{k}: {v}")
    return "\n".join(lines)


def render(data: dict, output: str) -> str:
    if output == "table":
        return _table(data)
    body = {k: v for k, v in data.items() if not k.startswith("_")}
    body["schema"] = SCHEMA
    return json.dumps(body, indent=2, sort_keys=True)


def _attach_slope(argv: list[str]) -> list[str]:
    """``--slope -3/2`` would read as an option; glue the value on."""
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--slope" and i + 1 < len(argv):
            out.append(f"--slope={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = _attach_slope(list(sys.argv[1:] if argv is None else argv))
    try:
        ns = build_parser().parse_args(argv)
        cfg = RunConfig.from_namespace(ns)
    except UsageError as exc:
        print(str(exc), file=stderr)
        return EXIT_USAGE
    try:
        data, code = COMMANDS[cfg.subcommand](cfg)
    except (InternalInvariantError, ClassificationGap) as exc:
        print(f"internal error: {exc}", file=stderr)
        return EXIT_INTERNAL
    except (AltSurgeryError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_DATA
    print(render(data, cfg.output), file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
