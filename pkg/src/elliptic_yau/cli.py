"""Command-line front end.

    elliptic-yau algebra --family E6 --k 1 --t symbolic
    elliptic-yau verify A1 --samples 5 --seed 0
    elliptic-yau stabilizer --family E6 --k 0 --t 0

Exit codes: 0 when every check passes, 1 on a verification failure, 2 on bad
parameters.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .modalg import TruncationError
from .scalar import PoleError, RatFunc, parse_ratfunc
from .wpoly import ExcludedParameter, family

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULT = "default"  # --k not given: each command picks its own


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    family: str = "E6"
    k: object = DEFAULT
    t: object = "symbolic"
    seed: int = 0
    samples: int = 5
    out: Optional[str] = None
    fmt: str = "json"
    verbose: int = 0
    theorem: Optional[str] = None

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "family": self.family,
            "k": "inf" if self.k is None else self.k,
            "format": self.fmt,
            "t": self.t if isinstance(self.t, str) else self.t.text(),
            "seed": self.seed,
            "samples": self.samples,
            "theorem": self.theorem,
        }


def parse_k(text: str) -> Optional[int]:
    if text.lower() in ("inf", "infinity"):
        return None
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"k must be a non-negative integer or 'inf', got {text!r}") from None
    if k < 0:
        raise argparse.ArgumentTypeError("k must be non-negative")
    return k


def parse_t(text: str):
    if text == "symbolic":
        return text
    try:
        v = parse_ratfunc(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"cannot parse t = {text!r}: {exc}") from None
    if isinstance(v, RatFunc):
        if not v.is_const():
            raise argparse.ArgumentTypeError("t must be 'symbolic' or a constant")
        v = v.const_value()
    return v


def build_parser() -> argparse.ArgumentParser:
    from .suites import THEOREMS

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", default="E6", choices=["E6", "E7", "E8"])
    common.add_argument("--k", type=parse_k, default=argparse.SUPPRESS, metavar="{0,1,2,...,inf}")
    common.add_argument("--t", type=parse_t, default="symbolic", metavar="{symbolic,<scalar>}")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=5)
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--format", dest="fmt", default="json", choices=["json", "text"])
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="elliptic-yau", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("algebra", parents=[common], help="moduli algebra and Yau algebra report")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("theorem", choices=THEOREMS)
    sub.add_parser("stabilizer", parents=[common], help="brute-force automorphisms of A^k(t) (E6, E7)")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    if ns.samples < 1:
        raise UsageError("--samples must be positive")
    if ns.seed < 0:
        raise UsageError("--seed must be non-negative")
    return RunConfig(ns.command, ns.family, getattr(ns, "k", DEFAULT), ns.t, ns.seed, ns.samples, ns.out,
                     ns.fmt, ns.verbose, getattr(ns, "theorem", None))


# ---------------------------------------------------------------------------
# commands

def cmd_algebra(cfg: RunConfig) -> tuple[dict, bool]:
    from .grpd import algebra_for
    from .yau import compute_yau

    fam = family(cfg.family)
    if cfg.k == DEFAULT:
        cfg.k = 1
    k = cfg.k
    if cfg.t != "symbolic":
        fam.check_parameter(cfg.t)
    A = algebra_for(fam, k, cfg.t)
    rep = {"config": cfg.as_dict(), "algebra": A.report(), "yau": None}
    notes = []
    if rep["algebra"]["jump_point"]:
        notes.append(f"t = {A.t.text()} is a jump point of the {fam.name} family")
    if k is None:
        # O/<f> is infinite-dimensional; only its truncation is reported
        notes.append(f"k = inf: algebra truncated above degree {A.bound}, no Yau algebra")
        rep["notes"] = notes
        return rep, True
    L = compute_yau(A)
    rep["yau"] = L.report()
    rep["yau"]["solvable"] = L.is_solvable()
    rep["yau"]["jacobi"] = L.check_jacobi()
    rep["notes"] = notes
    return rep, rep["yau"]["jacobi"]


def cmd_verify(cfg: RunConfig) -> tuple[dict, bool]:
    from .suites import run_suite

    rep = run_suite(cfg.theorem, cfg.samples, cfg.seed, cfg.k)
    cfg.k = rep.k
    return {"config": cfg.as_dict(), "report": rep.as_dict()}, rep.ok


def cmd_stabilizer(cfg: RunConfig) -> tuple[dict, bool]:
    from .grpd import brute_force_morphisms, group_G, matrix_text

    fam = family(cfg.family)
    if cfg.k == DEFAULT:
        cfg.k = 1
    if cfg.t == "symbolic":
        raise UsageError("stabilizer needs a numeric --t")
    fam.check_parameter(cfg.t)
    found = brute_force_morphisms(fam, cfg.k, cfg.t, cfg.t, cfg.seed)
    rep = {"config": cfg.as_dict(), "count": len(found)}
    if fam.name == "E6":
        G = set(group_G().elements)
        rep["in_G"] = sum(1 for g in found if g in G)
        rep["elements"] = [matrix_text(g) for g in found]
    else:
        rep["elements"] = [{"block": matrix_text(b), "gamma_sq": g if isinstance(g, str) else g.text()}
                           for b, g in found]
    return rep, True


COMMANDS = {"algebra": cmd_algebra, "verify": cmd_verify, "stabilizer": cmd_stabilizer}


# ---------------------------------------------------------------------------
# output

def render_text(report: dict) -> str:
    lines = []
    if "report" in report:
        r = report["report"]
        lines.append(f"{r['theorem']}  k={r['k']}  seed={r['seed']}  samples={', '.join(r['samples'])}")
        for c in r["checks"]:
            lines.append(f"  [{'PASS' if c['ok'] else 'FAIL'}] {c['name']}")
        for n in r["notes"]:
            lines.append(f"  note: {n}")
        lines.append("PASS" if r["ok"] else "FAIL")
    elif "algebra" in report:
        a, y = report["algebra"], report["yau"]
        lines.append(f"{a['family']}  k={a['k']}  t={a['t']}  excluded: {a['excluded']}")
        lines.append(f"  dim A = {a['dim']}  Hilbert function {a['hilbert_function']}")
        lines.append(f"  basis: {', '.join(a['basis'])}")
        if y is not None:
            lines.append(f"  dim L = {y['dim']}  degree profile {y['degree_profile']}  solvable={y['solvable']}")
        for n in report["notes"]:
            lines.append(f"  note: {n}")
    else:
        lines.append(f"{report['count']} automorphisms found")
        if "in_G" in report:
            lines.append(f"  {report['in_G']} of them lie in G")
    return "\n".join(lines) + "\n"


def emit(report: dict, cfg: RunConfig) -> None:
    text = json.dumps(report, indent=1, sort_keys=True) + "\n" if cfg.fmt == "json" else render_text(report)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.WARNING - 10 * ns.verbose, format="%(message)s")
    try:
        cfg = config_from_args(ns)
        report, ok = COMMANDS[cfg.command](cfg)
    except (UsageError, ExcludedParameter, TruncationError, PoleError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    emit(report, cfg)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
