"""Command-line front end.

Exit codes: 0 success, 64 usage error, 65 domain error.  ``check`` uses
0 certified / 1 verified at the cutoff / 2 rejected; ``props`` returns 1
if any counterexample was found; ``conjugate`` returns 1 when the bases
are not conjugate.
"""
from __future__ import annotations

import argparse
import json
import sys as _sys
from pathlib import Path
from typing import Any, Optional, Sequence

from . import bases, canon, oracle
from .core import Family, SystemDescriptor, Vector, vector_from_any
from .rootsys import contains, enumerate_roots

EX_USAGE = 64
EX_DATAERR = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(_sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=[f.value for f in Family])
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--format", choices=("text", "jsonl", "json"), default="text")
    p.add_argument("--config", help="JSON file with default family/m/n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="superbases", description="Bases of twisted affine root supersystems.")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("enum", help="list roots in a window")
    _common(p)
    p.add_argument("--kmax", type=int, default=1)

    p = sub.add_parser("check", help="verify a candidate base")
    _common(p)
    p.add_argument("base", help="file with the base (JSON or one vector per line), '-' for stdin")
    p.add_argument("--kmax", type=int, help="verification cutoff (default from the base)")

    p = sub.add_parser("classify", help="recognize the canonical form of a base")
    _common(p)
    p.add_argument("base")

    p = sub.add_parser("conjugate", help="conjugating word between two bases")
    _common(p)
    p.add_argument("base", help="target base B")
    p.add_argument("other", help="source base B'")

    p = sub.add_parser("posroots", help="predicted positive roots of canonical params")
    _common(p)
    p.add_argument("params", help="params JSON, inline or as a file path")
    p.add_argument("--kmax", type=int, default=2)

    p = sub.add_parser("search", help="exhaustive base search on a small instance")
    _common(p)
    p.add_argument("--kmax-entry", type=int, default=1)
    p.add_argument("--kmax-root", type=int, default=6)
    p.add_argument("--budget", type=int, default=5_000_000, help="maximum number of candidate subsets")

    p = sub.add_parser("props", help="run the property suite")
    _common(p)
    p.add_argument("--kmax", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=60)
    return ap


# -- input helpers --------------------------------------------------------

def _system(args, required: bool = True) -> Optional[SystemDescriptor]:
    cfg: dict = {}
    if args.config:
        try:
            cfg = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
    family = args.family or cfg.get("family")
    m = args.m if args.m is not None else cfg.get("m")
    n = args.n if args.n is not None else cfg.get("n")
    if family is None or m is None or n is None:
        if required:
            raise UsageError("--family, --m and --n are required (directly or via --config)")
        return None
    try:
        Family(family)
    except ValueError:
        raise UsageError(f"unknown family {family!r}") from None
    return SystemDescriptor(Family(family), int(m), int(n))


def _read(path: str) -> str:
    if path == "-":
        return _sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def parse_base_text(text: str, sys: SystemDescriptor) -> bases.Base:
    """A JSON list (or {"base": [...]}) of vectors, or one vector per line."""
    s = text.strip()
    if s[:1] in "[{":
        obj = json.loads(s)
        items = obj["base"] if isinstance(obj, dict) else obj
    else:
        items = [ln.split("#", 1)[0].strip() for ln in s.splitlines()]
        items = [x for x in items if x]
    return bases.Base(sys, tuple(vector_from_any(x, sys.m, sys.n) for x in items))


def _params(text: str) -> canon.CanonicalParams:
    s = text.strip()
    if not s.startswith("{"):
        s = _read(text)
    return canon.CanonicalParams.from_json(json.loads(s))


# -- output ---------------------------------------------------------------

def _emit(fmt: str, records: list[dict], text_lines: list[str], doc: Any = None) -> None:
    out = _sys.stdout
    if fmt == "text":
        for ln in text_lines:
            out.write(ln + "\n")
    elif fmt == "jsonl":
        for r in records:
            out.write(json.dumps(r) + "\n")
    else:
        out.write(json.dumps(records if doc is None else doc, indent=2) + "\n")


# -- commands -------------------------------------------------------------

def cmd_enum(args) -> int:
    sys = _system(args)
    roots = sorted(enumerate_roots(sys, args.kmax), key=Vector.sort_key)
    recs, lines = [], []
    for v in roots:
        cls = contains(sys, v)
        tag = cls.value if cls else "zero"
        recs.append({"root": v.to_json(), "class": tag})
        lines.append(f"{v}\t{tag}")
    _emit(args.format, recs, lines)
    return 0


def cmd_check(args) -> int:
    sys = _system(args)
    base = parse_base_text(_read(args.base), sys)
    v = bases.is_base(base, args.kmax)
    rec = v.to_json()
    lines = [f"status: {v.status}", f"kmax: {v.kmax}"]
    if v.reason:
        lines.append(f"reason: {v.reason}")
    if v.witness is not None:
        lines.append(f"witness: {v.witness}")
    if v.decomposition is not None:
        lines.append("coefficients: " + " ".join(str(c) for c in v.decomposition.coefficients))
    if v.params is not None:
        lines.append(f"form: {v.params.form}")
        lines.append(f"params: {v.params}")
    _emit(args.format, [rec], lines, rec)
    return v.exit_code


def cmd_classify(args) -> int:
    sys = _system(args)
    base = parse_base_text(_read(args.base), sys)
    p = canon.match_canonical(base)
    rec = {"recognized": p is not None, "params": p.to_json() if p else None}
    lines = [f"form: {p.form}", f"params: {p}"] if p else ["form: none"]
    _emit(args.format, [rec], lines, rec)
    return 0


def cmd_conjugate(args) -> int:
    sys = _system(args)
    b = parse_base_text(_read(args.base), sys)
    b2 = parse_base_text(_read(args.other), sys)
    if not canon.are_conjugate(b, b2, respect_sign=True):
        rec = {"conjugate": False, "word": None}
        _emit(args.format, [rec], ["not conjugate"], rec)
        return 1
    w = canon.conjugacy_word(b, b2)
    rec = {"conjugate": True, "word": w.to_json(), "text": str(w)}
    _emit(args.format, [rec], [str(w)], rec)
    return 0


def cmd_posroots(args) -> int:
    p = _params(args.params)
    psys = canon.validate(p)
    sys = _system(args, required=False)
    if sys is not None and sys != psys:
        raise ValueError(f"params describe {psys}, not {sys}")
    roots = sorted(canon.predicted_positive_roots(p, args.kmax), key=Vector.sort_key)
    recs = [v.to_json() for v in roots]
    _emit(args.format, recs, [str(v) for v in roots])
    return 0


def cmd_search(args) -> int:
    sys = _system(args)
    found = oracle.search_bases(sys, args.kmax_root, args.kmax_entry, args.budget)
    recs = [f.to_json() for f in found]
    lines = [
        "{" + ", ".join(str(v) for v in f.base.elements) + "}\t" + (str(f.params) if f.params else "UNRECOGNIZED")
        for f in found
    ]
    _emit(args.format, recs, lines)
    return 0 if all(f.params for f in found) else 1


def cmd_props(args) -> int:
    sys = _system(args)
    rep = oracle.run_property_suite(sys, args.kmax, args.seed, samples=args.samples)
    lines = [
        f"{s['id']}\t{s['status']}\t{s['samples']}" + (f"\t{s['witness']}" if s["witness"] else "")
        for s in rep["statements"]
    ]
    _emit(args.format, rep["statements"], lines, rep)
    return 1 if rep["counterexamples"] else 0


COMMANDS = {
    "enum": cmd_enum,
    "check": cmd_check,
    "classify": cmd_classify,
    "conjugate": cmd_conjugate,
    "posroots": cmd_posroots,
    "search": cmd_search,
    "props": cmd_props,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return int(exc.code or 0)
    try:
        return COMMANDS[args.cmd](args)
    except UsageError as exc:
        print(f"superbases: error: {exc}", file=_sys.stderr)
        return EX_USAGE
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        err = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        print(json.dumps(err), file=_sys.stderr)
        return EX_DATAERR


if __name__ == "__main__":
    raise SystemExit(main())
