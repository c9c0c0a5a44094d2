"""Command-line entry point: ``signedturan <verb> [options]``.

Exit codes: 0 success, 1 mathematical mismatch, 2 usage error, 3 resource
exhaustion (checkpoint kept).
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import enumeration, families
from .canon import MAX_CANON_N, canonical_form
from .enumeration import ResourceExhausted, SearchError
from .formats import FormatError, read_graph, to_json_obj, write_sgf
from .graph import find_unbalanced_k4, is_balanced
from .spectral import bound_report, char_poly, eigenvalues

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
THREADS_ENV = "SIGNEDTURAN_THREADS"


class UsageError(Exception):
    pass


def _num(x):
    """Round floats to 12 significant digits, recursively."""
    if isinstance(x, float):
        return float(f"{x:.12g}")
    if isinstance(x, dict):
        return {k: _num(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_num(v) for v in x]
    return x


def _emit(obj: dict, fmt: str, text: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(_num(obj), sort_keys=True) + "\n")
    else:
        out.write(text if text.endswith("\n") else text + "\n")


def _g12(x: float) -> str:
    return f"{x:.12g}"


def _read_input(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _threads(value: Optional[int]) -> int:
    if value is not None:
        return value
    env = os.environ.get(THREADS_ENV)
    if env is None:
        return 1
    try:
        t = int(env)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer, got {env!r}")
    if t < 1:
        raise UsageError(f"{THREADS_ENV} must be at least 1")
    return t


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def parse_range(text: str) -> list[int]:
    """``7``, ``7..40`` or ``7,9,12`` (pieces may be combined with commas)."""
    out: list[int] = []
    for piece in text.split(","):
        m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", piece)
        if not m:
            raise UsageError(f"bad range {text!r}; expected N, N..M or a comma list")
        lo = int(m.group(1))
        hi = int(m.group(2)) if m.group(2) else lo
        if hi < lo:
            raise UsageError(f"empty range {piece!r}")
        out.extend(range(lo, hi + 1))
    return sorted(set(out))


# --- verbs ---------------------------------------------------------------------


def _family_id(args) -> families.FamilyId:
    tag = args.tag

    def need(*names):
        missing = [f"--{x}" for x in names if getattr(args, x) is None]
        if missing:
            raise UsageError(f"{tag} needs {' '.join(missing)}")
        extra = [f"--{x}" for x in ("a", "b", "c", "d", "n") if x not in names and getattr(args, x) is not None]
        if extra:
            raise UsageError(f"{tag} does not take {' '.join(extra)}")

    if tag == "G1":
        need("a", "b")
        if args.a < 0 or args.b < 0:
            raise UsageError("G1 needs a, b >= 0")
        return families.FamilyId("G1", (args.a, args.b))
    if tag == "G2":
        need("c", "d")
        if args.c < 1 or args.d < 1:
            raise UsageError("G2 needs c, d >= 1")
        return families.FamilyId("G2", (args.c, args.d))
    need("n")
    if args.n < 6:
        raise UsageError(f"{tag} needs n >= 6")
    return families.FamilyId(tag, (args.n,))


def cmd_family(args, out) -> int:
    fid = _family_id(args)
    g = families.build(fid)
    spec = eigenvalues(g)
    summary = {
        "family": str(fid),
        "n": g.n,
        "edges": g.num_edges,
        "index": spec.index,
        "radius": spec.radius,
        "k4_free": find_unbalanced_k4(g) is None,
        "balanced": is_balanced(g),
    }
    text = write_sgf(g) + "\n".join(
        f"# {k} = {_g12(v) if isinstance(v, float) else v}" for k, v in summary.items()
    )
    _emit({"graph": to_json_obj(g), "sgf": write_sgf(g), "summary": summary}, args.format, text, out)
    return EXIT_OK


def _load(args):
    try:
        return read_graph(_read_input(args.input))
    except FormatError as exc:
        raise UsageError(f"cannot parse graph: {exc}") from exc


def cmd_spectrum(args, out) -> int:
    g = _load(args)
    spec = eigenvalues(g)
    poly = char_poly(g)
    obj = {
        "n": g.n,
        "values": list(spec.values),
        "index": spec.index,
        "radius": spec.radius,
        "charpoly": list(poly.coeffs),
    }
    text = "\n".join([
        "eigenvalues: " + " ".join(_g12(v) for v in spec.values),
        f"index: {_g12(spec.index)}",
        f"radius: {_g12(spec.radius)}",
        f"charpoly: {list(poly.coeffs)}",
    ])
    _emit(obj, args.format, text, out)
    return EXIT_OK


def cmd_bounds(args, out) -> int:
    g = _load(args)
    rep = bound_report(g).to_json()
    text = "\n".join(f"{k}: {_g12(v) if isinstance(v, float) else v}" for k, v in rep.items())
    _emit(rep, args.format, text, out)
    return EXIT_OK


def cmd_canon(args, out) -> int:
    g = _load(args)
    if g.n > MAX_CANON_N:
        raise UsageError(f"canonical forms need n <= {MAX_CANON_N}")
    form = canonical_form(g)
    fam = enumeration.family_index(g.n).get(form) if g.n >= 3 else None
    obj = {"n": g.n, "canonical": form.hex(), "family": fam, "sgf": write_sgf(form.graph())}
    text = f"canonical: {form.hex()}\nfamily: {fam}\n" + write_sgf(form.graph())
    _emit(obj, args.format, text, out)
    return EXIT_OK


def cmd_verify_claims(args, out) -> int:
    ns = parse_range(args.n)
    if ns[0] < 7 or ns[-1] > 40:
        raise UsageError("verify-claims needs 7 <= n <= 40")
    claims = parse_range(args.claims)
    if claims[0] < 1 or claims[-1] > 5:
        raise UsageError("claims are numbered 1..5")
    failed = 0
    for n in ns:
        for k in claims:
            rep = families.verify_claim(k, n)
            if not rep.passed:
                failed += 1
            if args.format == "json":
                out.write(json.dumps(_num(rep.to_json()), sort_keys=True) + "\n")
            else:
                out.write(f"n={n} claim={k} {'PASS' if rep.passed else 'FAIL'}\n")
                for c in rep.failures():
                    d = c.detail
                    line = f"  {c.name}"
                    if "derived" in d:
                        line += f": derived {d['derived']}; expected {d['expected']}; difference {d['difference']}"
                    elif d:
                        line += ": " + json.dumps(_num(d), sort_keys=True)
                    out.write(line + "\n")
    summary = {"summary": True, "runs": len(ns) * len(claims), "failed": failed}
    if args.format == "json":
        out.write(json.dumps(summary, sort_keys=True) + "\n")
    else:
        out.write(f"{summary['runs'] - failed}/{summary['runs']} claim runs passed\n")
    return EXIT_MISMATCH if failed else EXIT_OK


def _report_text(rep: enumeration.SearchReport) -> str:
    lines = [
        f"mode: {rep.mode}",
        f"n: {rep.n}",
        f"max_value: {_g12(rep.max_value)} ({'certified' if rep.certified else 'uncertified'})",
        f"bound: {_g12(rep.bound) if rep.bound is not None else None}",
        f"theorem_match: {rep.theorem_match}",
        f"classes_examined: {rep.classes_examined}",
        f"pruned: {rep.pruned}",
        f"witnesses: {len(rep.witnesses)}",
    ]
    for w in rep.witnesses:
        tag = f" [{w.exact}]" if w.exact else ""
        lines.append(f"  {w.form.hex()} {_g12(w.value)} {w.family or '-'}{tag}")
    for label, ws in (("violations", rep.violations), ("near_misses", rep.near_misses)):
        if ws:
            lines.append(f"{label}: {len(ws)}")
            for w in ws:
                lines.append(f"  {w.form.hex()} {_g12(w.value)} {w.family or '-'}")
    lines += [f"note: {x}" for x in rep.notes]
    return "\n".join(lines)


def _search(args, out, kind: str) -> int:
    threads = _threads(args.threads)
    if args.resume and args.checkpoint and Path(args.resume) != Path(args.checkpoint):
        raise UsageError("--resume and --checkpoint name different directories")
    ckpt = args.resume or args.checkpoint
    common = dict(
        threads=threads,
        checkpoint=Path(ckpt) if ckpt else None,
        resume=bool(args.resume),
        time_limit=args.time_limit,
    )
    if args.chunk_size is not None:
        common["chunk_size"] = args.chunk_size
    try:
        if kind == "edge":
            rep = enumeration.search_edge_max(args.n, k4_filter=not args.no_k4_filter, **common)
        else:
            rep = enumeration.search_spectral_max(args.n, **common)
    except SearchError as exc:
        raise UsageError(str(exc)) from exc
    except (ResourceExhausted, MemoryError) as exc:
        sys.stderr.write(f"resource exhausted: {exc}\n")
        if ckpt:
            sys.stderr.write(f"checkpoint kept in {ckpt}; rerun with --resume {ckpt}\n")
        return EXIT_RESOURCE
    obj = _num(rep.to_json())
    if args.output:
        Path(args.output).write_text(json.dumps(obj, sort_keys=True, indent=1) + "\n")
    _emit(obj, args.format, _report_text(rep), out)
    return EXIT_MISMATCH if rep.theorem_match is False else EXIT_OK


# --- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="signedturan", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)
    p.set_defaults(verbs={})

    def verb(name: str, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--format", choices=("json", "text"), default="text")
        p.get_default("verbs")[name] = sp
        return sp

    f = verb("family", "generate an extremal signed graph")
    f.add_argument("--tag", required=True, choices=families.FAMILY_TAGS)
    for name in ("a", "b", "c", "d", "n"):
        f.add_argument(f"--{name}", type=int)

    for name, help in (
        ("spectrum", "eigenvalues and characteristic polynomial of a graph"),
        ("bounds", "clique numbers and eigenvalue upper bounds of a graph"),
        ("canon", "canonical form of a graph's switching-isomorphism class"),
    ):
        sp = verb(name, help)
        sp.add_argument("input", nargs="?", help="SGF or JSON file; standard input if omitted or '-'")

    v = verb("verify-claims", "exact verification of the index claims over a range of n")
    v.add_argument("--n", required=True, help="N, N..M or comma list, within 7..40")
    v.add_argument("--claims", default="1..5")

    for name, help in (
        ("search-edge", "edge-maximum census"),
        ("search-spectral", "spectral-radius census"),
    ):
        sp = verb(name, help)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--threads", type=_positive_int, help=f"worker processes (default ${THREADS_ENV} or 1)")
        sp.add_argument("--checkpoint", help="directory for the chunk journal")
        sp.add_argument("--resume", help="checkpoint directory to resume from")
        sp.add_argument("--output", help="also write the JSON report here")
        sp.add_argument("--time-limit", type=float, help="seconds before stopping with exit code 3")
        sp.add_argument("--chunk-size", type=_positive_int)
        if name == "search-edge":
            sp.add_argument("--no-k4-filter", action="store_true",
                            help="drop the unbalanced-K4 restriction")
    return p


_COMMANDS = {
    "family": cmd_family,
    "spectrum": cmd_spectrum,
    "bounds": cmd_bounds,
    "canon": cmd_canon,
    "verify-claims": cmd_verify_claims,
    "search-edge": lambda a, o: _search(a, o, "edge"),
    "search-spectral": lambda a, o: _search(a, o, "spectral"),
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return _COMMANDS[args.verb](args, out)
    except UsageError as exc:
        sp = args.verbs[args.verb]
        sp.print_usage(sys.stderr)
        sys.stderr.write(f"{sp.prog}: error: {exc}\n")
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
