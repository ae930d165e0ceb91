"""Command-line interface.  Exit status: 0 success, 1 verification failure, 2 bad usage or input."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Iterator

from . import asm as asm_mod
from . import bijections, bpd as bpd_mod, pd as pd_mod, tsscpp as tri_mod
from .perm import (
    all_perms, avoids, block_decomposition, format_perm, is_grassmannian, is_inverse_grassmannian, parse_perm,
)

OBJECTS = ("asm", "bpd", "pd", "triangle")
PER_PERM_THEOREMS = ("main", "bottom-yam", "inv-grass", "grass", "blocks")


class UsageError(Exception):
    pass


def _perm_arg(text: str):
    try:
        return parse_perm(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tsscpp-asm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list or count objects of one size")
    p.add_argument("--object", choices=OBJECTS, required=True)
    p.add_argument("--n", type=_positive)
    p.add_argument("--perm", type=_perm_arg, help="restrict to reduced objects of this permutation")
    p.add_argument("--reduced", action="store_true", help="keep only objects whose pipe dream is reduced")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("convert", help="convert one object read from stdin")
    p.add_argument("--from", dest="source", required=True,
                   choices=("asm", "bpd", "pd", "sequence", "triangle", "permutation"))
    p.add_argument("--to", dest="target", required=True,
                   choices=("asm", "bpd", "pd", "sequence", "triangle", "rothe-bpd", "bottom-pd"))
    p.add_argument("--n", type=_positive, help="size, when the input does not carry it")
    p.add_argument("--format", choices=("json", "text"), default="json", help="ASM output form")

    p = sub.add_parser("weight", help="print the weight monomial of an object read from stdin")
    p.add_argument("--object", choices=OBJECTS + ("sequence",), required=True)

    p = sub.add_parser("schubert", help="Schubert polynomial from pipe dreams and/or BPDs")
    p.add_argument("--perm", type=_perm_arg, required=True)
    p.add_argument("--via", choices=("pd", "bpd", "both"), default="both")

    p = sub.add_parser("verify", help="check a theorem or lemma exhaustively")
    p.add_argument("--theorem", choices=tuple(bijections.THEOREMS), required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=_positive)
    group.add_argument("--perm", type=_perm_arg)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--quiet", action="store_true", help="print only failing reports and the summary")

    p = sub.add_parser("poset", help="slide or droop poset of a permutation")
    p.add_argument("--perm", type=_perm_arg, required=True)
    p.add_argument("--kind", choices=("slide", "droop"), required=True)
    p.add_argument("--dot", action="store_true", help="emit Graphviz source")

    p = sub.add_parser("decompose", help="block decomposition of a (1432, 2143)-avoiding permutation")
    p.add_argument("--perm", type=_perm_arg, required=True)

    p = sub.add_parser("table1", help="enumeration table of matched ASM and TSSCPP")
    p.add_argument("--max-n", type=_positive, required=True)
    p.add_argument("--tsv", action="store_true")
    p.add_argument("--jobs", type=_positive, default=1)
    return parser


# -- enumerate ---------------------------------------------------------------


def _emit_object(obj, fmt: str, n: int) -> str:
    if isinstance(obj, asm_mod.Asm):
        return asm_mod.to_json(obj) if fmt == "json" else asm_mod.to_text(obj)
    if isinstance(obj, bpd_mod.Bpd):
        return json.dumps({"n": obj.n, "tiles": obj.to_text().split()}) if fmt == "json" else obj.to_text()
    if isinstance(obj, pd_mod.PipeDream):
        if fmt == "json":
            s = pd_mod.pd_to_sequence(obj)
            return json.dumps({"n": n, "crosses": sorted(obj.crosses), "a": list(s.a), "r": list(s.r)})
        return obj.to_text()
    if isinstance(obj, tri_mod.BooleanTriangle):
        return json.dumps({"n": obj.n, "rows": [list(r) for r in obj.rows]}) if fmt == "json" else tri_mod.to_text(obj)
    raise TypeError(type(obj))


def _objects(kind: str, n: int, pi, reduced: bool) -> Iterator:
    if kind in ("asm", "bpd"):
        if pi is not None:
            for D in bpd_mod.enumerate_bpd_red(pi):
                yield D if kind == "bpd" else asm_mod.bpd_to_asm(D)
            return
        for A in asm_mod.enumerate_asm(n):
            D = asm_mod.asm_to_bpd(A)
            if reduced and bpd_mod.reduced_permutation(D) is None:
                continue
            yield D if kind == "bpd" else A
    elif kind == "pd":
        if pi is not None:
            yield from pd_mod.enumerate_pd_red(pi)
            return
        for D in pd_mod.enumerate_pd(n):
            if not reduced or pd_mod.is_reduced(D):
                yield D
    else:
        if pi is not None:
            yield from tri_mod.tsscpp_red(pi)
            return
        for T in tri_mod.enumerate_triangles(n):
            if not reduced or pd_mod.is_reduced(tri_mod.triangle_to_pd(T)):
                yield T


def cmd_enumerate(args, out) -> int:
    n = args.n
    if args.perm is not None:
        if n is not None and n != len(args.perm):
            raise UsageError(f"--n {n} does not match the size of --perm")
        n = len(args.perm)
    if n is None:
        raise UsageError("give --n or --perm")
    if args.count_only and args.perm is None and not args.reduced:
        # counting needs no objects at all
        count = {"asm": asm_mod.count_asm, "bpd": asm_mod.count_asm,
                 "triangle": tri_mod.count_triangles}.get(args.object)
        if count is not None:
            out.write(f"{count(n)}\n")
            return 0
    stream = _objects(args.object, n, args.perm, args.reduced)
    if args.count_only:
        out.write(f"{sum(1 for _ in stream)}\n")
        return 0
    first = True
    for obj in stream:
        if args.format == "text" and not first:
            out.write("\n")
        first = False
        text = _emit_object(obj, args.format, n)
        out.write(text if text.endswith("\n") else text + "\n")
    return 0


# -- convert / weight --------------------------------------------------------


def _read_asm(text: str):
    return asm_mod.from_json(text) if text.lstrip().startswith("{") else asm_mod.from_text(text)


def _read_sequence(text: str, n: int | None):
    s, carried = pd_mod.CompatibleSequence.from_json(text)
    size = n if n is not None else carried
    if size is None:
        raise UsageError('sequence input needs an "n" field or --n')
    return s, size


def cmd_convert(args, text: str, out) -> int:
    src, dst = args.source, args.target
    if src == "asm" and dst == "bpd":
        out.write(asm_mod.asm_to_bpd(_read_asm(text)).to_text())
    elif src == "bpd" and dst == "asm":
        A = asm_mod.bpd_to_asm(bpd_mod.parse(text))
        out.write(asm_mod.to_json(A) + "\n" if args.format == "json" else asm_mod.to_text(A))
    elif src == "pd" and dst == "sequence":
        D = pd_mod.PipeDream.parse(text)
        out.write(pd_mod.pd_to_sequence(D).to_json(D.n) + "\n")
    elif src == "sequence" and dst == "pd":
        s, n = _read_sequence(text, args.n)
        out.write(pd_mod.sequence_to_pd(s, n).to_text())
    elif src == "triangle" and dst == "pd":
        out.write(tri_mod.triangle_to_pd(tri_mod.from_text(text, args.n)).to_text())
    elif src == "pd" and dst == "triangle":
        out.write(tri_mod.to_text(tri_mod.pd_to_triangle(pd_mod.PipeDream.parse(text))))
    elif src == "permutation" and dst == "rothe-bpd":
        out.write(bpd_mod.rothe_bpd(parse_perm(text)).to_text())
    elif src == "permutation" and dst == "bottom-pd":
        out.write(pd_mod.bottom_pd(parse_perm(text)).to_text())
    else:
        raise UsageError(f"no conversion from {src} to {dst}")
    return 0


def cmd_weight(args, text: str, out) -> int:
    kind = args.object
    if kind == "asm":
        m = asm_mod.weight(_read_asm(text))
    elif kind == "bpd":
        m = bpd_mod.blank_weight(bpd_mod.parse(text))
    elif kind == "pd":
        m = pd_mod.cross_weight(pd_mod.PipeDream.parse(text))
    elif kind == "sequence":
        s, _ = pd_mod.CompatibleSequence.from_json(text)
        m = pd_mod.cross_weight(pd_mod.sequence_to_pd(s, max(s.a, default=0) + 1))
    else:
        m = tri_mod.weight(tri_mod.from_text(text))
    out.write(f"{m}\n")
    return 0


# -- the rest ----------------------------------------------------------------


def cmd_schubert(args, out) -> int:
    pi = args.perm
    if len(pi) > 7:
        raise UsageError("schubert is limited to n <= 7")
    status = 0
    if args.via in ("pd", "both"):
        left = bijections.schubert_from_pd(pi)
        out.write(f"pd:  {left}\n")
    if args.via in ("bpd", "both"):
        right = bijections.schubert_from_bpd(pi)
        out.write(f"bpd: {right}\n")
    if args.via == "both":
        same = left == right
        out.write("equal\n" if same else "MISMATCH\n")
        status = 0 if same else 1
    return status


def _one_report(task):
    theorem, pi = task
    return bijections.run_check(theorem, pi=pi)


def cmd_verify(args, out) -> int:
    theorem = args.theorem
    if args.n is not None and args.n > 7:
        raise UsageError("verify is limited to n <= 7")
    if args.jobs > 1 and args.n is not None and theorem in PER_PERM_THEOREMS:
        keep = {
            "inv-grass": is_inverse_grassmannian,
            "grass": is_grassmannian,
            "blocks": lambda p: avoids(p, bijections.P1432, bijections.P2143),
        }.get(theorem, lambda p: True)
        tasks = [(theorem, p) for p in all_perms(args.n) if keep(p)]
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = [r for chunk in pool.map(_one_report, tasks, chunksize=8) for r in chunk]
    else:
        reports = bijections.run_check(theorem, n=args.n, pi=args.perm)
    failures = [r for r in reports if r["status"] != "ok"]
    for r in reports:
        if not args.quiet or r["status"] != "ok":
            out.write(json.dumps(r, sort_keys=True) + "\n")
    summary = {"theorem": theorem, "checked": len(reports), "failed": len(failures)}
    out.write(json.dumps(summary, sort_keys=True) + "\n")
    return 1 if failures else 0


def cmd_poset(args, out) -> int:
    pi = args.perm
    if args.kind == "slide":
        P = pd_mod.slide_poset(pi).relabel(pd_mod.cross_weight)
    else:
        P = bpd_mod.droop_poset(pi).relabel(bpd_mod.blank_weight)

    def fmt(D):
        return D.to_text().rstrip("\n")

    if args.dot:
        out.write(P.to_dot(fmt, name=f"{args.kind}_{format_perm(pi).replace(',', '_')}"))
        return 0
    out.write(f"{args.kind} poset of {format_perm(pi)}: {len(P)} elements, {len(P.covers)} covers\n")
    for k, e in enumerate(P.elements):
        out.write(f"\n[{k}] weight {P.labels[k]}\n{fmt(e)}\n")
    out.write("\ncovers:\n")
    for a, b in sorted(P.covers):
        out.write(f"{a} < {b}\n")
    return 0


def cmd_decompose(args, out) -> int:
    dec = block_decomposition(args.perm)
    out.write(f"permutation: {format_perm(dec.pi)}\n")
    out.write(f"dominant: {' '.join(map(str, dec.dominant)) or '(empty)'}\n")
    for title, blocks in (("inverse-Grassmannian", dec.inverse_grassmannian_blocks),
                          ("Grassmannian", dec.grassmannian_blocks)):
        for b in blocks:
            rows = ",".join(map(str, b.rows))
            cols = ",".join(map(str, b.cols))
            out.write(f"{title} block {format_perm(b.perm)}: rows {rows}; cols {cols}\n")
    return 0


def cmd_table1(args, out) -> int:
    if args.max_n > 7:
        raise UsageError("table1 is limited to --max-n 7")
    rows = bijections.table1(args.max_n, jobs=args.jobs)
    out.write(bijections.format_table1(rows, tsv=args.tsv))
    bad = [r.n for r in rows if not r.consistent]
    if bad:
        sys.stderr.write(f"ASM and TSSCPP sides disagree at n = {bad}\n")
        return 1
    return 0


def run(argv: Iterable[str] | None = None, stdin=None, stdout=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(None if argv is None else list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "enumerate":
            return cmd_enumerate(args, stdout)
        if args.command == "convert":
            return cmd_convert(args, stdin.read(), stdout)
        if args.command == "weight":
            return cmd_weight(args, stdin.read(), stdout)
        if args.command == "schubert":
            return cmd_schubert(args, stdout)
        if args.command == "verify":
            return cmd_verify(args, stdout)
        if args.command == "poset":
            return cmd_poset(args, stdout)
        if args.command == "decompose":
            return cmd_decompose(args, stdout)
        return cmd_table1(args, stdout)
    except (UsageError, ValueError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())
