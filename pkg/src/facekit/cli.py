"""Command-line front end.

    facekit build --input fusion.json --output algebra.json
    facekit check --builtin ising --level full
    facekit check --input algebra.json --json
    facekit export --builtin fibonacci --output fib.json
    facekit example vec_s3
    facekit oracle-diff --group S3
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog
from .facebuild import (
    DualityError,
    FaceAlgebra,
    StructureImportError,
    block_summary,
    build_face_algebra,
    dumps_face_algebra,
    face_algebra_from_json,
)
from .fusiondata import FusionData, FusionDataError, fusion_to_json, load_fusion, validate_all
from .verify import LEVELS, check_all, reconstruct_fusion


class CommandError(Exception):
    """A user-facing failure; printed as a diagnostic with exit status 1."""


def _read_json(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CommandError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CommandError(f"{path}: invalid JSON ({exc})") from None


def _validated(fd: FusionData) -> FusionData:
    failures = [r for r in validate_all(fd) if not r.ok]
    if failures:
        raise CommandError("fusion data rejected\n" + "\n".join(r.summary() for r in failures))
    return fd


def _load_fusion_doc(doc: dict, source: str) -> FusionData:
    try:
        return _validated(load_fusion(doc))
    except FusionDataError as exc:
        raise CommandError(f"{source}: {exc}") from None


def _build(fd: FusionData) -> FaceAlgebra:
    try:
        return build_face_algebra(fd)
    except DualityError as exc:
        raise CommandError(str(exc)) from None


def _builtin(name: str) -> FusionData:
    try:
        return catalog.builtin(name)
    except KeyError as exc:
        raise CommandError(exc.args[0]) from None


def _resolve(args) -> tuple[FaceAlgebra, FusionData | None]:
    """Face algebra for ``--builtin`` or ``--input`` (fusion or structure-constant JSON)."""
    if args.builtin:
        fd = _builtin(args.builtin)
        return _build(fd), fd
    doc = _read_json(args.input)
    if isinstance(doc, dict) and "basis" in doc:
        try:
            return face_algebra_from_json(doc), None
        except StructureImportError as exc:
            raise CommandError(f"{args.input}: {exc}") from None
    fd = _load_fusion_doc(doc, args.input)
    return _build(fd), fd


def _summary(H: FaceAlgebra) -> str:
    blocks = ", ".join(f"{name}:{d}" for name, d in block_summary(H))
    return f"face algebra of dimension {H.dim} over {H.rank} labels\nblocks: {blocks}\n"


def cmd_build(args) -> int:
    fd = _load_fusion_doc(_read_json(args.input), args.input)
    H = _build(fd)
    Path(args.output).write_text(dumps_face_algebra(H))
    sys.stdout.write(_summary(H))
    sys.stdout.write(f"wrote {args.output}\n")
    return 0


def cmd_check(args) -> int:
    H, fd = _resolve(args)
    report = check_all(H, level=args.level)
    if args.reconstruct:
        if fd is None:
            raise CommandError("--reconstruct needs fusion data input, not structure constants")
        report = report.extend(reconstruct_fusion(H).as_axiom_report())
    if args.json:
        sys.stdout.write(json.dumps({"dim": H.dim, "results": report.to_json(), "ok": report.ok},
                                    sort_keys=True, indent=1) + "\n")
    else:
        sys.stdout.write(_summary(H))
        sys.stdout.write(report.to_text())
    return 0 if report.ok else 1


def cmd_export(args) -> int:
    if args.builtin:
        fd = _builtin(args.builtin)
    else:
        fd = _load_fusion_doc(_read_json(args.input), args.input)
    if args.what == "fusion":
        text = json.dumps(fusion_to_json(fd), indent=1) + "\n"
    else:
        text = dumps_face_algebra(_build(fd))
    Path(args.output).write_text(text)
    sys.stdout.write(f"wrote {args.what} data to {args.output}\n")
    return 0


def cmd_example(args) -> int:
    fd = _builtin(args.name)
    H = _build(fd)
    sys.stdout.write(f"{args.name}: labels {', '.join(fd.labels)} (conductor {fd.conductor})\n")
    sys.stdout.write(_summary(H))
    report = check_all(H, level="fast")
    rec = reconstruct_fusion(H)
    sys.stdout.write(f"axiom suite: {'pass' if report.ok else 'FAIL ' + ', '.join(report.failed())}\n")
    sys.stdout.write(rec.as_axiom_report().to_text())
    return 0 if report.ok and rec.ok else 1


def cmd_oracle_diff(args) -> int:
    try:
        G = catalog.group(args.group)
    except KeyError as exc:
        raise CommandError(exc.args[0]) from None
    diff = catalog.diff_against_oracle(G, skew=args.skew)
    sys.stdout.write(diff.to_text())
    return 0 if diff.identical else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="facekit", description="Face algebras of fusion categories.")
    sub = p.add_subparsers(dest="verb", required=True)

    b = sub.add_parser("build", help="build structure constants from fusion data")
    b.add_argument("--input", required=True)
    b.add_argument("--output", required=True)
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("check", help="run the axiom suite")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--input")
    src.add_argument("--builtin", metavar="NAME")
    c.add_argument("--level", choices=LEVELS, default="fast")
    c.add_argument("--json", action="store_true", help="machine-readable report")
    c.add_argument("--reconstruct", action="store_true", help="also recover the fusion rules from comodules")
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("export", help="write a builtin as fusion data or structure constants")
    src = e.add_mutually_exclusive_group(required=True)
    src.add_argument("--input")
    src.add_argument("--builtin", metavar="NAME")
    e.add_argument("--output", required=True)
    e.add_argument("--what", choices=("algebra", "fusion"), default="algebra")
    e.set_defaults(func=cmd_export)

    x = sub.add_parser("example", help="build, check and reconstruct a builtin")
    x.add_argument("name", choices=catalog.BUILTINS)
    x.set_defaults(func=cmd_example)

    o = sub.add_parser("oracle-diff", help="compare the coend build of Vec_G with the closed forms")
    o.add_argument("--group", required=True, choices=sorted(catalog.GROUPS))
    o.add_argument("--skew", action="store_true", help="use a wrong basis dictionary (negative control)")
    o.set_defaults(func=cmd_oracle_diff)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
