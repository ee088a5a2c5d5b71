"""Command-line surface.

Every command reads one input, runs one computation, and prints a report
in a stable key/value layout (insertion-ordered keys, inline arrays), so
identical input bytes always produce identical output bytes.  Exit codes:
0 success, 1 validation or computation error, 2 parse error.
"""

from __future__ import annotations

import argparse
import hashlib
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import dsl, gallery
from .closure import check_star_condition, generate_from_squares
from .core import SquaresCategory, validate_squares_category
from .errors import ParseError, SqcatError
from .k0 import k0_invariants
from .nerve import DEFAULT_MAX_EDGES, DEFAULT_MAX_GRIDS, abelianize, \
    diagonal_2_skeleton, pi1_presentation

_PARSE_CODES = {"parse-error", "duplicate-id", "unknown-id", "missing-basepoint"}


class TextBlock(str):
    """Multi-line payload rendered as an indented literal block."""


@dataclass
class Report:
    command: str
    input_digest: str
    result: dict = field(default_factory=dict)
    diagnostics: list = field(default_factory=list)

    def error(self, code: str, message: str):
        self.diagnostics.append((code, message))

    def exit_code(self) -> int:
        if any(code in _PARSE_CODES for code, _ in self.diagnostics):
            return 2
        return 1 if self.diagnostics else 0

    def render(self) -> str:
        lines = [f"command: {self.command}", f"input-digest: {self.input_digest}"]
        lines.append("result:" if self.result else "result: {}")
        lines.extend(_render_entries(self.result, "  "))
        if self.diagnostics:
            lines.append("diagnostics:")
            lines.extend(f"  - [{code}] {message}"
                         for code, message in self.diagnostics)
        else:
            lines.append("diagnostics: []")
        return "\n".join(lines) + "\n"


def _render_scalar(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _render_entries(mapping: dict, indent: str) -> list[str]:
    lines = []
    for key, value in mapping.items():
        if isinstance(value, TextBlock):
            lines.append(f"{indent}{key}: |")
            lines.extend(f"{indent}  {ln}" for ln in value.splitlines())
        elif isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_render_entries(value, indent + "  "))
        elif isinstance(value, (list, tuple)):
            body = ", ".join(_render_scalar(v) for v in value)
            lines.append(f"{indent}{key}: [{body}]")
        else:
            lines.append(f"{indent}{key}: {_render_scalar(value)}")
    return lines


def _digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _invariants_payload(inv) -> dict:
    return {"rank": inv.rank, "torsion": list(inv.torsion)}


def _load_category(path: str, report: Report) -> SquaresCategory | None:
    try:
        doc = dsl.parse_sqcat(Path(path).read_text(encoding="utf-8"))
        return dsl.elaborate_document(doc)
    except OSError as exc:
        report.error("io-error", str(exc))
    except ParseError as exc:
        report.error(exc.code, str(exc))
    return None


def _require_valid(sq: SquaresCategory, report: Report) -> bool:
    rep = validate_squares_category(sq)
    if not rep.ok:
        first = rep.violations[0]
        report.error("invalid-category",
                     f"{len(rep.violations)} violations, first: {first.rule} "
                     f"{list(first.subjects)}")
    return rep.ok


def _word_text(word: tuple[int, ...], names: tuple[str, ...]) -> str:
    return " ".join(names[k - 1] if k > 0 else f"{names[-k - 1]}^-1"
                    for k in word)


def _cmd_validate(sq, report, args):
    rep = validate_squares_category(sq)
    report.result["ok"] = rep.ok
    report.result["violations"] = len(rep.violations)
    for i, v in enumerate(rep.violations):
        report.result[f"violation_{i}"] = {
            "rule": v.rule,
            "subjects": list(v.subjects),
            "note": v.note,
        }
    if not rep.ok:
        report.error("invalid-category", "validation failed")


def _cmd_k0(sq, report, args):
    if not _require_valid(sq, report):
        return
    report.result.update(_invariants_payload(k0_invariants(sq)))


def _pi1_data(sq, args):
    cw = diagonal_2_skeleton(sq, max_edges=args.max_edges,
                             max_grids=args.max_grids)
    return pi1_presentation(cw, sq.basepoint)


def _cmd_pi1(sq, report, args):
    if not _require_valid(sq, report):
        return
    pres = _pi1_data(sq, args)
    report.result["generators"] = list(pres.generators)
    report.result["relators"] = [_word_text(w, pres.generators)
                                 for w in pres.relators]
    report.result["abelianization"] = _invariants_payload(abelianize(pres))


def _cmd_compare(sq, report, args):
    if not _require_valid(sq, report):
        return
    k0 = k0_invariants(sq)
    ab = abelianize(_pi1_data(sq, args))
    star = check_star_condition(sq)
    report.result["k0"] = _invariants_payload(k0)
    report.result["pi1_abelianized"] = _invariants_payload(ab)
    report.result["agree"] = k0 == ab
    report.result["star_condition"] = star.holds


def _emit_category(sq, name, report, args):
    text = dsl.serialize_category(sq, name)
    report.result["objects"] = len(sq.objects)
    report.result["squares"] = len(sq.distinguished)
    if args.emit:
        Path(args.emit).write_text(text, encoding="utf-8")
        report.result["emitted"] = args.emit
    else:
        report.result["category"] = TextBlock(text)


def _cmd_close(report, args):
    try:
        doc = dsl.parse_sqcat(Path(args.input).read_text(encoding="utf-8"))
        data = dsl.generating_from_document(doc)
        closed = generate_from_squares(data)
    except OSError as exc:
        report.error("io-error", str(exc))
        return
    except ParseError as exc:
        report.error(exc.code, str(exc))
        return
    except SqcatError as exc:
        report.error(exc.code, str(exc))
        return
    _emit_category(closed, f"{doc.name}_closed", report, args)


def _cmd_example(report, args):
    try:
        sq = gallery.example(args.name)
    except (KeyError, SqcatError) as exc:
        report.error("unknown-example" if isinstance(exc, KeyError)
                     else exc.code, str(exc))
        return
    _emit_category(sq, re.sub(r"[^A-Za-z0-9_]", "_", args.name), report, args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqcat",
        description="Validate finite squares categories, compute the "
                    "object-relation group, and cross-check it against the "
                    "fundamental group of the diagonal nerve.")
    parser.add_argument("--max-edges", type=int, default=DEFAULT_MAX_EDGES,
                        help="edge enumeration cap (default %(default)s)")
    parser.add_argument("--max-grids", type=int, default=DEFAULT_MAX_GRIDS,
                        help="grid enumeration cap (default %(default)s)")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("validate", "k0", "pi1", "compare", "close"):
        p = sub.add_parser(name)
        p.add_argument("input", help="path to a .sqcat document")
        if name == "close":
            p.add_argument("--emit", help="write the closed category here")
    p = sub.add_parser("example")
    p.add_argument("name", help="one of: " + ", ".join(gallery.example_names()))
    p.add_argument("--emit", help="write the serialized category here")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "example":
        digest = _digest(args.name.encode("utf-8"))
    else:
        try:
            digest = _digest(Path(args.input).read_bytes())
        except OSError:
            digest = "sha256:unreadable"
    report = Report(args.command, digest)

    if args.command == "example":
        _cmd_example(report, args)
    elif args.command == "close":
        _cmd_close(report, args)
    else:
        sq = _load_category(args.input, report)
        if sq is not None:
            try:
                {"validate": _cmd_validate, "k0": _cmd_k0,
                 "pi1": _cmd_pi1, "compare": _cmd_compare}[args.command](
                    sq, report, args)
            except SqcatError as exc:
                report.error(exc.code, str(exc))

    sys.stdout.write(report.render())
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
