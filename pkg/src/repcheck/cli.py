"""Command-line interface.

Subcommands: classify, show-group, show-table, simulate-teleport,
simulate-swap, verify-all.  JSON is the stable machine format (selected via
--json or REPCHECK_OUTPUT=json); text output is human-oriented.  All output
is deterministic for fixed flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .characters import char_table
from .classify import full_report, report_text
from .cyclo import CycloNum
from .groups import BUILTIN_NAMES, builtin_group, conjugacy_classes
from .quantum import (
    PureState,
    iterate_swap_detailed,
    povm_construction,
    teleport,
)
from .verify import run_all


def _frac_json(q: Fraction) -> dict:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def _cyclo_json(x: CycloNum) -> dict:
    return {"coeffs": [_frac_json(c) for c in x.coeffs]}


def _dump(payload: str, out_path: Optional[str]) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)


def _wants_json(args: argparse.Namespace) -> bool:
    if getattr(args, "json", False):
        return True
    return os.environ.get("REPCHECK_OUTPUT", "").lower() == "json"


def _cmd_classify(args: argparse.Namespace) -> int:
    if _wants_json(args):
        payload = json.dumps(full_report(), indent=2, sort_keys=True)
    else:
        payload = report_text()
    _dump(payload, args.out)
    return 0


def _cmd_show_group(args: argparse.Namespace) -> int:
    _dump(builtin_group(args.name).dump(), args.out)
    return 0


def _cmd_show_table(args: argparse.Namespace) -> int:
    g = builtin_group(args.name)
    t = char_table(g)
    cc = conjugacy_classes(g)
    if _wants_json(args):
        doc = {
            "group": g.name,
            "labels": list(t.labels),
            "values": [
                [[_frac_json(c) for c in v.coeffs] for v in chi.values]
                for chi in t.irreducibles
            ],
        }
        payload = json.dumps(doc, indent=2, sort_keys=True)
    else:
        heads = [g.word(r) for r in cc.representatives]
        cells = [[str(v) for v in chi.values] for chi in t.irreducibles]
        width = max(
            [len(h) for h in heads]
            + [len(c) for row in cells for c in row]
            + [len(lbl) for lbl in t.labels]
        )
        lines = [f"character table {g.name}"]
        lines.append(" ".join([" " * width] + [h.rjust(width) for h in heads]))
        for lbl, row in zip(t.labels, cells):
            lines.append(" ".join([lbl.rjust(width)] + [c.rjust(width) for c in row]))
        payload = "\n".join(lines)
    _dump(payload, args.out)
    return 0


def _parse_state(text: str) -> PureState:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise ValueError("expected 4 comma-separated rationals: re0,im0,re1,im1")
    re0, im0, re1, im1 = (Fraction(p) for p in parts)
    return PureState((CycloNum(re0, 0, im0, 0), CycloNum(re1, 0, im1, 0)))


def _cmd_simulate_teleport(args: argparse.Namespace) -> int:
    try:
        state = _parse_state(args.state)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: bad --state: {exc}", file=sys.stderr)
        return 2
    if state.is_zero():
        print("error: --state must be non-zero", file=sys.stderr)
        return 2
    trace = teleport(state)
    if _wants_json(args):
        doc = {
            "input": [_cyclo_json(a) for a in state.vector],
            "outcomes": [
                {
                    "outcome": rec.label,
                    "probability": _frac_json(rec.probability),
                    "correction_label": rec.correction_label,
                    "chsh": None,
                    "restored_scalar": _cyclo_json(rec.post.proportional_to(state)),
                }
                for rec in trace.outcomes
            ],
        }
        payload = json.dumps(doc, indent=2, sort_keys=True)
    else:
        lines = [f"teleporting ({state.vector[0]}, {state.vector[1]})"]
        for rec in trace.outcomes:
            scalar = rec.post.proportional_to(state)
            lines.append(
                f"outcome {rec.label}  probability {rec.probability}  "
                f"correction {rec.correction_label}  output = ({scalar}) * input"
            )
        payload = "\n".join(lines)
    _dump(payload, args.out)
    return 0


def _cmd_simulate_swap(args: argparse.Namespace) -> int:
    if args.rounds < 1:
        print("error: --rounds must be >= 1", file=sys.stderr)
        return 2
    _, inst = povm_construction()
    detailed = iterate_swap_detailed(args.rounds, seed=args.seed, inst=inst)
    if _wants_json(args):
        doc = {
            "rounds": [
                {
                    "round": i + 1,
                    "outcome": rec.label,
                    "probability": _frac_json(rec.probability),
                    "correction_label": rec.correction_label,
                    "chsh": _cyclo_json(chsh),
                }
                for i, (rec, chsh) in enumerate(detailed)
            ],
            "seed": args.seed,
        }
        payload = json.dumps(doc, indent=2, sort_keys=True)
    else:
        lines = []
        for i, (rec, chsh) in enumerate(detailed):
            lines.append(
                f"round {i + 1}  outcome {rec.label}  probability {rec.probability}  "
                f"correction {rec.correction_label}  chsh {chsh} ({chsh.to_complex().real:.12f})"
            )
        payload = "\n".join(lines)
    _dump(payload, args.out)
    return 0


def _cmd_verify_all(args: argparse.Namespace) -> int:
    results = run_all()
    lines = []
    for r in results:
        mark = "ok  " if r.ok else "FAIL"
        lines.append(f"{mark} {r.name}: {r.detail}")
    passed = sum(1 for r in results if r.ok)
    lines.append(f"{passed}/{len(results)} checks passed")
    _dump("\n".join(lines), args.out)
    return 0 if passed == len(results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="repcheck",
        description=(
            "Exact check of which teleportation-stable families are quantum-"
            "realizable, with exact simulators for the two positive protocols."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify all seven families")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--out", metavar="PATH", default=None, help="write output to a file")
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("show-group", help="dump a built-in group's multiplication table")
    p.add_argument("name", choices=BUILTIN_NAMES)
    p.add_argument("--out", metavar="PATH", default=None)
    p.set_defaults(fn=_cmd_show_group)

    p = sub.add_parser("show-table", help="print a built-in character table")
    p.add_argument("name", choices=BUILTIN_NAMES)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", metavar="PATH", default=None)
    p.set_defaults(fn=_cmd_show_table)

    p = sub.add_parser("simulate-teleport", help="teleport a single-qubit state exactly")
    p.add_argument(
        "--state",
        default="1,0,0,0",
        metavar="re0,im0,re1,im1",
        help="amplitudes as 4 rationals (default |0>)",
    )
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", metavar="PATH", default=None)
    p.set_defaults(fn=_cmd_simulate_teleport)

    p = sub.add_parser("simulate-swap", help="run chained entanglement swaps exactly")
    p.add_argument("--rounds", type=int, default=1)
    p.add_argument("--seed", type=int, default=None,
                   help="seed for outcome selection (default: round-robin)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", metavar="PATH", default=None)
    p.set_defaults(fn=_cmd_simulate_swap)

    p = sub.add_parser("verify-all", help="run the whole verification battery")
    p.add_argument("--out", metavar="PATH", default=None)
    p.set_defaults(fn=_cmd_verify_all)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
