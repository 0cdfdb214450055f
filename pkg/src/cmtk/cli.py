"""Command-line interface: classify, verdict, witness, lowdim, oracle.

Every command prints one deterministic report. Exit codes: 0 success,
1 a check failed (invalid witness, oracle mismatch), 2 input error,
3 witness search ran out of bounds.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from typing import Any, Sequence

from . import __version__
from .cmtypes import classify_cm_types, is_nondegenerate, is_primitive, reflex_group
from .config import InputError, frame_from_spec, frame_to_spec, load_document, parse_lowdim, parse_pair
from .groups import LEFT, RIGHT, FrameError
from .lattice import FrameMismatch
from .oracle import run_oracles
from .verdict import DescriptorError, decide_cm_pair, low_dim_verdict, mutual_verdict_equivalences
from .witness import SearchStatus, find_witness, verify_witness, witness_from_rational_solution

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2
EXIT_EXHAUSTED = 3


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(obj: Any) -> str:
    return "sha256:" + hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()


def make_report(command: str, args: dict[str, Any], inputs: Any, result: dict[str, Any]) -> dict[str, Any]:
    return {
        "tool": "cmtk",
        "version": __version__,
        "command": {"name": command, "args": args},
        "input_digest": digest(inputs),
        "result": result,
    }


def render(report: dict[str, Any], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)
    return "\n".join(_text_lines(report))


def _text_lines(report: dict[str, Any]) -> list[str]:
    cmd = report["command"]["name"]
    res = report["result"]
    lines = [f"cmtk {report['version']} {cmd}  ({report['input_digest'][:19]})"]
    if cmd == "classify":
        lines.append(f"frame {res['frame']}: {res['total_types']} CM types, {len(res['classes'])} classes")
        for c in res["classes"]:
            flags = ("primitive" if c["primitive"] else "imprimitive") + (
                ", nondegenerate" if c["nondegenerate"] else ""
            )
            lines.append(f"  {c['representative']}  orbit {c['orbit_size']}  rank {c['lattice_rank']}  {flags}")
    elif cmd in ("verdict", "lowdim"):
        for key in ("direction_12", "direction_21"):
            v = res[key]
            h = v["h12"]
            hs = "" if h is None else f"  X*(H) free_rank={h['free_rank']} torsion={h['torsion']}"
            lines.append(f"  {v['source']} for {v['target']}: {v['kind']}{hs}")
        lines.append(f"  mutual: {res['mutual']}")
    elif cmd == "witness":
        if "valid" in res:
            lines.append(f"  witness valid: {res['valid']} ({res['reason']})")
        else:
            lines.append(f"  status: {res['status']}")
            if res.get("degree"):
                lines.append(f"  degree: {res['degree']}")
    elif cmd == "oracle":
        for r in res["checks"]:
            lines.append(f"  {'PASS' if r['failures'] == 0 else 'FAIL'} {r['name']} ({r['cases']} cases)")
    return lines


# --- commands ------------------------------------------------------------------


def cmd_classify(args: argparse.Namespace) -> tuple[dict, int]:
    if args.frame:
        doc = load_document(args.frame)
        spec = doc.get("frame", doc)
    elif args.cyclic is not None:
        spec = {"cyclic": args.cyclic}
    elif args.product:
        try:
            spec = {
                "product": [int(x) for x in args.product.split(",")],
                "conj": [int(x) for x in (args.conj or "").split(",") if x],
            }
        except ValueError:
            raise InputError("--product and --conj take comma-separated integers") from None
    else:
        raise InputError("classify needs --cyclic, --product or --frame")
    frame = frame_from_spec(spec)
    classes = classify_cm_types(frame, args.side, args.up_to_aut)
    records = []
    for cls in classes:
        rep = cls.representative
        records.append(
            {
                "representative": list(rep.phi),
                "orbit_size": cls.size,
                "primitive": is_primitive(rep),
                "nondegenerate": is_nondegenerate(rep),
                "lattice_rank": rep.lattice.rank,
                "reflex_group_order": reflex_group(rep).order,
            }
        )
    result = {
        "frame": frame_to_spec(frame),
        "side": args.side,
        "up_to_automorphism": args.up_to_aut,
        "total_types": sum(c.size for c in classes),
        "classes": records,
    }
    return make_report("classify", {"side": args.side, "up_to_aut": args.up_to_aut}, spec, result), EXIT_OK


def _verdict_result(v12, v21) -> dict:
    return {
        "direction_12": v12.to_json(),
        "direction_21": v21.to_json(),
        "mutual": v12.torsion_infinite and v21.torsion_infinite,
        "h12": v12.h12.to_json() if v12.h12 is not None else None,
        "h21": v21.h12.to_json() if v21.h12 is not None else None,
    }


def cmd_verdict(args: argparse.Namespace) -> tuple[dict, int]:
    doc = load_document(args.pair)
    pair = parse_pair(doc)
    v12, v21 = decide_cm_pair(pair.cm1, pair.cm2, pair.names)
    result = _verdict_result(v12, v21)
    rep = mutual_verdict_equivalences(pair.cm1, pair.cm2)
    result["ranks"] = {"T1": rep.rank_1, "T2": rep.rank_2, "T12": rep.rank_12}
    return make_report("verdict", {}, pair.to_json(), result), EXIT_OK


def cmd_witness(args: argparse.Namespace) -> tuple[dict, int]:
    doc = load_document(args.pair)
    pair = parse_pair(doc)
    cm1, cm2 = pair.cm1, pair.cm2
    names = pair.names
    if args.reverse:
        cm1, cm2, names = cm2, cm1, (names[1], names[0])
    cmd_args: dict[str, Any] = {"reverse": args.reverse}
    if args.verify:
        if pair.witness is None:
            raise InputError('--verify needs a "witness" entry in the pair file')
        check = verify_witness(pair.witness, cm1, cm2)
        result = {
            "source": names[0],
            "target": names[1],
            "valid": check.ok,
            "reason": check.reason.value,
            "degree": pair.witness.descriptor,
        }
        cmd_args["verify"] = True
        code = EXIT_OK if check.ok else EXIT_CHECK_FAILED
        return make_report("witness", cmd_args, pair.to_json(), result), code

    max_r = args.max_r if args.max_r is not None else pair.max_r
    max_t = args.max_t if args.max_t is not None else pair.max_t
    if args.constructive:
        cmd_args["constructive"] = True
        try:
            w = witness_from_rational_solution(cm1, cm2)
            status = SearchStatus.FOUND
        except ValueError:
            w, status = None, SearchStatus.ABSENT
    else:
        search = find_witness(cm1, cm2, max_r, max_t)
        w, status = search.witness, search.status
        cmd_args.update(max_r=search.max_r, max_t=search.max_t)
    result = {
        "source": names[0],
        "target": names[1],
        "status": status.value,
        "witness": w.to_json() if w else None,
        "degree": w.descriptor if w else None,
        "verified": bool(verify_witness(w, cm1, cm2)) if w else None,
    }
    code = EXIT_EXHAUSTED if status is SearchStatus.EXHAUSTED else EXIT_OK
    return make_report("witness", cmd_args, pair.to_json(), result), code


def cmd_lowdim(args: argparse.Namespace) -> tuple[dict, int]:
    doc = load_document(args.descriptors)
    a, b = parse_lowdim(doc)
    v_ab, v_ba = low_dim_verdict(a, b)
    return make_report("lowdim", {}, doc, _verdict_result(v_ab, v_ba)), EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> tuple[dict, int]:
    seed = args.seed if args.seed is not None else 0
    results = run_oracles(seed, args.cases)
    checks = [{"name": r.name, "cases": r.cases, "failures": r.failures} for r in results]
    ok = all(r.passed for r in results)
    report = make_report("oracle", {"seed": seed, "cases": args.cases}, {"seed": seed}, {"checks": checks, "ok": ok})
    return report, EXIT_OK if ok else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    # Global flags are accepted before or after the subcommand; the subcommand
    # copies use SUPPRESS so they do not clobber values given up front.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized checks")

    parser = argparse.ArgumentParser(prog="cmtk", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--seed", type=int, default=None, help="seed for randomized checks")
    parser.add_argument("--version", action="version", version=f"cmtk {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify CM types of a frame")
    p.add_argument("--cyclic", type=int)
    p.add_argument("--product", help="comma-separated cyclic orders")
    p.add_argument("--conj", help="comma-separated components of the conjugation")
    p.add_argument("--frame", help="JSON/TOML file with a frame spec")
    p.add_argument("--side", choices=(LEFT, RIGHT), default=LEFT)
    p.add_argument("--up-to-aut", action="store_true", help="also identify CM types related by automorphisms fixing conj")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verdict", parents=[common], help="torsion verdicts for a CM pair")
    p.add_argument("--pair", required=True)
    p.set_defaults(func=cmd_verdict)

    p = sub.add_parser("witness", parents=[common], help="search or verify a torsion-infinite Hodge class")
    p.add_argument("--pair", required=True)
    p.add_argument("--max-r", type=int)
    p.add_argument("--max-t", type=int)
    p.add_argument("--reverse", action="store_true", help="search from A2 to A1")
    p.add_argument("--verify", action="store_true", help="verify the witness stored in the pair file")
    p.add_argument("--constructive", action="store_true", help="build a witness from a rational solution")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("lowdim", parents=[common], help="verdicts for absolutely simple varieties of dim <= 3")
    p.add_argument("descriptors")
    p.set_defaults(func=cmd_lowdim)

    p = sub.add_parser("oracle", parents=[common], help="run brute-force cross-checks")
    p.add_argument("--cases", type=int, default=200)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = args.func(args)
    except (InputError, FrameError, FrameMismatch, DescriptorError, ValueError) as exc:
        print(f"cmtk {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(render(report, args.format) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
