"""Command-line front end: group tables, multiplicities, bases, induced
representation census, and verification suites.

Output is deterministic for fixed flags: identical invocations produce
byte-identical bytes.  JSON payloads carry a top-level schema tag; CSV is
RFC-4180 with a header row; text is an aligned human-readable table.
Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from . import groupcore as gc
from .bases import basis_for, multiplicity_for, verify_basis
from .deck import build_cyclic8, build_quaternion, deck_group, verify_deck_group
from .induced import irrep_census

SCHEMA = "s3harm/1"
J_MAX_LIMIT = 20
DEFAULT_TOL = 1e-10
TOL_ENV_VAR = "S3HARM_TOL"


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    manifold: str | None
    j: int | None
    j_max: int | None
    seed: int
    tol: float
    fmt: str
    output: str | None


def _default_tol() -> float:
    raw = os.environ.get(TOL_ENV_VAR)
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError:
        raise SystemExit(f"invalid {TOL_ENV_VAR} value: {raw!r}")


def _check_j(parser: argparse.ArgumentParser, value: int, name: str) -> int:
    if value < 0 or value > J_MAX_LIMIT:
        parser.error(f"{name} must be in 0..{J_MAX_LIMIT}")
    return value


def _emit(payload: dict, cfg: RunConfig) -> None:
    if cfg.fmt == "json":
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    elif cfg.fmt == "csv":
        text = _to_csv(payload)
    else:
        text = _to_text(payload)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _to_csv(payload: dict) -> str:
    rows = payload.get("rows", [])
    buf = io.StringIO()
    if not rows:
        writer = csv.writer(buf)
        writer.writerow(["key", "value"])
        for key, value in payload.items():
            if key in ("rows", "schema"):
                continue
            writer.writerow([key, _scalar(value)])
        return buf.getvalue()
    fields = list(rows[0].keys())
    writer = csv.DictWriter(buf, fieldnames=fields)
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _scalar(row.get(k)) for k in fields})
    return buf.getvalue()


def _scalar(value):
    if isinstance(value, (dict, list, tuple)):
        return json.dumps(value, sort_keys=True)
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


def _to_text(payload: dict) -> str:
    lines = []
    for key, value in payload.items():
        if key in ("rows", "schema") or isinstance(value, dict):
            continue  # nested reports stay in the json format
        lines.append(f"{key}: {_scalar(value)}")
    rows = payload.get("rows", [])
    if rows:
        fields = list(rows[0].keys())
        table = [[str(_scalar(r.get(f, ""))) for f in fields] for r in rows]
        widths = [
            max(len(fields[i]), max((len(row[i]) for row in table), default=0))
            for i in range(len(fields))
        ]
        lines.append("  ".join(f.ljust(w) for f, w in zip(fields, widths)))
        for row in table:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)))
    return "\n".join(lines) + "\n"


def cmd_group(cfg: RunConfig, which: str, count_only: bool) -> tuple[dict, int]:
    if which == "G":
        elements = gc.closure(list(gc.WEYL_GENERATORS.values()))
        if count_only:
            return {"schema": SCHEMA, "which": which, "count": len(elements)}, 0
        rows = [
            {
                "index": i,
                "epsilon": el.epsilon,
                "cycles": el.cycles,
                "action": el.action_string(),
                "det": el.determinant(),
            }
            for i, el in enumerate(elements)
        ]
        return {"schema": SCHEMA, "which": which, "count": len(elements), "rows": rows}, 0
    group = deck_group(which)
    if count_only:
        return {"schema": SCHEMA, "which": which, "count": group.order}, 0
    rows = []
    for el in group.elements:
        entry = el.to_json_dict()
        entry["pair_left"] = str(el.pair.left)
        entry["pair_right"] = str(el.pair.right)
        rows.append(entry)
    return {
        "schema": SCHEMA,
        "which": which,
        "count": group.order,
        "isomorphism": group.isomorphism,
        "rows": rows,
    }, 0


def cmd_multiplicity(cfg: RunConfig) -> tuple[dict, int]:
    rows = [
        {"j": j, "m": multiplicity_for(cfg.manifold, j)} for j in range(cfg.j_max + 1)
    ]
    return {"schema": SCHEMA, "manifold": cfg.manifold, "rows": rows}, 0


def cmd_basis(cfg: RunConfig) -> tuple[dict, int]:
    functions = basis_for(cfg.manifold, cfg.j)
    rows = [f.to_json_dict() for f in functions]
    return {
        "schema": SCHEMA,
        "manifold": cfg.manifold,
        "j": cfg.j,
        "count": len(rows),
        "rows": rows,
    }, 0


def cmd_induced(cfg: RunConfig) -> tuple[dict, int]:
    rows = irrep_census()
    return {
        "schema": SCHEMA,
        "sum_dim_sq": sum(r["dim"] ** 2 for r in rows),
        "sum_dim_m_c8": sum(r["dim"] * r["m_c8"] for r in rows),
        "sum_dim_m_q": sum(r["dim"] * r["m_q"] for r in rows),
        "rows": rows,
    }, 0


def _verify_group_suite(cfg: RunConfig) -> list[dict]:
    checks = []
    full = gc.closure(list(gc.WEYL_GENERATORS.values()))
    checks.append(
        {"name": "weyl-closure-order-384", "passed": len(full) == 384, "measured": len(full)}
    )
    sub = gc.closure([gc.WEYL_GENERATORS[s] for s in (1, 2, 3)])
    checks.append(
        {"name": "rotation-subgroup-order-48", "passed": len(sub) == 48, "measured": len(sub)}
    )
    c8 = build_cyclic8()
    quality = verify_deck_group(c8, seed=cfg.seed, tol=cfg.tol)
    checks.append(
        {
            "name": "deck-c2-structure",
            "passed": quality["passed"],
            "measured": quality["pair_action_max_error"],
            "detail": quality,
        }
    )
    g1_4 = c8.by_label("g1^4").element
    checks.append(
        {
            "name": "c2-generator-fourth-power-is-inversion",
            "passed": g1_4 == gc.INVERSION,
            "measured": None,
        }
    )
    q = build_quaternion()
    quality_q = verify_deck_group(q, seed=cfg.seed, tol=cfg.tol)
    checks.append(
        {
            "name": "deck-c3-structure",
            "passed": quality_q["passed"],
            "measured": quality_q["pair_action_max_error"],
            "detail": quality_q,
        }
    )
    j4 = q.by_label("J4").element
    relations = all(
        gc.multiply(q.by_label(k).element, q.by_label(k).element) == j4
        for k in ("q1", "q2", "q3")
    )
    chain = gc.multiply(
        q.by_label("q3").element,
        gc.multiply(q.by_label("q2").element, q.by_label("q1").element),
    )
    checks.append(
        {
            "name": "c3-quaternion-relations",
            "passed": relations and chain == j4,
            "measured": None,
        }
    )
    return checks


def _verify_basis_suite(cfg: RunConfig) -> list[dict]:
    checks = []
    j_max = cfg.j_max if cfg.j_max is not None else 4
    for manifold, builder in (("C2", build_cyclic8), ("C3", build_quaternion)):
        if cfg.manifold and cfg.manifold != manifold:
            continue
        functions = [f for j in range(j_max + 1) for f in basis_for(manifold, j)]
        report = verify_basis(
            functions, builder(), seed=cfg.seed, tol=cfg.tol
        )
        checks.append(
            {
                "name": f"basis-{manifold.lower()}-orthonormal-periodic",
                "passed": report["passed"],
                "measured": max(
                    report.get("gram_max_error", 0.0),
                    report.get("periodicity_max_error", 0.0),
                ),
                "detail": report,
            }
        )
    return checks


def _verify_induced_suite(cfg: RunConfig) -> list[dict]:
    try:
        rows = irrep_census()
    except RuntimeError as exc:
        return [{"name": "induced-census", "passed": False, "measured": str(exc)}]
    checks = [
        {
            "name": "induced-sum-dim-squared-384",
            "passed": sum(r["dim"] ** 2 for r in rows) == 384,
            "measured": sum(r["dim"] ** 2 for r in rows),
        },
        {
            "name": "induced-aggregate-c8-48",
            "passed": sum(r["dim"] * r["m_c8"] for r in rows) == 48,
            "measured": sum(r["dim"] * r["m_c8"] for r in rows),
        },
        {
            "name": "induced-aggregate-q-48",
            "passed": sum(r["dim"] * r["m_q"] for r in rows) == 48,
            "measured": sum(r["dim"] * r["m_q"] for r in rows),
        },
    ]
    return checks


def cmd_verify(cfg: RunConfig, suite: str) -> tuple[dict, int]:
    checks = []
    if suite in ("group", "all"):
        checks.extend(_verify_group_suite(cfg))
    if suite in ("basis", "all"):
        checks.extend(_verify_basis_suite(cfg))
    if suite in ("induced", "all"):
        checks.extend(_verify_induced_suite(cfg))
    passed = all(c["passed"] for c in checks)
    payload = {
        "schema": SCHEMA,
        "suite": suite,
        "seed": cfg.seed,
        "tol": cfg.tol,
        "jmax": cfg.j_max,
        "passed": passed,
        "rows": [
            {
                "name": c["name"],
                "passed": c["passed"],
                "measured": c.get("measured"),
            }
            for c in checks
        ],
        "details": {c["name"]: c.get("detail") for c in checks if c.get("detail")},
    }
    return payload, 0 if passed else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--output", default=None, help="write to a file instead of stdout")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument(
        "--tol",
        type=float,
        default=None,
        help=f"tolerance (default {DEFAULT_TOL}, env {TOL_ENV_VAR})",
    )
    parser = argparse.ArgumentParser(
        prog="s3harm",
        description="Deck groups, multiplicities, and periodic harmonic bases "
        "for the two cubic space forms of the 3-sphere.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_group = sub.add_parser(
        "group", parents=[common], help="element tables of the symmetry and deck groups"
    )
    p_group.add_argument("--which", choices=("G", "C2", "C3"), required=True)
    p_group.add_argument("--count-only", action="store_true")

    p_mult = sub.add_parser(
        "multiplicity", parents=[common], help="periodic-harmonic counts per degree"
    )
    p_mult.add_argument("--manifold", choices=("C2", "C3"), required=True)
    p_mult.add_argument("--jmax", type=int, default=8)

    p_basis = sub.add_parser(
        "basis", parents=[common], help="symbolic orthonormal basis records"
    )
    p_basis.add_argument("--manifold", choices=("C2", "C3"), required=True)
    p_basis.add_argument("--j", type=int, required=True)

    sub.add_parser(
        "induced", parents=[common], help="census of induced irreps with deck multiplicities"
    )

    p_verify = sub.add_parser("verify", parents=[common], help="run verification suites")
    p_verify.add_argument("--suite", choices=("group", "basis", "induced", "all"), default="all")
    p_verify.add_argument("--manifold", choices=("C2", "C3"), default=None)
    p_verify.add_argument("--jmax", type=int, default=4)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    j = getattr(args, "j", None)
    j_max = getattr(args, "jmax", None)
    if j is not None:
        _check_j(parser, j, "--j")
    if j_max is not None:
        _check_j(parser, j_max, "--jmax")
    cfg = RunConfig(
        subcommand=args.subcommand,
        manifold=getattr(args, "manifold", None),
        j=j,
        j_max=j_max,
        seed=args.seed,
        tol=args.tol if args.tol is not None else _default_tol(),
        fmt=args.format,
        output=args.output,
    )
    if cfg.subcommand == "group":
        payload, code = cmd_group(cfg, args.which, args.count_only)
    elif cfg.subcommand == "multiplicity":
        payload, code = cmd_multiplicity(cfg)
    elif cfg.subcommand == "basis":
        payload, code = cmd_basis(cfg)
    elif cfg.subcommand == "induced":
        payload, code = cmd_induced(cfg)
    elif cfg.subcommand == "verify":
        payload, code = cmd_verify(cfg, args.suite)
    else:  # pragma: no cover - argparse enforces choices
        parser.error(f"unknown subcommand {cfg.subcommand}")
    _emit(payload, cfg)
    return code


if __name__ == "__main__":
    sys.exit(main())
