"""Command-line interface.

Subcommands:

- analyze: full report for one datum file (genus data, polarization,
  eigenspace profile, speciality verdict, optional char-p section).
- search: stream a shape range through the classifier, CSV or JSON.
- verify: char-p checks for one datum (ordinary point scan, product and
  scaled-row identity outcomes).
- hw-dump: exact Hasse-Witt block of one character as text.

Exit codes: 0 success, 2 validation/classification rejection, 3 malformed
input or bad prime, 4 resource cap exceeded (partial output was written).

Caps may also come from the PRYM_ATLAS_CAPS environment variable, a JSON
object with any of the keys "max_count", "ext_cap", "max_candidates";
explicit flags win over the environment, which wins over defaults.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass
from typing import Sequence

from . import hasse_witt as hw
from .covers import (
    CoverMatrix,
    PrymDatum,
    character_representatives,
    datum_from_dict,
    datum_to_dict,
    enumerate_data,
    group_elements,
    is_irreducible,
    local_monodromy_orders,
    validate,
    vneg,
)
from .errors import (
    CapExceededError,
    DomainError,
    PrymAtlasError,
    ReducibleMatrixError,
)
from .hodge import (
    eigen_dim,
    eigenspace_profile,
    prym_dimension,
    polarization_type,
    quotient_genus,
    genus_total,
)
from .shimura import classify

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_MALFORMED = 3
EXIT_CAP = 4

ENV_CAPS = "PRYM_ATLAS_CAPS"

CSV_COLUMNS = (
    "N",
    "m",
    "s",
    "rows_hash",
    "H_order",
    "genus_cover",
    "genus_quotient",
    "prym_dim",
    "dim_P_G",
    "dim_Pf_lower",
    "verdict",
    "flags",
)


@dataclass
class RunConfig:
    max_count: int | None = None
    ext_cap: int = 2
    max_candidates: int = 10**6


def _env_caps() -> dict:
    raw = os.environ.get(ENV_CAPS)
    if not raw:
        return {}
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise DomainError(f"malformed {ENV_CAPS}: {e}") from None
    if not isinstance(data, dict):
        raise DomainError(f"{ENV_CAPS} must hold a JSON object")
    allowed = {"max_count", "ext_cap", "max_candidates"}
    bad = set(data) - allowed
    if bad:
        raise DomainError(f"unknown keys in {ENV_CAPS}: {sorted(bad)}")
    return data


def _config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    env = _env_caps()
    for key in ("max_count", "ext_cap", "max_candidates"):
        if key in env:
            setattr(cfg, key, int(env[key]))
        flag = getattr(args, key, None)
        if flag is not None:
            setattr(cfg, key, flag)
    return cfg


def _parse_range(text: str) -> tuple[int, ...]:
    """`a..b` (inclusive) or a single integer."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        a, b = int(lo), int(hi)
        if b < a:
            raise ValueError(f"empty range {text!r}")
        return tuple(range(a, b + 1))
    return (int(text),)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_datum(path: str, allow_trivial_h: bool) -> PrymDatum:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return datum_from_dict(data, allow_trivial_h=allow_trivial_h)


def rows_hash(matrix: CoverMatrix) -> str:
    """Stable short fingerprint of (N, rows) for table rows."""
    blob = json.dumps({"N": matrix.N, "rows": [list(r) for r in matrix.rows]})
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


def _resolve_prime(matrix: CoverMatrix, prime: str) -> int:
    if prime == "auto":
        return hw.choose_prime(matrix.N)
    p = int(prime)
    hw.check_prime(matrix.N, p)
    return p


def _identity_checks(matrix: CoverMatrix, p: int) -> list[dict]:
    """Deterministic sweep of the two identity families at prime p."""
    N, s = matrix.N, matrix.s
    reps = character_representatives(matrix)
    seen: set = set()
    product_classes = []
    scaled_classes = []
    for n in reps:
        if not any(n) or n in seen:
            continue
        neg = vneg(n, N)
        seen.add(n)
        seen.add(neg)
        dn, dneg = eigen_dim(matrix, n), eigen_dim(matrix, neg)
        if (dn, dneg) == (1, 1):
            product_classes.append(n)
        if {dn, dneg} == {1, s - 3} and s >= 4:
            scaled_classes.append(n)
    checks = []
    for idx, a in enumerate(product_classes):
        for a2 in product_classes[idx + 1 :]:
            checks.append(
                {
                    "kind": "product",
                    "a": list(a),
                    "b": list(a2),
                    "holds": hw.product_identity_holds(matrix, a, a2, p),
                }
            )
    for idx, n in enumerate(scaled_classes):
        for n2 in scaled_classes[idx + 1 :]:
            checks.append(
                {
                    "kind": "scaled-row",
                    "a": list(n),
                    "b": list(n2),
                    "holds": hw.scaled_row_identity_holds(matrix, n, n2, p),
                }
            )
    return checks


def _char_p_section(datum: PrymDatum, p: int, cfg: RunConfig) -> dict:
    found = hw.find_ordinary_point(
        datum, p, max_ext_degree=cfg.ext_cap, max_candidates=cfg.max_candidates
    )
    section: dict = {
        "p": p,
        "q": (p - 1) // datum.matrix.N,
        "max_ext_degree": cfg.ext_cap,
        "ordinary_point": None,
    }
    if found is not None:
        section["ordinary_point"] = {
            "point": list(found.point),
            "ext_degree": found.ext_degree,
            "field_order": found.field_order,
            "modulus": found.modulus,
        }
    section["identity_checks"] = _identity_checks(datum.matrix, p)
    return section


def _report_json(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def cmd_analyze(args: argparse.Namespace) -> int:
    cfg = _config(args)
    datum = _load_datum(args.input, args.allow_trivial_H)
    matrix = datum.matrix
    report: dict = {"datum": datum_to_dict(datum)}
    vr = validate(matrix)
    report["validation"] = {
        "ok": vr.ok,
        "violations": [list(v) for v in vr.violations],
    }
    if not vr.ok:
        _emit(_report_json(report), args.out)
        return EXIT_INVALID
    report["group"] = {
        "order": len(group_elements(matrix)),
        "irreducible": is_irreducible(matrix),
        "monodromy_orders": list(local_monodromy_orders(matrix)),
        "rows_hash": rows_hash(matrix),
    }
    report["genus"] = {
        "cover": genus_total(matrix),
        "quotient": quotient_genus(datum),
        "prym_dimension": prym_dimension(datum),
    }
    report["polarization_type"] = list(polarization_type(datum))
    try:
        verdict = classify(datum)
    except ReducibleMatrixError as e:
        report["error"] = str(e)
        _emit(_report_json(report), args.out)
        return EXIT_INVALID
    report["profile"] = eigenspace_profile(datum).to_json_list()
    report["verdict"] = verdict.to_json_dict()
    if args.prime is not None:
        p = _resolve_prime(matrix, args.prime)
        report["char_p"] = _char_p_section(datum, p, cfg)
    _emit(_report_json(report), args.out)
    return EXIT_OK


def _search_rows(args: argparse.Namespace, cfg: RunConfig) -> tuple[list[dict], bool]:
    rows: list[dict] = []
    capped = False
    stream = enumerate_data(
        _parse_range(args.N),
        _parse_range(args.m),
        _parse_range(args.s),
        require_irreducible=True,
        h_mode=args.H_mode,
        allow_trivial_h=args.allow_trivial_H,
        dedupe_permutations=args.dedupe_permutations,
        max_count=cfg.max_count,
    )
    try:
        for datum in stream:
            verdict = classify(datum)
            flags = []
            if verdict.assumes_condition_star:
                flags.append("star")
            if verdict.dim_P_G < verdict.s_minus_3:
                flags.append("warn-dim")
            rows.append(
                {
                    "N": datum.matrix.N,
                    "m": datum.matrix.m,
                    "s": datum.matrix.s,
                    "rows_hash": rows_hash(datum.matrix),
                    "H_order": datum.h_order,
                    "genus_cover": genus_total(datum.matrix),
                    "genus_quotient": quotient_genus(datum),
                    "prym_dim": prym_dimension(datum),
                    "dim_P_G": verdict.dim_P_G,
                    "dim_Pf_lower": verdict.dim_Pf_lower,
                    "verdict": verdict.verdict,
                    "flags": ";".join(flags),
                }
            )
    except CapExceededError:
        capped = True
    return rows, capped


def _verdict_counts(rows: list[dict]) -> dict[str, int]:
    counts: dict[str, int] = {}
    for r in rows:
        counts[r["verdict"]] = counts.get(r["verdict"], 0) + 1
    return dict(sorted(counts.items()))


def _format_search(rows: list[dict], fmt: str) -> str:
    counts = _verdict_counts(rows)
    if fmt == "csv":
        lines = [",".join(CSV_COLUMNS)]
        for r in rows:
            lines.append(",".join(str(r[c]) for c in CSV_COLUMNS))
        lines.append(f"# total={len(rows)}")
        lines.append(
            "# verdicts: " + " ".join(f"{k}={v}" for k, v in counts.items())
        )
        return "\n".join(lines) + "\n"
    obj = {"rows": rows, "summary": {"total": len(rows), "verdicts": counts}}
    return json.dumps(obj, indent=2) + "\n"


def cmd_search(args: argparse.Namespace) -> int:
    cfg = _config(args)
    rows, capped = _search_rows(args, cfg)
    _emit(_format_search(rows, args.format), args.out)
    if capped:
        sys.stderr.write(
            f"warning: enumeration cap {cfg.max_count} hit; output is partial\n"
        )
        return EXIT_CAP
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = _config(args)
    datum = _load_datum(args.input, args.allow_trivial_H)
    matrix = datum.matrix
    report: dict = {"datum": datum_to_dict(datum)}
    vr = validate(matrix)
    report["validation"] = {
        "ok": vr.ok,
        "violations": [list(v) for v in vr.violations],
    }
    if not vr.ok:
        _emit(_report_json(report), args.out)
        return EXIT_INVALID
    p = _resolve_prime(matrix, args.prime)
    section = _char_p_section(datum, p, cfg)
    report["char_p"] = section
    if not section["identity_checks"]:
        report["note"] = "no eligible character pairs for identity checks"
    _emit(_report_json(report), args.out)
    return EXIT_OK


def cmd_hw_dump(args: argparse.Namespace) -> int:
    datum = _load_datum(args.input, args.allow_trivial_H)
    matrix = datum.matrix
    vr = validate(matrix)
    if not vr.ok:
        for rule, detail in vr.violations:
            sys.stderr.write(f"invalid datum [{rule}]: {detail}\n")
        return EXIT_INVALID
    n = tuple(int(x) % matrix.N for x in args.char.split(","))
    if len(n) != matrix.m:
        sys.stderr.write(f"character needs {matrix.m} coordinates\n")
        return EXIT_MALFORMED
    p = _resolve_prime(matrix, args.prime)
    if eigen_dim(matrix, n) < 1:
        sys.stderr.write(f"character {n} has a zero-dimensional eigenspace\n")
        return EXIT_INVALID
    _emit(hw.dump_matrix(hw.hasse_witt_matrix(matrix, n, p)), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prym-atlas",
        description="Abelian covers of the line: Prym varieties, speciality, Hasse-Witt",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--out", default=None, help="write output to this file")
        sp.add_argument(
            "--allow-trivial-H",
            action="store_true",
            help="accept H = {0} (cover equals quotient)",
        )

    sp = sub.add_parser("analyze", help="full report for one datum file")
    sp.add_argument("--input", required=True, help="datum JSON file")
    sp.add_argument("--prime", default=None, help="'auto' or a prime = 1 mod N; adds char-p section")
    sp.add_argument("--ext-cap", dest="ext_cap", type=int, default=None, help="max extension degree for the ordinary-point scan")
    sp.add_argument("--max-candidates", dest="max_candidates", type=int, default=None, help=argparse.SUPPRESS)
    add_common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("search", help="classify a whole shape range")
    sp.add_argument("--N", required=True, help="modulus or range a..b")
    sp.add_argument("--m", required=True, help="row count or range a..b")
    sp.add_argument("--s", required=True, help="branch count or range a..b")
    sp.add_argument("--H-mode", dest="H_mode", default="full", choices=["full", "all-subgroups", "index-2"])
    sp.add_argument("--format", default="csv", choices=["csv", "json"])
    sp.add_argument("--dedupe-permutations", action="store_true", help="one matrix per column-permutation class")
    sp.add_argument("--max-count", dest="max_count", type=int, default=None, help="enumeration cap; exceeding it exits 4 with partial output")
    add_common(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("verify", help="char-p checks for one datum")
    sp.add_argument("--input", required=True, help="datum JSON file")
    sp.add_argument("--prime", default="auto", help="'auto' or a prime = 1 mod N")
    sp.add_argument("--ext-cap", dest="ext_cap", type=int, default=None)
    sp.add_argument("--max-candidates", dest="max_candidates", type=int, default=None, help=argparse.SUPPRESS)
    add_common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("hw-dump", help="exact Hasse-Witt block for one character")
    sp.add_argument("--input", required=True, help="datum JSON file")
    sp.add_argument("--char", required=True, help="character coordinates, comma-separated")
    sp.add_argument("--prime", default="auto", help="'auto' or a prime = 1 mod N")
    add_common(sp)
    sp.set_defaults(func=cmd_hw_dump)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (json.JSONDecodeError, FileNotFoundError) as e:
        sys.stderr.write(f"input error: {e}\n")
        return EXIT_MALFORMED
    except DomainError as e:
        sys.stderr.write(f"domain error: {e}\n")
        return EXIT_MALFORMED
    except CapExceededError as e:
        sys.stderr.write(f"cap exceeded: {e}\n")
        return EXIT_CAP
    except (ValueError, PrymAtlasError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
