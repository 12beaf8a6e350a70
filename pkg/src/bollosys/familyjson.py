"""JSON forms for families, reports, outcomes, tables, and certificates.

The family schema is the lingua franca of every CLI command:

    {"n": int, "d": int, "blocks": [[int, ...], ...], "members": [[[int, ...] x d], ...]}

Elements are 1-based; "blocks" may be omitted, meaning the single block [n].
Rationals are serialized losslessly as "numerator/denominator" strings.
Member and pair indices in outputs are 0-based list positions.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .classify import ClassFlags
from .constructions import Certificate
from .core import DPartition, Family, GroundSet, InvariantError
from .search import SearchOutcome, TableCell
from .weights import InequalityReport


def frac_str(value: Fraction | int) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_frac(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvariantError(f"not a rational: {text!r}") from exc


def family_to_obj(family: Family) -> dict[str, Any]:
    obj: dict[str, Any] = {"n": family.ground.n, "d": family.d}
    default_blocks = family.ground.blocks == (family.ground.universe,)
    if not default_blocks:
        obj["blocks"] = [sorted(block) for block in family.ground.blocks]
    obj["members"] = [
        [sorted(part) for part in member.parts] for member in family.members
    ]
    return obj


def _expect(condition: bool, invariant: str) -> None:
    if not condition:
        raise InvariantError(invariant)


def family_from_obj(obj: Any) -> Family:
    _expect(isinstance(obj, dict), "family must be a JSON object")
    for key in ("n", "d", "members"):
        _expect(key in obj, f"family object is missing the {key!r} key")
    n, d, members = obj["n"], obj["d"], obj["members"]
    _expect(isinstance(n, int) and not isinstance(n, bool), "n must be an integer")
    _expect(isinstance(d, int) and not isinstance(d, bool), "d must be an integer")
    blocks_obj = obj.get("blocks")
    if blocks_obj is None:
        ground = GroundSet(n)
    else:
        _expect(
            isinstance(blocks_obj, list)
            and all(isinstance(b, list) for b in blocks_obj),
            "blocks must be a list of lists of integers",
        )
        ground = GroundSet(n, tuple(frozenset(b) for b in blocks_obj))
    _expect(isinstance(members, list), "members must be a list")
    parsed = []
    for idx, member in enumerate(members):
        _expect(
            isinstance(member, list) and len(member) == d,
            f"member {idx} must be a list of exactly d={d} parts",
        )
        for part in member:
            _expect(
                isinstance(part, list),
                f"member {idx}: each part must be a list of integers",
            )
        parsed.append(DPartition(tuple(frozenset(part) for part in member)))
    return Family(ground, tuple(parsed), d)


def load_family(path: str | Path) -> Family:
    try:
        with open(path) as handle:
            obj = json.load(handle)
    except OSError as exc:
        raise InvariantError(f"cannot read family file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvariantError(f"family file is not valid JSON: {exc}") from exc
    return family_from_obj(obj)


def flags_to_obj(flags: ClassFlags) -> dict[str, bool]:
    return flags.as_dict()


def report_to_obj(report: InequalityReport) -> dict[str, Any]:
    return {
        "theorem": report.theorem_id,
        "lhs": frac_str(report.lhs),
        "rhs": frac_str(report.rhs),
        "holds": report.holds,
        "tight": report.tight,
        "hypothesis_failed": report.hypothesis_failed,
    }


def outcome_to_obj(outcome: SearchOutcome, system_class: str) -> dict[str, Any]:
    return {
        "class": system_class,
        "value": outcome.value,
        "mode": outcome.mode,
        "exhaustive": outcome.exhaustive,
        "witness": family_to_obj(outcome.witness),
    }


def cell_to_obj(cell: TableCell) -> dict[str, Any]:
    obj: dict[str, Any] = {"d": cell.d, "s": cell.s, "value": cell.value}
    if cell.skipped:
        obj["skipped"] = True
        obj["reason"] = cell.reason
    elif cell.witness is not None:
        obj["witness"] = family_to_obj(cell.witness)
    return obj


def certificate_to_obj(certificate: Certificate) -> dict[str, Any]:
    obj: dict[str, Any] = {
        "construction": {
            "name": certificate.construction.name,
            "parameters": dict(certificate.construction.parameters),
        },
        "family": family_to_obj(certificate.family),
        "classification": flags_to_obj(certificate.flags),
        "sum": frac_str(certificate.sum_value),
        "conjectured_bound": frac_str(certificate.conjectured_bound),
        "refutes": certificate.refutes,
        "pairs_checked": certificate.pairs_checked,
    }
    if certificate.pair_witnesses is None:
        obj["pair_witnesses"] = None
        obj["pair_witnesses_omitted"] = "pair count exceeds the witness cap"
    else:
        obj["pair_witnesses"] = [
            {
                "members": [w.i, w.j],
                "forward": list(w.forward),
                "backward": list(w.backward),
            }
            for w in certificate.pair_witnesses
        ]
    return obj
