"""Command-line entry point wiring all modules together.

Commands read the family JSON schema and write JSON to stdout; ``--out``
additionally writes the JSON to a file and ``--pretty`` renders a short human
summary (or an aligned table) to stderr.  Exit codes: 0 ok, 1 hypothesis
failed, 2 bad usage, 3 invalid input, 4 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import constructions, familyjson, permoracle, search
from .classify import classify_with_witnesses
from .core import CapExceeded, InvariantError
from .weights import (
    THEOREMS,
    HypothesisError,
    blocked_inverse_sum,
    check_theorem,
    inverse_multinomial_sum,
    tuza_product_sum,
)

_EXIT_CODES = {"ok": 0, "hypothesis_failed": 1, "invalid_input": 3, "cap_exceeded": 4}


@dataclass(frozen=True)
class CommandResult:
    status: str
    payload: dict[str, Any]
    pretty: Optional[str] = None
    out: Optional[str] = None
    show_pretty: bool = False

    @property
    def exit_code(self) -> int:
        return _EXIT_CODES[self.status]


def _int_range(text: str) -> list[int]:
    """Accept '4', '1..6', or '2,3,5'."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    if "," in text:
        return [int(x) for x in text.split(",")]
    return [int(text)]


def _parse_params(text: Optional[str]) -> dict[str, int]:
    params: dict[str, int] = {}
    if not text:
        return params
    for item in text.split(","):
        if "=" not in item:
            raise InvariantError(f"parameter {item!r} is not of the form name=value")
        key, value = item.split("=", 1)
        try:
            params[key.strip()] = int(value)
        except ValueError:
            raise InvariantError(f"parameter {key!r} needs an integer value") from None
    return params


def _parse_weights(text: Optional[str]):
    if text is None:
        return None
    return [familyjson.parse_frac(part) for part in text.split(",")]


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human summary on stderr")
    common.add_argument("--out", metavar="FILE", help="also write the JSON to FILE")
    common.add_argument(
        "--threads",
        type=int,
        default=1,
        metavar="N",
        help="worker count; results are identical for any value (current "
        "implementation runs sequentially)",
    )
    common.add_argument(
        "--cap", type=int, default=None, metavar="N",
        help="override the command's enumeration/search cap",
    )

    parser = argparse.ArgumentParser(
        prog="bollosys",
        description="exact classification, bounds, constructions, search and "
        "certificates for systems of d-partitions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="five class flags for a family")
    p.add_argument("family", help="family JSON file")

    p = sub.add_parser("sum", parents=[common], help="exact weighted sums")
    p.add_argument("family")
    p.add_argument("--blocks", action="store_true", help="blocked inverse-multinomial sum")
    p.add_argument("--p", dest="weights", metavar="r1,r2,...",
                   help="product weight sum at these rationals")
    p.add_argument("--decimal", type=int, metavar="DIGITS",
                   help="also render the exact value to this many decimal digits")

    p = sub.add_parser("check", parents=[common], help="evaluate a registered inequality")
    p.add_argument("family")
    p.add_argument("--theorem", required=True, metavar="ID")
    p.add_argument("--p", dest="weights", metavar="r1,r2,...")
    p.add_argument("--force", action="store_true",
                   help="evaluate despite a failed class hypothesis")
    p.add_argument("--decimal", type=int, metavar="DIGITS",
                   help="also render lhs/rhs to this many decimal digits")

    p = sub.add_parser("construct", parents=[common], help="generate a named family")
    p.add_argument("name", choices=sorted(_CONSTRUCTORS))
    p.add_argument("--params", metavar="k=v,...", help="integer parameters")

    p = sub.add_parser("search", parents=[common], help="exact extremal family size")
    p.add_argument("--class", dest="system_class", required=True,
                   choices=search.SEARCH_CLASSES)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--mode", choices=["full-only", "general"], default="full-only")

    p = sub.add_parser("table", parents=[common], help="extremal values over a grid")
    p.add_argument("--class", dest="system_class", default="bollobas",
                   choices=search.SEARCH_CLASSES)
    p.add_argument("--d", required=True, metavar="RANGE", help="e.g. 3..5 or 4")
    p.add_argument("--s", required=True, metavar="RANGE", help="e.g. 1..10")

    p = sub.add_parser("certify", parents=[common], help="emit a counterexample certificate")
    p.add_argument("target", choices=["conj1"])
    p.add_argument("--s", type=int, required=True)

    p = sub.add_parser("lemma-check", parents=[common],
                       help="double-counting identity by brute force")
    p.add_argument("family")

    sub.add_parser("list-theorems", parents=[common], help="registered inequality ids")
    return parser


def _need(params: dict[str, int], key: str) -> int:
    try:
        return params.pop(key)
    except KeyError:
        raise InvariantError(f"missing required parameter {key!r}") from None


def _construct_lex_full(params: dict[str, int], cap: Optional[int]):
    return constructions.lex_full_family(
        _need(params, "n"), _need(params, "d"), **({"cap": cap} if cap else {})
    )


def _construct_chain(params: dict[str, int], cap: Optional[int]):
    return constructions.chain_family_d3(_need(params, "s"))


def _construct_expanded_chain(params: dict[str, int], cap: Optional[int]):
    base = constructions.chain_family_d3(_need(params, "s"))
    return constructions.type_expansion(base, **({"cap": cap} if cap else {}))


def _construct_permutation(params: dict[str, int], cap: Optional[int]):
    return constructions.permutation_family(
        _need(params, "n"), **({"cap": cap} if cap else {})
    )


def _construct_complement(params: dict[str, int], cap: Optional[int]):
    return constructions.complement_pair_family(
        _need(params, "n"), _need(params, "k"), _need(params, "d"),
        **({"cap": cap} if cap else {}),
    )


def _construct_matchbox(params: dict[str, int], cap: Optional[int]):
    sizes = []
    index = 1
    while f"a{index}" in params:
        sizes.append(params.pop(f"a{index}"))
        index += 1
    if not sizes:
        raise InvariantError("matchbox needs pocket sizes a1=..,a2=..,...")
    return constructions.matchbox_weak_family(sizes, **({"cap": cap} if cap else {}))


_CONSTRUCTORS = {
    "lex-full": _construct_lex_full,
    "chain-d3": _construct_chain,
    "expanded-chain": _construct_expanded_chain,
    "permutation": _construct_permutation,
    "complement-pair": _construct_complement,
    "matchbox": _construct_matchbox,
}


def _run_classify(args) -> CommandResult:
    family = familyjson.load_family(args.family)
    flags, violations = classify_with_witnesses(family)
    payload: dict[str, Any] = dict(flags.as_dict())
    payload["m"] = family.m
    if violations:
        payload["witness_violations"] = {
            name: list(pair) for name, pair in violations.items()
        }
    pretty = ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in flags.as_dict().items())
    return CommandResult("ok", payload, pretty)


def _decimal_str(value, digits: int) -> str:
    # presentation only; the exact value always travels as "num/den"
    if digits < 0:
        raise InvariantError("--decimal needs a non-negative digit count")
    scaled = round(Fraction(value) * 10**digits)
    text = f"{scaled:0{digits + 1}d}"
    return f"{text[:-digits]}.{text[-digits:]}" if digits else text


def _run_sum(args) -> CommandResult:
    family = familyjson.load_family(args.family)
    weights = _parse_weights(args.weights)
    if weights is not None:
        value = tuza_product_sum(family, weights)
        payload = {
            "kind": "product-weight",
            "p": [familyjson.frac_str(w) for w in weights],
            "sum": familyjson.frac_str(value),
        }
    elif args.blocks:
        value = blocked_inverse_sum(family)
        payload = {"kind": "blocked-inverse-multinomial", "sum": familyjson.frac_str(value)}
    else:
        value = inverse_multinomial_sum(family)
        payload = {"kind": "inverse-multinomial", "sum": familyjson.frac_str(value)}
    if args.decimal is not None:
        payload["sum_decimal"] = _decimal_str(value, args.decimal)
    return CommandResult("ok", payload, f"{payload['kind']}: {payload['sum']}")


def _run_check(args) -> CommandResult:
    family = familyjson.load_family(args.family)
    weights = _parse_weights(args.weights)
    report = check_theorem(family, args.theorem, p=weights, force=args.force)
    payload = familyjson.report_to_obj(report)
    if args.decimal is not None:
        payload["lhs_decimal"] = _decimal_str(report.lhs, args.decimal)
        payload["rhs_decimal"] = _decimal_str(report.rhs, args.decimal)
    status = "hypothesis_failed" if report.hypothesis_failed else "ok"
    pretty = (
        f"{report.theorem_id}: lhs {payload['lhs']} vs rhs {payload['rhs']} -> "
        f"{'holds' if report.holds else 'VIOLATED'}"
        f"{' (tight)' if report.tight else ''}"
    )
    return CommandResult(status, payload, pretty)


def _run_construct(args) -> CommandResult:
    params = _parse_params(args.params)
    family = _CONSTRUCTORS[args.name](params, args.cap)
    if params:
        raise InvariantError(f"unused parameters: {sorted(params)}")
    payload = familyjson.family_to_obj(family)
    return CommandResult("ok", payload, f"{args.name}: {family.m} members on [{family.ground.n}]")


def _run_search(args) -> CommandResult:
    kwargs: dict[str, Any] = {"mode": args.mode}
    if args.cap:
        kwargs["cap"] = args.cap
    outcome = search.search_class(args.system_class, args.d, args.s, **kwargs)
    payload = familyjson.outcome_to_obj(outcome, args.system_class)
    payload.update({"d": args.d, "s": args.s})
    return CommandResult(
        "ok", payload, f"N_{args.system_class}({args.d},{args.s}) = {outcome.value}"
    )


def _format_table(d_values, s_values, cells) -> str:
    by_key = {(c.d, c.s): c for c in cells}
    width = max(
        5, max((len(str(c.value)) for c in cells if c.value is not None), default=4) + 1
    )
    head = "d\\s" + "".join(f"{s:>{width}}" for s in s_values)
    lines = [head]
    for d in d_values:
        row = f"{d:>3}"
        for s in s_values:
            cell = by_key[(d, s)]
            row += f"{'-' if cell.skipped else cell.value:>{width}}"
        lines.append(row)
    return "\n".join(lines)


def _run_table(args) -> CommandResult:
    d_values = _int_range(args.d)
    s_values = _int_range(args.s)
    kwargs = {"cap": args.cap} if args.cap else {}
    cells = search.n_table(d_values, s_values, args.system_class, **kwargs)
    payload = {
        "class": args.system_class,
        "d_values": d_values,
        "s_values": s_values,
        "cells": [familyjson.cell_to_obj(c) for c in cells],
    }
    return CommandResult("ok", payload, _format_table(d_values, s_values, cells))


def _run_certify(args) -> CommandResult:
    kwargs = {"cap": args.cap} if args.cap else {}
    certificate = constructions.counterexample_conj1(args.s, **kwargs)
    payload = familyjson.certificate_to_obj(certificate)
    pretty = (
        f"sum {payload['sum']} > 1 on {certificate.family.m} members; "
        f"bollobas verified over {certificate.pairs_checked} pairs"
    )
    return CommandResult("ok", payload, pretty)


def _run_lemma_check(args) -> CommandResult:
    family = familyjson.load_family(args.family)
    kwargs = {"cap": args.cap} if args.cap else {}
    result = permoracle.double_count_identity(family, **kwargs)
    payload = {"lhs": result.lhs, "rhs": result.rhs, "equal": result.equal}
    return CommandResult("ok", payload, f"lhs {result.lhs} == rhs {result.rhs}: {result.equal}")


def _run_list_theorems(args) -> CommandResult:
    payload = {
        "theorems": [
            {
                "id": spec.theorem_id,
                "hypothesis": spec.hypothesis_class,
                "d": spec.d_required,
                "blocks": spec.e_required,
                "uniform_profile": spec.uniform_profile,
                "description": spec.description,
            }
            for spec in THEOREMS.values()
        ]
    }
    pretty = "\n".join(f"{t['id']:>17}  {t['description']}" for t in payload["theorems"])
    return CommandResult("ok", payload, pretty)


_HANDLERS = {
    "classify": _run_classify,
    "sum": _run_sum,
    "check": _run_check,
    "construct": _run_construct,
    "search": _run_search,
    "table": _run_table,
    "certify": _run_certify,
    "lemma-check": _run_lemma_check,
    "list-theorems": _run_list_theorems,
}


def run(argv: Sequence[str]) -> CommandResult:
    """Parse and dispatch; argparse itself exits with code 2 on bad usage."""
    args = _build_parser().parse_args(argv)
    try:
        if args.threads < 1:
            raise InvariantError("--threads must be at least 1")
        result = _HANDLERS[args.command](args)
    except HypothesisError as exc:
        result = CommandResult("hypothesis_failed", {"error": str(exc)})
    except CapExceeded as exc:
        result = CommandResult("cap_exceeded", {"error": str(exc)})
    except (InvariantError, ValueError) as exc:
        result = CommandResult("invalid_input", {"error": str(exc)})
    return CommandResult(
        result.status, result.payload, result.pretty, args.out, args.pretty
    )


def render(result: CommandResult) -> str:
    body = dict(result.payload)
    if result.status != "ok":
        body = {"status": result.status, **body}
    return json.dumps(body, indent=2)


def main(argv: Optional[Sequence[str]] = None) -> None:
    result = run(sys.argv[1:] if argv is None else list(argv))
    text = render(result)
    print(text)
    if result.out:
        with open(result.out, "w") as handle:
            handle.write(text + "\n")
    if result.show_pretty and result.pretty:
        print(result.pretty, file=sys.stderr)
    sys.exit(result.exit_code)
