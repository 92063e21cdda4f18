"""Command-line front end: parse path/moment files, run computations at a
chosen truncation order, and emit deterministic JSON (or plain-text) reports.

Exit codes: 0 success, 1 precondition violation, 2 malformed input (with a
position-annotated message on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import ParseError
from .lie import abel_gen_count, bch, free_lie_dim, lyndon_basis
from .operators import dl_series_to_text, gamma_of_bracket, psi
from .paths import (
    distance,
    moment_eval,
    moment_from_json,
    monodromy,
    path_from_json,
    triviality_order,
)
from .returnmap import (
    is_center,
    ode_return_map,
    return_map,
    return_series_to_json,
    return_series_to_text,
)
from .scalars import format_scalar, parse_scalar
from .series import FreeSeries, enumerate_words, series_log, series_to_text, word_sort_key
from .structure import (
    DiagonalLieVector,
    group_factorize,
    lie_decompose,
    pl_center_element,
)


def _load_json(path: str):
    try:
        with open(path) as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise ParseError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
            exc.pos,
        ) from None


def _load_path(path: str):
    return path_from_json(_load_json(path))


def _series_payload(f: FreeSeries) -> dict:
    items = sorted(f.coeffs.items(), key=lambda kv: word_sort_key(kv[0]))
    return {
        "text": series_to_text(f),
        "coefficients": [[",".join(map(str, w)), format_scalar(c)] for w, c in items],
    }


def _parse_scalar_list(text: str) -> list:
    return [parse_scalar(part.strip()) for part in text.split(",")]


def _parse_word(text: str) -> tuple:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts or not all(p.isdigit() and int(p) >= 1 for p in parts):
        raise ParseError(f"bad word {text!r}; expected comma-separated positive integers")
    return tuple(int(p) for p in parts)


# ---------------------------------------------------------------------------
# Subcommand handlers: each returns (inputs, result).


def _cmd_integrals(args):
    a = _load_path(args.input)
    sig = monodromy(a, args.order)
    rows = []
    for n in range(1, args.order + 1):
        for w in enumerate_words(n):
            rows.append([",".join(map(str, w)), format_scalar(sig.coeff(w))])
    return {"path": args.input}, {"integrals": rows}


def _cmd_monodromy(args):
    a = _load_path(args.input)
    return {"path": args.input}, {"monodromy": _series_payload(monodromy(a, args.order))}


def _cmd_center(args):
    a = _load_path(args.input)
    report = is_center(a, args.order)
    result = {
        "verdict": report.verdict,
        "center_to_order": report.center_to_order,
        "first_failing_degree": report.first_failing_degree,
    }
    return {"path": args.input}, result


def _cmd_universal(args):
    a = _load_path(args.input)
    order = triviality_order(a, args.order)
    return {"path": args.input}, {
        "triviality_order": order,
        "universal_to_order": order > args.order,
    }


def _cmd_return_map(args):
    a = _load_path(args.input)
    rm = return_map(monodromy(a, args.order))
    return {"path": args.input}, {
        "return_map": return_series_to_text(rm),
        "coefficients": return_series_to_json(rm),
    }


def _cmd_oracle_compare(args):
    a = _load_path(args.input)
    via_signature = return_map(monodromy(a, args.order))
    via_ode = ode_return_map(a, args.order)
    return {"path": args.input}, {
        "equal": via_signature == via_ode,
        "via_signature": return_series_to_json(via_signature),
        "via_ode": return_series_to_json(via_ode),
    }


def _cmd_moments(args):
    a = _load_path(args.input)
    m = moment_from_json(_load_json(args.moment))
    value = moment_eval(a, m)
    return {"path": args.input, "moment": args.moment}, {
        "value": format_scalar(value),
        "order": m.order,
        "degree": m.degree,
    }


def _cmd_metric(args):
    a = _load_path(args.input)
    g = monodromy(a, args.order)
    if args.other:
        h = monodromy(_load_path(args.other), args.order)
    else:
        h = FreeSeries.unit(args.order)
    value = distance(g, h)
    return {"path": args.input, "other": args.other}, {
        "distance": f"{value.numerator}/{value.denominator}",
        "tail_bound": f"1/{2 ** (args.order + 1)}",
    }


def _cmd_lie(args):
    if args.lie_command == "dims":
        return {"n": args.n}, {"dim": free_lie_dim(args.n)}
    if args.lie_command == "abel-count":
        return {"n": args.n}, {"count": abel_gen_count(args.n)}
    if args.lie_command == "lyndon":
        words = lyndon_basis(args.max_index, args.weight)
        return (
            {"max_index": args.max_index, "weight": args.weight},
            {"count": len(words), "words": [",".join(map(str, w)) for w in words]},
        )
    if args.lie_command == "bch":
        a = DiagonalLieVector(args.order, _pad(_parse_scalar_list(args.a), args.order))
        b = DiagonalLieVector(args.order, _pad(_parse_scalar_list(args.b), args.order))
        result = bch(a.to_series(), b.to_series())
        return {"a": args.a, "b": args.b}, {"log_product": _series_payload(result)}
    raise ParseError(f"unknown lie subcommand {args.lie_command!r}")


def _pad(values: list, order: int) -> list:
    from .scalars import GaussianRational

    if len(values) > order:
        raise ValueError(f"got {len(values)} coefficients but order is {order}")
    return values + [GaussianRational(0)] * (order - len(values))


def _cmd_decompose(args):
    a = _load_path(args.input)
    h = series_log(monodromy(a, args.order))
    n_part, abel_part = lie_decompose(h)
    return {"path": args.input}, {
        "log": _series_payload(h),
        "kernel_part": _series_payload(n_part),
        "two_letter_part": _series_payload(abel_part),
    }


def _cmd_factorize(args):
    a = _load_path(args.input)
    g = monodromy(a, args.order)
    c, b = group_factorize(g)
    return {"path": args.input}, {
        "center_factor": _series_payload(c),
        "two_letter_factor": _series_payload(b),
        "reassembles": (c * b) == g,
    }


def _cmd_pl_center(args):
    a = DiagonalLieVector(args.order, _pad(_parse_scalar_list(args.a), args.order))
    b = DiagonalLieVector(args.order, _pad(_parse_scalar_list(args.b), args.order))
    element = pl_center_element(a, b)
    rm = return_map(element)
    return {"a": args.a, "b": args.b}, {
        "element": _series_payload(element),
        "operator_image_trivial": all(s.is_zero() for s in psi(element).slices[1:]),
        "return_map": return_series_to_text(rm),
        "is_center_element": rm.is_identity(),
    }


def _cmd_gamma(args):
    word = _parse_word(args.word)
    report = gamma_of_bracket(word)
    return {"word": args.word}, {
        "bracket_recursion": format_scalar(report.bracket_value),
        "product_formula": format_scalar(report.product_value),
        "agree": report.agree,
    }


_HANDLERS = {
    "integrals": _cmd_integrals,
    "monodromy": _cmd_monodromy,
    "center": _cmd_center,
    "universal": _cmd_universal,
    "return-map": _cmd_return_map,
    "oracle-compare": _cmd_oracle_compare,
    "moments": _cmd_moments,
    "metric": _cmd_metric,
    "lie": _cmd_lie,
    "decompose": _cmd_decompose,
    "factorize": _cmd_factorize,
    "pl-center": _cmd_pl_center,
    "gamma": _cmd_gamma,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pathcenters",
        description="Exact center detection for v' = sum a_i(x) v^(i+1).",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=8, help="truncation order (default 8)")
    common.add_argument(
        "--format", choices=("json", "text"), default="json", help="report format"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(name, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--input", required=True, help="path file (JSON)")
        return p

    with_input("integrals", "all iterated integrals up to the order")
    with_input("monodromy", "signature series of the path")
    with_input("center", "center verdict and first failing degree")
    with_input("universal", "triviality (universal-center) order")
    with_input("return-map", "first return map coefficients")
    with_input("oracle-compare", "return map vs independent ODE solution")
    moments = with_input("moments", "evaluate a moment on the path")
    moments.add_argument("--moment", required=True, help="moment file (JSON)")
    metric = with_input("metric", "metric distance between two signatures")
    metric.add_argument("--other", help="second path file (default: unit)")
    with_input("decompose", "kernel/two-letter split of the log signature")
    with_input("factorize", "semidirect factorization of the signature")

    lie = sub.add_parser("lie", parents=[common], help="free Lie algebra utilities")
    lie_sub = lie.add_subparsers(dest="lie_command", required=True)
    dims = lie_sub.add_parser("dims", parents=[common])
    dims.add_argument("--n", type=int, required=True)
    count = lie_sub.add_parser("abel-count", parents=[common])
    count.add_argument("--n", type=int, required=True)
    lyndon = lie_sub.add_parser("lyndon", parents=[common])
    lyndon.add_argument("--max-index", type=int, required=True)
    lyndon.add_argument("--weight", type=int, required=True)
    bch_cmd = lie_sub.add_parser("bch", parents=[common])
    bch_cmd.add_argument("--a", required=True, help="comma-separated diagonal coefficients")
    bch_cmd.add_argument("--b", required=True)

    pl = sub.add_parser("pl-center", parents=[common], help="piecewise-linear center element")
    pl.add_argument("--a", required=True, help="comma-separated diagonal coefficients")
    pl.add_argument("--b", required=True)

    gamma = sub.add_parser("gamma", parents=[common], help="bracket scalar, both conventions")
    gamma.add_argument("--word", required=True, help="comma-separated letter indices")

    return parser


def _render_text(report: dict) -> str:
    lines = [f"command: {report['command']}", f"order: {report['order']}"]
    for key, value in report["result"].items():
        if isinstance(value, dict) and "text" in value:
            lines.append(f"{key}: {value['text']}")
        elif isinstance(value, list):
            lines.append(f"{key}:")
            for row in value:
                lines.append("  " + (" = ".join(map(str, row)) if isinstance(row, list) else str(row)))
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    command = args.command
    if command == "lie":
        command = f"lie {args.lie_command}"
    try:
        inputs, result = _HANDLERS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report = {
        "command": command,
        "order": args.order,
        "inputs": inputs,
        "result": result,
        "exact": True,
    }
    if args.format == "json":
        print(json.dumps(report, sort_keys=True))
    else:
        print(_render_text(report))
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
