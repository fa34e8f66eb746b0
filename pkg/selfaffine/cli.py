# Copyright 2024 selfaffine developers.
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance with the License. You may obtain a copy of the License at:http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software distributed under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the License for the specific language governing permissions and limitations under the License.

"""Command line front door.

Every command prints one JSON envelope {command, inputs, result, version, timing_ms}
on stdout, except the CSV modes of `eval` and `dim --sweep`. Errors go to stderr as
JSON objects carrying a stable `code`; the exit code is 0 on success, 2 for usage
errors, 3 for domain and precondition errors and 4 when a resource cap is hit.
"""

import argparse
import csv
import io
import json
import logging
import sys
import time
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from mpmath import mp, mpf
from opentelemetry import trace

from selfaffine import beta, classifier, dimension, numerics, okamoto, ternary
from selfaffine.configurator import SelfAffineConfigurator
from selfaffine.sa_codes import SelfAffineExitCode
from selfaffine.sa_config import SelfAffineConfig
from selfaffine.sa_constants import (
    INTL_SA_CSV_HEADER_EVAL,
    INTL_SA_CSV_HEADER_SWEEP,
    INTL_SA_SPAN_PREFIX,
    INTL_SA_SUBCOMMANDS,
    INTL_SA_TELEMETRY_EXPORTERS,
    INTL_SA_TRACER_NAME,
)
from selfaffine.sa_errors import DomainError, SelfAffineError, UsageError
from selfaffine.version import __version__

logger = logging.getLogger(__name__)

# library operation -> the one subcommand that reaches it
OPERATION_REGISTRY: Dict[str, str] = {
    "expand": "eval",
    "parse_digits": "eval",
    "format_digits": "eval",
    "ones_count_prefix": "eval",
    "total_ones": "eval",
    "run_length": "eval",
    "digit_one_frequency": "eval",
    "in_cantor": "eval",
    "fn_eval": "eval",
    "fn_slope_right": "eval",
    "eval": "eval",
    "eval_series": "eval",
    "cantor_value": "eval",
    "sample_graph": "graph",
    "slopes": "graph",
    "classify": "classify",
    "side_condition": "classify",
    "classification_report": "classify",
    "endpoint_behavior": "classify",
    "tail_weight": "classify",
    "limsup_tail_weight": "classify",
    "main_condition_term": "classify",
    "stream_tail_weights": "classify",
    "nested_block_digits": "classify",
    "eidswick_ratios": "classify",
    "critical_parameter": "critical",
    "constants": "constants",
    "bisect": "constants",
    "phi": "dim",
    "entropy_h": "dim",
    "d_of_a": "dim",
    "dim_D0": "dim",
    "dim_Dinf": "dim",
    "dim_Dinf_closed": "dim",
    "dim_Dinf_bounds": "dim",
    "dim_N": "dim",
    "box_dimension_graph": "dim",
    "dim_frequency_set": "dim",
    "dim_Qk": "dim",
    "dim_sweep": "dim",
    "dinf_membership_regime": "dim",
    "greedy_expansion_of_one": "beta",
    "greedy_expansion": "beta",
    "lazy_expansion": "beta",
    "is_unique_expansion": "beta",
    "thue_morse": "beta",
    "komornik_loreti": "beta",
    "a_hat_n": "beta",
    "multinacci": "beta",
    "quasi_greedy_multinacci": "beta",
    "countable_regime_tails": "beta",
    "pi_lambda": "beta",
    "run_limited_count": "beta",
    "count_admissible_words": "beta",
    "admissible_words": "beta",
}

DIM_SETS = [
    "D0",
    "Dinf",
    "N",
    "graph-box",
    "phi",
    "d",
    "h",
    "freq",
    "Qk",
    "regime",
]

BETA_ACTIONS = [
    "greedy-one",
    "expand",
    "unique",
    "thue-morse",
    "komornik-loreti",
    "a-hat-n",
    "multinacci",
    "tails",
    "pi",
    "qk-count",
    "count",
]


class _Parser(argparse.ArgumentParser):
    """ArgumentParser raising UsageError instead of exiting, so usage errors are JSON too"""

    def error(self, message):
        raise UsageError(message)


def _count(value) -> object:
    return "inf" if value == ternary.INFINITY else value


def _nstr(value: Optional[mpf]) -> Optional[str]:
    return mp.nstr(value, 15) if value is not None else None


def _fraction_pair(value: Fraction) -> dict:
    return {"value": str(value), "value_decimal": float(value)}


def _default(value, fallback):
    return fallback if value is None else value


def _config_fraction(config: SelfAffineConfig, key: str) -> Fraction:
    # config floats are read through their shortest repr, e.g. 1e-12 as 1/10**12
    return Fraction(str(config[key]))


def _tol(args: argparse.Namespace, config: SelfAffineConfig) -> Fraction:
    if args.tol is None:
        return _config_fraction(config, "bisect_tol")
    return numerics.to_fraction(args.tol, "tol")


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command}: missing {', '.join(missing)}")


def _point(args: argparse.Namespace) -> ternary.EventuallyPeriodicTernary:
    if args.digits:
        return ternary.parse_digits(args.x)
    return ternary.to_expansion(args.x)


class _Command:
    """Result of one handler: inputs echo, JSON payload or raw text."""

    def __init__(self, inputs: dict, result=None, text: Optional[str] = None):
        self.inputs = inputs
        self.result = result
        self.text = text


def _cmd_eval(args: argparse.Namespace, config: SelfAffineConfig) -> _Command:
    param = okamoto.Param(numerics.to_fraction(args.a, "a"))
    t = _point(args)
    inputs = {"a": str(param.a), "x": ternary.format_digits(t)}
    if args.tol is not None:
        mode = okamoto.Approx(args.tol, config["approx_dps"], config["series_max_terms"])
        inputs["tol"] = str(mode.tol)
        approx = okamoto.eval(param, t, mode)
        result = {"value": approx.as_dict()}
        value_text = mp.nstr(approx.value, 20)
    else:
        value = okamoto.eval(param, t)
        result = _fraction_pair(value)
        value_text = str(value)
    result.update(
        {
            "x_value": str(t.value()),
            "total_ones": _count(ternary.total_ones(t)),
            "one_frequency": str(ternary.digit_one_frequency(t)),
            "in_cantor": ternary.in_cantor(t),
        }
    )
    if result["in_cantor"]:
        result["cantor_value"] = str(okamoto.cantor_value(t))
    if args.n is not None:
        inputs["n"] = args.n
        partial, bound = okamoto.eval_series(param, t, args.n)
        result["depth"] = {
            "digits": t.digits(args.n),
            "ones": ternary.ones_count_prefix(t, args.n),
            "fn": str(okamoto.fn_eval(param, args.n, t.value())),
            "slope_right": None if t.is_one() else str(okamoto.fn_slope_right(param, args.n, t)),
            "series_partial": str(partial),
            "series_bound": str(bound),
            "run_lengths": {d: _count(ternary.run_length(t, args.n, d)) for d in "012"},
        }
    if args.csv:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(INTL_SA_CSV_HEADER_EVAL)
        writer.writerow([inputs["a"], inputs["x"], value_text])
        return _Command(inputs, text=buf.getvalue())
    return _Command(inputs, result)


def _cmd_graph(args: argparse.Namespace, config: SelfAffineConfig) -> _Command:
    param = okamoto.Param(numerics.to_fraction(args.a, "a"))
    fmt = "json" if args.json else "csv"
    inputs = {"a": str(param.a), "depth": args.depth, "out": args.out, "format": fmt}
    sample = okamoto.sample_graph(param, args.depth, config["graph_depth_cap"])
    sample.write(args.out, fmt, exact=not args.decimal)
    result = {
        "points": len(sample.points),
        "out": args.out,
        "format": fmt,
        "exact": not args.decimal,
    }
    if args.slopes:
        result["slopes"] = [
            str(s) for s in okamoto.slopes(param, args.depth, config["graph_depth_cap"])
        ]
    return _Command(inputs, result)


def _nested_block_probe(a: Fraction, blocks: int) -> dict:
    digits = ternary.nested_block_digits(blocks)
    weights = classifier.stream_tail_weights(a, digits, 2)
    starts, offset = [], 0
    for n in range(1, blocks + 1):
        # the "22" of block n starts one digit after its leading 0
        starts.append(offset + 1)
        offset += 3 + 2 * n
    limit = a + a * a / (1 - a * a)
    return {
        "blocks": blocks,
        "length": len(digits),
        "block_weights": [float(weights[n]) for n in starts],
        "limsup": _fraction_pair(limit),
        "exceeds_one": limit >= 1,
    }


def _cmd_classify(args: argparse.Namespace, config: SelfAffineConfig) -> _Command:
    a = numerics.to_fraction(args.a, "a")
    if args.eps is not None:
        # an explicit eps marks a as known only to within eps
        param = okamoto.Param(a, args.eps, exact=False)
    else:
        param = okamoto.Param(a, _config_fraction(config, "eps"))
    inputs = {"a": str(param.a), "exact": param.exact}
    if not param.exact:
        inputs["eps"] = str(param.eps)
    if args.nested_blocks is not None:
        inputs["nested_blocks"] = args.nested_blocks
        return _Command(inputs, _nested_block_probe(param.a, args.nested_blocks))
    _require(args, "x")
    t = _point(args)
    inputs["x"] = ternary.format_digits(t)
    result = classifier.classification_report(param, t, config["approx_dps"])
    result["limsup_tail_weights"] = {
        d: str(classifier.limsup_tail_weight(param, t, d)) for d in "02"
    }
    if args.n is not None:
        inputs["n"] = args.n
        result["tail_weights"] = {
            d: str(classifier.tail_weight(param, t, args.n, d)) for d in "02"
        }
        result["main_condition_terms"] = {
            d: str(classifier.main_condition_term(param, t, args.n, d)) for d in "02"
        }
    if args.eidswick is not None:
        inputs["eidswick"] = args.eidswick
        result["eidswick_ratios"] = [
            str(r) for r in classifier.eidswick_ratios(t, args.eidswick, 0)
        ]
    return _Command(inputs, result)


def _cmd_critical(args: argparse.Namespace, config: SelfAffineConfig) -> _Command:
    t = _point(args)
    tol = _tol(args, config)
    inputs = {"x": ternary.format_digits(t), "tol": str(tol)}
    return _Command(inputs, classifier.critical_parameter(t, tol).as_dict())


def _cmd_constants(args: argparse.Namespace, config: SelfAffineConfig) -> _Command:
    tol = _tol(args, config)
    table = numerics.constants(tol)
    return _Command(
        {"tol": str(tol)}, {name: c.as_dict() for name, c in table.items()}
    )


def _sweep(args: argparse.Namespace, config: SelfAffineConfig) -> _Command:
    try:
        lo, hi, step = args.sweep.split(":")
    except ValueError as ex:
        raise UsageError("--sweep takes lo:hi:step") from ex
    rows = dimension.dim_sweep(
        args.set, lo, hi, step, config["sweep_workers"], config["approx_dps"]
    )
    inputs = {"set": args.set, "sweep": args.sweep}
    if args.json:
        return _Command(
            inputs, {"rows": [[float(a), _nstr(v)] for a, v in rows]}
        )
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(INTL_SA_CSV_HEADER_SWEEP)
    writer.writerows([repr(float(a)), _nstr(v) or ""] for a, v in rows)
    return _Command(inputs, text=buf.getvalue())


def _cmd_dim(args: argparse.Namespace, config: SelfAffineConfig) -> _Command:
    if args.sweep is not None:
        return _sweep(args, config)
    dps = config["approx_dps"]
    inputs: dict = {"set": args.set}
    if args.set in ("h", "freq"):
        _require(args, "p")
        p = numerics.to_fraction(args.p, "p")
        inputs["p"] = str(p)
        if args.set == "h":
            value = dimension.entropy_h(p, dps)
        else:
            _require(args, "family")
            inputs["family"] = args.family
            q = None
            if args.q is not None:
                q = numerics.to_fraction(args.q, "q")
                inputs["q"] = str(q)
            value = dimension.dim_frequency_set(p, args.family, q, dps)
        return _Command(inputs, dimension.DimEstimate.closed_form(value).as_dict())
    if args.set == "Qk":
        _require(args, "k")
        inputs["k"] = args.k
        value = dimension.dim_Qk(args.k, dps)
        return _Command(inputs, dimension.DimEstimate.closed_form(value).as_dict())

    _require(args, "a")
    param = okamoto.Param(numerics.to_fraction(args.a, "a"), _config_fraction(config, "eps"))
    inputs["a"] = str(param.a)
    result: dict = {"a": inputs["a"], "set": args.set}
    if args.set == "regime":
        result["regime"] = classifier.dinf_membership_regime(param).value
        return _Command(inputs, result)
    if args.set == "Dinf":
        depth = _default(args.entropy_depth, config["entropy_depth"])
        inputs["entropy_depth"] = depth
        estimate = dimension.dim_Dinf(
            param,
            entropy_depth=depth,
            lookahead=config["entropy_lookahead"],
            depth_cap=config["entropy_depth_cap"],
            dps=dps,
        )
    else:
        evaluate: Dict[str, Callable] = {
            "D0": dimension.dim_D0,
            "N": dimension.dim_N,
            "graph-box": dimension.box_dimension_graph,
            "phi": dimension.phi,
            "d": dimension.d_of_a,
        }
        estimate = dimension.DimEstimate.closed_form(evaluate[args.set](param.a, dps))
    result.update(estimate.as_dict())
    return _Command(inputs, result)


def _beta_greedy_one(args, config) -> Tuple[dict, dict]:
    _require(args, "a")
    a = numerics.to_fraction(args.a, "a")
    depth = _default(args.depth, config["greedy_depth"])
    expansion = beta.greedy_expansion_of_one(a, depth)
    return {"a": str(a), "depth": depth}, expansion.as_dict()


def _beta_expand(args, config) -> Tuple[dict, dict]:
    _require(args, "lam", "x")
    lam = numerics.to_fraction(args.lam, "lambda")
    x = numerics.to_fraction(args.x, "x")
    depth = _default(args.depth, config["greedy_depth"])
    expand = beta.lazy_expansion if args.lazy else beta.greedy_expansion
    inputs = {"lambda": str(lam), "x": str(x), "depth": depth, "lazy": args.lazy}
    return inputs, expand(lam, x, depth).as_dict()


def _beta_unique(args, config) -> Tuple[dict, dict]:
    _require(args, "lam", "omega")
    lam = numerics.to_fraction(args.lam, "lambda")
    omega = beta.parse_binary(args.omega)
    depth = _default(args.depth, config["greedy_depth"])
    inputs = {"lambda": str(lam), "omega": str(omega), "method": args.method}
    result = beta.is_unique_expansion(lam, omega, args.method, depth).as_dict()
    return inputs, result


def _beta_thue_morse(args, config) -> Tuple[dict, dict]:
    _require(args, "n")
    return {"n": args.n}, {"digits": beta.thue_morse(args.n)}


def _beta_komornik_loreti(args, config) -> Tuple[dict, dict]:
    tol = _tol(args, config)
    return {"tol": str(tol)}, beta.komornik_loreti(tol).as_dict()


def _beta_a_hat_n(args, config) -> Tuple[dict, dict]:
    _require(args, "n")
    tol = _tol(args, config)
    return {"n": args.n, "tol": str(tol)}, beta.a_hat_n(args.n, tol).as_dict()


def _beta_multinacci(args, config) -> Tuple[dict, dict]:
    _require(args, "k")
    tol = _tol(args, config)
    result = beta.multinacci(args.k, tol).as_dict()
    if args.k >= 2:
        result["quasi_greedy"] = str(beta.quasi_greedy_multinacci(args.k).digits)
    return {"k": args.k, "tol": str(tol)}, result


def _beta_tails(args, config) -> Tuple[dict, dict]:
    _require(args, "a")
    a = numerics.to_fraction(args.a, "a")
    return {"a": str(a)}, beta.countable_regime_tails(a).as_dict()


def _beta_pi(args, config) -> Tuple[dict, dict]:
    _require(args, "lam", "omega")
    lam = numerics.to_fraction(args.lam, "lambda")
    omega = beta.parse_binary(args.omega)
    return {"lambda": str(lam), "omega": str(omega)}, _fraction_pair(beta.pi_lambda(lam, omega))


def _beta_qk_count(args, config) -> Tuple[dict, dict]:
    _require(args, "k", "n")
    return {"k": args.k, "n": args.n}, {"count": beta.run_limited_count(args.k, args.n)}


def _beta_count(args, config) -> Tuple[dict, dict]:
    _require(args, "lam", "n")
    lam = numerics.to_fraction(args.lam, "lambda")
    lookahead = _default(args.lookahead, config["entropy_lookahead"])
    cap = config["entropy_depth_cap"]
    inputs = {"lambda": str(lam), "n": args.n, "lookahead": lookahead}
    result = {"count": dimension.count_admissible_words(lam, args.n, lookahead, cap)}
    if args.list:
        result["words"] = dimension.admissible_words(lam, args.n, lookahead, cap)
    return inputs, result


_BETA_HANDLERS = {
    "greedy-one": _beta_greedy_one,
    "expand": _beta_expand,
    "unique": _beta_unique,
    "thue-morse": _beta_thue_morse,
    "komornik-loreti": _beta_komornik_loreti,
    "a-hat-n": _beta_a_hat_n,
    "multinacci": _beta_multinacci,
    "tails": _beta_tails,
    "pi": _beta_pi,
    "qk-count": _beta_qk_count,
    "count": _beta_count,
}


def _cmd_beta(args: argparse.Namespace, config: SelfAffineConfig) -> _Command:
    inputs, result = _BETA_HANDLERS[args.action](args, config)
    inputs = {"action": args.action, **inputs}
    return _Command(inputs, result)


_HANDLERS: Dict[str, Callable[[argparse.Namespace, SelfAffineConfig], _Command]] = {
    "eval": _cmd_eval,
    "graph": _cmd_graph,
    "classify": _cmd_classify,
    "critical": _cmd_critical,
    "constants": _cmd_constants,
    "dim": _cmd_dim,
    "beta": _cmd_beta,
}


def _add_point_args(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument(
        "--x", required=required, default=None, help="rational or digit string such as 0.0(12)"
    )
    p.add_argument(
        "--digits",
        action="store_true",
        help="read --x as ternary digits even without a period, so 0.12 is 0.12(0)",
    )


def _add_eval_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--a", required=True)
    _add_point_args(p, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact rational value (default)")
    mode.add_argument("--tol", default=None, help="truncate the series to error <= tol")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    p.add_argument("--n", type=int, default=None, help="also report f_n and digit data at depth n")


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--a", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--out", required=True)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true")
    fmt.add_argument("--json", action="store_true")
    p.add_argument("--decimal", action="store_true", help="decimal instead of exact columns")
    p.add_argument("--slopes", action="store_true", help="include the 3^n slopes")


def _add_classify_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--a", required=True)
    _add_point_args(p, required=False)
    p.add_argument("--eps", default=None, help="treat a as known only to within eps")
    p.add_argument("--n", type=int, default=None, help="report tail weights at depth n")
    p.add_argument("--eidswick", type=int, default=None, help="first k Cantor-function ratios")
    p.add_argument(
        "--nested-blocks",
        type=int,
        default=None,
        help="probe the aperiodic point 0.022(02)022(02)^2... cut after this many blocks",
    )


def _add_critical_args(p: argparse.ArgumentParser) -> None:
    _add_point_args(p, required=True)
    p.add_argument("--tol", default=None)


def _add_constants_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", default=None)


def _add_dim_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--set", required=True, choices=DIM_SETS)
    p.add_argument("--a", default=None)
    p.add_argument("--sweep", default=None, help="lo:hi:step, CSV rows (a, value)")
    p.add_argument("--json", action="store_true", help="sweep rows as JSON")
    p.add_argument("--entropy-depth", type=int, default=None)
    p.add_argument("--p", default=None)
    p.add_argument("--q", default=None)
    p.add_argument("--family", default=None, choices=[f.value for f in dimension.FrequencyFamily])
    p.add_argument("--k", type=int, default=None)


def _add_beta_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("action", choices=BETA_ACTIONS)
    p.add_argument("--a", default=None)
    p.add_argument("--lambda", dest="lam", default=None)
    p.add_argument("--x", default=None)
    p.add_argument("--omega", default=None, help="binary word such as 1(10)")
    p.add_argument("--method", default="value", choices=["value", "lexicographic"])
    p.add_argument("--lazy", action="store_true")
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--lookahead", type=int, default=None)
    p.add_argument("--tol", default=None)
    p.add_argument("--list", action="store_true", help="also list the counted words")


# subcommand -> (help, argument registration)
_SUBCOMMANDS: Dict[str, Tuple[str, Callable[[argparse.ArgumentParser], None]]] = {
    "eval": ("evaluate F_a(x) and digit statistics", _add_eval_args),
    "graph": ("write the breakpoints of f_n", _add_graph_args),
    "classify": ("classify F_a'(x)", _add_classify_args),
    "critical": ("bracket the critical parameter a*(x)", _add_critical_args),
    "constants": ("threshold constants as brackets", _add_constants_args),
    "dim": ("dimension formulas and bounds", _add_dim_args),
    "beta": ("beta-expansions and unique expansions", _add_beta_args),
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--no-timing", action="store_true", help="omit timing_ms from the envelope")
    common.add_argument(
        "--debug-level", type=int, default=None, help="selfaffine log level, -1 to 6"
    )
    common.add_argument(
        "--telemetry",
        choices=INTL_SA_TELEMETRY_EXPORTERS,
        default=None,
        help="OpenTelemetry exporter, written to stderr",
    )

    parser = _Parser(prog="selfaffine", description="Okamoto self-affine functions")
    parser.add_argument("--version", action="version", version=f"selfaffine {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    for command in INTL_SA_SUBCOMMANDS:
        help_text, add_arguments = _SUBCOMMANDS[command]
        add_arguments(sub.add_parser(command, parents=[common], help=help_text))
    return parser


def _span_attributes(command: str, inputs: dict) -> dict:
    attributes = {"selfaffine.command": command}
    for key, value in inputs.items():
        if isinstance(value, (str, bool, int, float)):
            attributes[f"selfaffine.input.{key}"] = value
    return attributes


def _envelope(command: str, outcome: _Command, timing_ms: Optional[float]) -> str:
    payload = {
        "command": command,
        "inputs": outcome.inputs,
        "result": outcome.result,
        "version": __version__,
    }
    if timing_ms is not None:
        payload["timing_ms"] = round(timing_ms, 3)
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)


def _report_error(ex: SelfAffineError) -> int:
    print(json.dumps(ex.to_dict(), sort_keys=True), file=sys.stderr)
    return ex.exit_code


def run(argv: Optional[List[str]] = None) -> int:
    """Run one command; returns the process exit code."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as ex:
        return _report_error(ex)

    config = SelfAffineConfig(
        debug_level=args.debug_level,
        telemetry_exporter=args.telemetry,
    )
    meters = SelfAffineConfigurator().configure(config)
    tracer = trace.get_tracer(INTL_SA_TRACER_NAME, __version__)

    command = args.command
    start = time.perf_counter()
    exit_code = SelfAffineExitCode.SA_EXIT_OK
    try:
        with tracer.start_as_current_span(INTL_SA_SPAN_PREFIX + command) as span:
            outcome = _HANDLERS[command](args, config)
            span.set_attributes(_span_attributes(command, outcome.inputs))
        if outcome.text is not None:
            sys.stdout.write(outcome.text)
        else:
            elapsed = None if args.no_timing else (time.perf_counter() - start) * 1e3
            print(_envelope(command, outcome, elapsed))
        if command == "classify" and isinstance(outcome.result, dict) and "tag" in outcome.result:
            meters.record_classification(outcome.result["tag"])
    except SelfAffineError as ex:
        logger.debug("%s failed: %s", command, ex)
        exit_code = _report_error(ex)
    except (ValueError, ZeroDivisionError) as ex:
        # stray arithmetic errors from malformed input still map to the domain code
        exit_code = _report_error(DomainError(str(ex)))
    meters.record_command(command, (time.perf_counter() - start) * 1e3, exit_code)
    return exit_code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
