"""The ``dq`` command-line driver.

Exit codes: 0 success, 2 expression error, 3 configuration error,
4 property-check failure, 5 polarization violation.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import checks
from .algebra import EquivariantFunction
from .emit import emit_json, to_json
from .errors import (
    ConfigError,
    ParseError,
    PolarizationError,
    StarBundleError,
)
from .geometry import Chart, prequantum_wave, souriau_bracket
from .operators import Representation, extract_operator
from .parser import LoweringContext, parse_expression
from .products import StarKind, bullet_product, prequantize, quantize, star_product
from .render import format_function, format_operator

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CONFIG = 3
EXIT_CHECK = 4
EXIT_POLARIZATION = 5


@dataclass
class RunConfig:
    dim: int = 1
    chart_kind: str = "real"
    product: str = "normal"
    rep: str | None = None
    fmt: str = "text"
    seed: int = 0
    max_degree: int | None = None

    def validate(self) -> None:
        if self.dim < 1:
            raise ConfigError("--dim must be at least 1")
        if self.chart_kind == "bargmann":
            if self.dim != 1:
                raise ConfigError("the bargmann chart is one-dimensional")
            if self.product in ("normal", "antinormal"):
                raise ConfigError(f"product {self.product!r} requires --chart real (use wick)")
            if self.rep in ("position", "momentum"):
                raise ConfigError(f"representation {self.rep!r} requires --chart real")
        else:
            if self.product == "wick":
                raise ConfigError("the wick product requires --chart bargmann")
            if self.rep == "bargmann":
                raise ConfigError("the bargmann representation requires --chart bargmann")

    def chart(self) -> Chart:
        return Chart.bargmann() if self.chart_kind == "bargmann" else Chart.real(self.dim)

    def representation(self) -> Representation:
        chart = self.chart()
        name = self.rep
        if name is None:
            if chart.kind == "bargmann":
                name = "bargmann"
            elif self.product == "antinormal":
                name = "momentum"
            else:
                name = "position"
        return Representation.named(name, chart)


def _config_from_args(args) -> RunConfig:
    config = RunConfig(
        dim=args.dim,
        chart_kind=args.chart,
        product=args.product,
        rep=args.rep,
        fmt=args.format,
        seed=args.seed,
        max_degree=args.max_degree,
    )
    config.validate()
    return config


def _lower(text: str, config: RunConfig, jet_vars=None) -> EquivariantFunction:
    chart = config.chart()
    ast = parse_expression(text, chart)
    return LoweringContext(chart, jet_vars).lower(ast)


def _render_function(f: EquivariantFunction, config: RunConfig) -> str:
    return emit_json(f) if config.fmt == "json" else format_function(f)


def _wave_from_flag(config: RunConfig, rep: Representation, psi_text: str | None):
    if psi_text in (None, "generic"):
        return rep.generic_wave()
    component = _lower(psi_text, config, jet_vars=rep.config_vars)
    return rep.wave(component)


def cmd_star(args) -> tuple[int, str]:
    config = _config_from_args(args)
    f = _lower(args.exprs[0], config)
    g = _lower(args.exprs[1], config)
    return EXIT_OK, _render_function(star_product(StarKind(config.product), f, g), config)


def cmd_bullet(args) -> tuple[int, str]:
    config = _config_from_args(args)
    rep = config.representation()
    f = _lower(args.exprs[0], config)
    h = _lower(args.exprs[1], config, jet_vars=rep.config_vars)
    return EXIT_OK, _render_function(bullet_product(StarKind(config.product), f, h), config)


def cmd_quantize(args) -> tuple[int, str]:
    config = _config_from_args(args)
    rep = config.representation()
    f = _lower(args.exprs[0], config)
    psi = _wave_from_flag(config, rep, args.psi)
    out = quantize(StarKind(config.product), f, psi, rep.polarization)
    return EXIT_OK, _render_function(out, config)


def cmd_prequantize(args) -> tuple[int, str]:
    config = _config_from_args(args)
    chart = config.chart()
    if chart.kind != "real":
        raise ConfigError("prequantize is defined on real charts")
    f = _lower(args.exprs[0], config)
    if args.psi in (None, "generic"):
        psi = prequantum_wave(chart)
    else:
        component = _lower(args.psi, config, jet_vars=chart.variables)
        psi = prequantum_wave(chart, component)
    return EXIT_OK, _render_function(prequantize(chart, f, psi), config)


def cmd_bracket(args) -> tuple[int, str]:
    config = _config_from_args(args)
    chart = config.chart()
    f = _lower(args.exprs[0], config, jet_vars=chart.variables)
    g = _lower(args.exprs[1], config, jet_vars=chart.variables)
    return EXIT_OK, _render_function(souriau_bracket(chart, f, g), config)


def cmd_extract(args) -> tuple[int, str]:
    config = _config_from_args(args)
    rep = config.representation()
    f = _lower(args.exprs[0], config)
    op = extract_operator(StarKind(config.product), f, rep)
    text = emit_json(op) if config.fmt == "json" else format_operator(op)
    return EXIT_OK, text


def cmd_check(args) -> tuple[int, str]:
    config = _config_from_args(args)
    names = [s.strip() for s in args.suite.split(",")] if args.suite else ["all"]
    try:
        results = checks.run_suites(names, seed=config.seed, max_degree=config.max_degree)
    except KeyError as exc:
        raise ConfigError(
            f"unknown suite {exc.args[0]!r}; available: all, " + ", ".join(checks.SUITES)
        ) from None
    failures = [r for r in results if not r.ok]
    if config.fmt == "json":
        document = {
            "seed": config.seed,
            "results": [
                {"suite": r.suite, "name": r.name, "ok": r.ok, "detail": r.detail}
                for r in results
            ],
            "passed": not failures,
        }
        return (EXIT_CHECK if failures else EXIT_OK), to_json(document)
    lines = [r.line() for r in results]
    if failures:
        lines.append(f"{len(failures)} of {len(results)} properties failed")
        return EXIT_CHECK, "\n".join(lines)
    lines.append(f"all {len(results)} properties passed")
    return EXIT_OK, "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dq",
        description="Exact star and bullet products, quantization and property checks "
                    "on prequantized flat phase spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, positionals=0, psi=False, suite=False):
        p.add_argument("--dim", type=int, default=1, help="number of canonical pairs")
        p.add_argument("--chart", choices=("real", "bargmann"), default="real")
        p.add_argument("--product", choices=("normal", "antinormal", "moyal", "wick"),
                       default="normal")
        p.add_argument("--rep", choices=("position", "momentum", "bargmann"), default=None)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-degree", type=int, default=None)
        if psi:
            p.add_argument("--psi", default="generic",
                           help="wave-function component: 'generic' or an expression")
        if suite:
            p.add_argument("--suite", default="all",
                           help="comma-separated suite names, or 'all'")
        if positionals:
            p.add_argument("exprs", nargs=positionals, metavar="EXPR")

    add_common(sub.add_parser("star", help="star product of two observables"), 2)
    add_common(sub.add_parser("bullet", help="bullet product observable * function"), 2)
    add_common(sub.add_parser("quantize", help="quantum operator applied to a wave"), 1, psi=True)
    add_common(sub.add_parser("prequantize", help="prequantum operator applied to a wave"),
               1, psi=True)
    add_common(sub.add_parser("bracket", help="bundle bracket of two functions"), 2)
    add_common(sub.add_parser("extract", help="extract a differential operator"), 1)
    add_common(sub.add_parser("check", help="run seeded property-check suites"), 0, suite=True)
    return parser


_COMMANDS = {
    "star": cmd_star,
    "bullet": cmd_bullet,
    "quantize": cmd_quantize,
    "prequantize": cmd_prequantize,
    "bracket": cmd_bracket,
    "extract": cmd_extract,
    "check": cmd_check,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, output = _COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PolarizationError as exc:
        print(f"polarization violation: {exc}", file=sys.stderr)
        return EXIT_POLARIZATION
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except StarBundleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if output:
        print(output)
    return code


def console_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_entry()
