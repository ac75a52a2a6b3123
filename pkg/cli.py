"""
cli.py
------
Command line for the cubic residue toolkit.

Commands:
  decompose   4p = L^2 + 27M^2 and the primary prime over p
  chi         the cubic character mod p at an integer
  is-cr       is c a cubic residue mod m (exit 0 = yes, 1 = no)
  table       the f_q(l, m) residue table
  slopes      values of g_gamma mod q with their multiplicities
  selftest    run the registered consistency checks

Settings come from config/config.yaml, then CUBIC_* environment variables
(a .env file next to this script is loaded first), then command-line flags.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

import yaml
from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.table import Table

from cubic import ratchar, selftest, slopes, solver, tables
from cubic.decompose import decompose_prime
from cubic.errors import ConfigError, CubicError, InternalConsistencyError, InvalidInputError
from cubic.render import to_primitive

out = Console(soft_wrap=True, markup=False, highlight=False, emoji=False)
err_console = Console(stderr=True)

# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------
PROJECT_ROOT = Path(__file__).resolve().parent
CONFIG_PATH = PROJECT_ROOT / "config" / "config.yaml"
ENV_PATH = PROJECT_ROOT / ".env"

DEFAULT_CONFIG = {
    "output": {"format": "text"},
    "bounds": {"search_bound": 1_000_000, "factor_bound": 1_000_000, "fallback_bound": 1000},
    "logging": {"level": "WARNING"},
}

ENV_OVERRIDES = {
    "CUBIC_FORMAT": ("output", "format", str),
    "CUBIC_SEARCH_BOUND": ("bounds", "search_bound", int),
    "CUBIC_FACTOR_BOUND": ("bounds", "factor_bound", int),
    "CUBIC_FALLBACK_BOUND": ("bounds", "fallback_bound", int),
}

FORMATS = ("text", "structured")


def _deep_merge_dicts(base: dict, override: dict) -> dict:
    """Recursively merge two dictionaries."""
    result = base.copy()
    for k, v in override.items():
        if isinstance(v, dict) and isinstance(result.get(k), dict):
            result[k] = _deep_merge_dicts(result[k], v)
        else:
            result[k] = v
    return result


def load_config(path: Path | str | None = None, create: bool = False) -> dict:
    """Load YAML config with deep merge fallback."""
    path = Path(path) if path else CONFIG_PATH
    logging.debug("Config path: %s", path)
    if not path.exists():
        if create:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w") as f:
                yaml.safe_dump(DEFAULT_CONFIG, f)
            logging.info("[green]✓[/] Created default config at [cyan]%s[/]", escape(str(path)))
        return _deep_merge_dicts(DEFAULT_CONFIG, {})

    try:
        with open(path, "r") as f:
            data = yaml.safe_load(f) or {}
        if not isinstance(data, dict):
            raise ValueError("top level is not a mapping")
        return _deep_merge_dicts(DEFAULT_CONFIG, data)
    except (OSError, yaml.YAMLError, ValueError) as e:
        logging.warning("[yellow]⚠[/] Failed to load config %s: %s", escape(str(path)), escape(str(e)))
        logging.warning("[yellow]⚠[/] Using default configuration")
        return _deep_merge_dicts(DEFAULT_CONFIG, {})


def apply_env(config: dict, environ: Mapping[str, str] | None = None) -> dict:
    environ = os.environ if environ is None else environ
    overrides: dict[str, dict[str, Any]] = {}
    for var, (section, key, kind) in ENV_OVERRIDES.items():
        raw = environ.get(var)
        if raw is None or raw == "":
            continue
        try:
            overrides.setdefault(section, {})[key] = kind(raw)
        except ValueError:
            raise ConfigError(f"{var}={raw!r} is not a valid {kind.__name__}") from None
    return _deep_merge_dicts(config, overrides)


@dataclass(frozen=True)
class CliConfig:
    output_format: str = "text"
    search_bound: int = 1_000_000
    factor_bound: int = 1_000_000
    fallback_l_bound: int = 1000
    log_level: str = "WARNING"

    @classmethod
    def from_dict(cls, config: Mapping[str, Any]) -> "CliConfig":
        bounds = config.get("bounds", {})
        try:
            cfg = cls(
                output_format=str(config.get("output", {}).get("format", "text")),
                search_bound=int(bounds.get("search_bound")),
                factor_bound=int(bounds.get("factor_bound")),
                fallback_l_bound=int(bounds.get("fallback_bound")),
                log_level=str(config.get("logging", {}).get("level", "WARNING")).upper(),
            )
        except (TypeError, ValueError) as e:
            raise ConfigError(f"invalid configuration: {e}") from None
        if cfg.output_format not in FORMATS:
            raise ConfigError(f"output format must be one of {FORMATS}, got {cfg.output_format!r}")
        for name in ("search_bound", "factor_bound", "fallback_l_bound"):
            if getattr(cfg, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        if not isinstance(logging.getLevelName(cfg.log_level), int):
            raise ConfigError(f"unknown log level {cfg.log_level!r}")
        return cfg

    @property
    def structured(self) -> bool:
        return self.output_format == "structured"


def setup_logging(level: int | str) -> None:
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, rich_tracebacks=True, show_path=False, markup=True)],
        force=True,
    )


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------
_POWER_EXPR = re.compile(r"^\(?\s*(\d+)\s*\^\s*(\d+)\s*([+-])\s*(\d+)\s*(?:\^\s*(\d+))?\s*\)?\s*(/\s*4)?$")
_DECIMAL = re.compile(r"^[+-]?\d+$")
MAX_EXPONENT = 100_000


def parse_integer(text: str) -> int:
    """A decimal integer or a^b +- c^d (or a^b +- c), optionally divided by 4."""
    text = text.strip()
    if _DECIMAL.match(text):
        return int(text)
    match = _POWER_EXPR.match(text)
    if not match:
        raise InvalidInputError(f"cannot parse {text!r} as an integer")
    a, b, sign, c, d, quarter = match.groups()
    d = d or "1"
    if int(b) > MAX_EXPONENT or int(d) > MAX_EXPONENT:
        raise InvalidInputError(f"exponents above {MAX_EXPONENT} are not accepted")
    value = int(a) ** int(b) + (1 if sign == "+" else -1) * int(c) ** int(d)
    if quarter:
        if value % 4:
            raise InvalidInputError(f"{text!r} is not divisible by 4")
        value //= 4
    return value


def parse_gamma(text: str) -> slopes.GammaParams:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise InvalidInputError(f"gamma must be given as c,d, got {text!r}")
    return slopes.GammaParams(parse_integer(parts[0]), parse_integer(parts[1]))


def parse_factors(text: str, c: int) -> ratchar.FactoredInteger:
    """Factorization of c written as q1^e1,q2,... (sign taken from c)."""
    factors = []
    for part in text.split(","):
        q, _, e = part.strip().partition("^")
        factors.append((parse_integer(q), parse_integer(e) if e else 1))
    return ratchar.FactoredInteger(sign=-1 if c < 0 else 1, factors=tuple(sorted(factors)))


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

def emit_structured(doc: Any) -> None:
    out.print(json.dumps(to_primitive(doc), indent=2), soft_wrap=True)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_decompose(args: argparse.Namespace, cfg: CliConfig) -> int:
    p = parse_integer(args.p)
    d = decompose_prime(p)
    if cfg.structured:
        emit_structured(d)
    else:
        out.print(f"p  = {d.p}")
        out.print(f"L  = {d.L}")
        out.print(f"M  = {d.M}")
        out.print(f"pi = ({d.pi.a}, {d.pi.b})")
    return 0


def cmd_chi(args: argparse.Namespace, cfg: CliConfig) -> int:
    p, c = parse_integer(args.p), parse_integer(args.c)
    rc = ratchar.RationalCharacter.for_prime(p, fallback_bound=cfg.fallback_l_bound, factor_bound=cfg.factor_bound)
    factored = parse_factors(args.factors, c) if args.factors else None

    doc: dict[str, Any] = {"p": p, "c": c, "method": args.method}
    value = None
    if args.method in ("rules", "both"):
        if c % p:
            factored = factored or ratchar.factor(c, cfg.factor_bound)
            doc["factors"] = factored
            doc["decisions"] = [
                {"q": q, **to_primitive(ratchar.explain(rc, q))} for q, _ in factored.factors
            ]
        value = ratchar.chi(rc, c, factored)
        logging.debug("rules: chi(%s) = %s mod %s", c, value, p)
    if args.method in ("direct", "both"):
        direct = rc.direct(c)
        if value is not None and direct != value:
            raise InternalConsistencyError(f"rules give chi({c}) = {value} but the direct character gives {direct}")
        value = direct
    doc["value"] = value

    if cfg.structured:
        emit_structured(doc)
    else:
        out.print(str(value))
    return 0


_SOLVER_METHODS = {
    "exponent": solver.Method.EXPONENT,
    "rules": solver.Method.RULES,
    "direct": solver.Method.DIRECT,
    "exhaustive": solver.Method.EXHAUSTIVE,
}


def cmd_is_cr(args: argparse.Namespace, cfg: CliConfig) -> int:
    c, m = parse_integer(args.c), parse_integer(args.m)
    query = solver.ResidueQuery(
        c, m, _SOLVER_METHODS[args.method], factor_bound=cfg.factor_bound, fallback_bound=cfg.fallback_l_bound
    )
    verdict = solver.decide(query)
    if cfg.structured:
        emit_structured({"c": c, "m": m, "method": query.method, "residue": verdict})
    else:
        out.print("yes" if verdict else "no")
    return 0 if verdict else 1


def cmd_table(args: argparse.Namespace, cfg: CliConfig) -> int:
    q = parse_integer(args.q)
    bound = parse_integer(args.bound) if args.bound else cfg.search_bound
    tbl = tables.build_table(q, bound)
    report = tables.verify_table(tbl)
    for v in report.violations:
        logging.warning("[yellow]⚠[/] f_%s %s: %s", q, v.kind, escape(v.detail))
    if cfg.structured:
        doc = tables.to_structured(tbl)
        doc["violations"] = to_primitive(report)["violations"]
        emit_structured(doc)
    else:
        out.print(tables.render_text(tbl))
    return 0


def cmd_slopes(args: argparse.Namespace, cfg: CliConfig) -> int:
    q = parse_integer(args.q)
    gp = parse_gamma(args.gamma)
    ss = slopes.slope_set(gp, q)
    undefined = slopes.undefined_slopes(q)
    if cfg.structured:
        doc = to_primitive(ss)
        doc["gamma"] = {"c": str(gp.c), "d": str(gp.d)}
        doc["undefined"] = to_primitive(undefined)
        emit_structured(doc)
        return 0

    values = Table(title=f"g_({gp})(t) mod {q}")
    values.add_column("t", justify="right")
    values.add_column("slope", justify="right")
    for t, s in ss.mapping:
        values.add_row(str(t), str(s))
    out.print(values)

    census = Table(title=f"{len(ss)} distinct values")
    census.add_column("slope", justify="right")
    census.add_column("count", justify="right")
    for s, n in ss.census():
        census.add_row(str(s) + (" (L^2+27M^2 = 0)" if s in undefined else ""), str(n))
    out.print(census)
    return 0


def cmd_selftest(args: argparse.Namespace, cfg: CliConfig) -> int:
    results = selftest.run_all(args.level, only=args.only)
    for r in results:
        if r.error:
            logging.error("[red]✗[/] %s crashed: %s", r.name, escape(r.error))
        for failure in r.failures[:10]:
            logging.error("[red]✗[/] %s: %s", r.name, escape(failure))

    if cfg.structured:
        emit_structured(results)
    else:
        summary = Table(title=f"self-test ({args.level})")
        for col in ("check", "cases", "failures", "seconds", "status"):
            summary.add_column(col, justify="left" if col == "check" else "right")
        for r in results:
            status = "ok" if r.ok else ("error" if r.error else "FAIL")
            summary.add_row(r.name, str(r.checked), str(len(r.failures)), f"{r.seconds:.2f}", status)
        out.print(summary)
    return 0 if all(r.ok for r in results) else 1


# ---------------------------------------------------------------------------
# CLI Interface
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS, help="text (default) or structured JSON")
    common.add_argument("--search-bound", dest="search_bound", type=int, default=argparse.SUPPRESS,
                        help="largest prime p searched when filling tables")
    common.add_argument("--factor-bound", dest="factor_bound", type=int, default=argparse.SUPPRESS,
                        help="trial division limit for factoring")
    common.add_argument("--fallback-bound", dest="fallback_bound", type=int, default=argparse.SUPPRESS,
                        help="largest auxiliary prime l tried when no rule applies")
    common.add_argument("--config", default=argparse.SUPPRESS, help="path to a YAML config file")
    common.add_argument("-v", "--verbose", action="count", default=argparse.SUPPRESS,
                        help="-v for progress, -vv for debug output")

    parser = argparse.ArgumentParser(prog="cubic", description="Cubic residues via Eisenstein integers", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[common], help="write 4p = L^2 + 27M^2")
    p.add_argument("p")
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("chi", parents=[common], help="cubic character mod p at c")
    p.add_argument("p")
    p.add_argument("c")
    p.add_argument("--method", choices=["rules", "direct", "both"], default="both")
    p.add_argument("--factors", help="factorization of c as q1^e1,q2,... to skip factoring")
    p.set_defaults(handler=cmd_chi)

    p = sub.add_parser("is-cr", parents=[common], help="is c a cubic residue mod m")
    p.add_argument("c")
    p.add_argument("m")
    p.add_argument("--method", choices=sorted(_SOLVER_METHODS), default="exponent")
    p.set_defaults(handler=cmd_is_cr)

    p = sub.add_parser("table", parents=[common], help="residue table f_q(l, m)")
    p.add_argument("q")
    p.add_argument("bound", nargs="?", help="search bound (overrides --search-bound)")
    p.set_defaults(handler=cmd_table)

    p = sub.add_parser("slopes", parents=[common], help="values of g_gamma mod q")
    p.add_argument("q")
    p.add_argument("--gamma", default="1,0", help="gamma = c + d*w given as c,d (default 1,0)")
    p.set_defaults(handler=cmd_slopes)

    p = sub.add_parser("selftest", parents=[common], help="run consistency checks")
    p.add_argument("level", nargs="?", choices=sorted(selftest.SCALES), default="quick")
    p.add_argument("--only", action="append", help="run only the named check (repeatable)")
    p.set_defaults(handler=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    verbose = getattr(args, "verbose", 0)
    setup_logging(logging.DEBUG if verbose >= 2 else logging.INFO if verbose == 1 else logging.WARNING)

    if ENV_PATH.exists():
        load_dotenv(ENV_PATH)

    try:
        config = apply_env(load_config(getattr(args, "config", None)))
        flags = {
            "output": {"format": getattr(args, "format", None)},
            "bounds": {k: getattr(args, k, None) for k in ("search_bound", "factor_bound", "fallback_bound")},
        }
        flags = {s: {k: v for k, v in vals.items() if v is not None} for s, vals in flags.items()}
        cfg = CliConfig.from_dict(_deep_merge_dicts(config, flags))
        if not verbose:
            logging.getLogger().setLevel(cfg.log_level)
        return args.handler(args, cfg)
    except CubicError as exc:
        logging.error("[red]✗[/] %s", escape(str(exc)))
        cofactor = getattr(exc, "cofactor", None)
        if cofactor is not None:
            logging.error("[red]✗[/] unfactored cofactor: %s", cofactor)
        return exc.exit_code
    except Exception:
        logging.exception("[red]✗[/] unexpected failure")
        return 5


if __name__ == "__main__":
    sys.exit(main())
