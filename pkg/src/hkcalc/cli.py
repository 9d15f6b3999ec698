"""Command-line interface: ``hkcalc hk|phi|theta|hadamard|verify|constant|cache``.

Exit codes: 0 success, 1 identity-check failure, 2 usage or parse error,
3 resource guard.
"""

from __future__ import annotations

import functools
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import click

from . import __version__
from .cache import CacheConflictError, HKCache, HKRecord, merge, parse_records, store_file
from .colength import DEFAULT_SIZE_LIMIT, SizeLimitError
from .constants import binomial_square_decomposition, euler_integral_check, schneider_sum
from .enclosure import frac_str
from .hilbert_kunz import hk_value, phi_sample
from .poly import PolyParseError, parse_poly
from .theta import (ConvergenceError, even_selector, evaluate, hadamard, odd_selector,
                    theta_empirical, theta_monomial, theta_nodal_conjectural, theta_square)
from .verify import ALIASES, SUITES, verify_suite

HARD_SIZE_CEILING = 2**26
EXIT_IDENTITY, EXIT_USAGE, EXIT_RESOURCE = 1, 2, 3


@dataclass
class RunConfig:
    cache_dir: Path | None = None
    threads: int = 1
    size_limit: int = DEFAULT_SIZE_LIMIT
    output_format: str | None = None

    def __post_init__(self):
        if self.threads < 1:
            raise click.BadParameter("threads must be >= 1", param_hint="--threads")
        if not 1 <= self.size_limit <= HARD_SIZE_CEILING:
            raise click.BadParameter(f"size limit must be in [1, {HARD_SIZE_CEILING}]",
                                     param_hint="--size-limit")
        self._cache = None

    @property
    def cache(self) -> HKCache:
        if self._cache is None:
            self._cache = HKCache(self.cache_dir)
            for msg in self._cache.errors:
                click.echo(msg, err=True)
        return self._cache

    def fmt(self, default: str) -> str:
        return self.output_format or default

    def kw(self) -> dict:
        return {"cache": self.cache, "threads": self.threads, "size_limit": self.size_limit}


def _fail(code: int, msg: str):
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


def guarded(fn):
    """Map library errors to exit codes and flush the cache on success."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        cfg: RunConfig = click.get_current_context().obj
        try:
            result = fn(*args, **kwargs)
        except (PolyParseError, ValueError) as exc:
            _fail(EXIT_USAGE, str(exc))
        except SizeLimitError as exc:
            _fail(EXIT_RESOURCE, f"instance too large: {exc}")
        except (CacheConflictError, ArithmeticError, AssertionError) as exc:
            _fail(EXIT_IDENTITY, str(exc))
        if cfg._cache is not None:
            cfg._cache.flush()
        return result

    return wrapper


def emit(obj) -> None:
    click.echo(json.dumps(obj, indent=2))


def _vars(text: str) -> list[str]:
    names = [v.strip() for v in text.split(",") if v.strip()]
    if not names:
        raise PolyParseError("empty variable list")
    return names


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise click.BadParameter(f"not a rational number: {text!r}") from exc


def _set_format(ctx, param, value):
    if value is not None:
        ctx.find_object(RunConfig).output_format = value
    return value


format_option = click.option("--format", "output_format", type=click.Choice(["json", "csv", "text"]),
                             expose_value=False, callback=_set_format, help="Output format.")


@click.group()
@click.version_option(__version__)
@click.option("--cache-dir", envvar="HKCALC_CACHE_DIR", type=click.Path(file_okay=False, path_type=Path),
              help="Directory of the persistent record file (env HKCALC_CACHE_DIR).")
@click.option("--threads", envvar="HKCALC_THREADS", type=int, default=1, show_default=True,
              help="Worker threads for colength jobs (env HKCALC_THREADS).")
@click.option("--size-limit", type=int, default=DEFAULT_SIZE_LIMIT, show_default=True,
              help="Largest allowed quotient dimension q^r.")
@click.option("--format", "output_format", type=click.Choice(["json", "csv", "text"]),
              help="Output format (default: text for hk/phi, json otherwise).")
@click.pass_context
def cli(ctx, cache_dir, threads, size_limit, output_format):
    """Characteristic-2 Hilbert-Kunz functions and theta series."""
    ctx.obj = RunConfig(cache_dir, threads, size_limit, output_format)


@cli.command("hk")
@click.option("--poly", required=True, help="Polynomial, e.g. 'x^3+y^3+x*y*z'.")
@click.option("--vars", "var_list", required=True, help="Comma-separated variables, e.g. x,y,z.")
@click.option("--i", "power", type=int, default=1, show_default=True, help="Power of the polynomial.")
@click.option("--n", "level", type=int, required=True, help="Level; q = 2^n.")
@format_option
@click.pass_obj
@guarded
def cmd_hk(cfg: RunConfig, poly, var_list, power, level):
    """Print e_n(f^i)."""
    f = parse_poly(poly, _vars(var_list))
    value = hk_value(f, power, level, cache=cfg.cache, size_limit=cfg.size_limit)
    rec = HKRecord(f.key(), power, level, value)
    fmt = cfg.fmt("text")
    if fmt == "json":
        emit({"poly_key": rec.poly_key, "i": power, "n": level, "value": value})
    elif fmt == "csv":
        click.echo(rec.to_line())
    else:
        click.echo(value)


@cli.command("phi")
@click.option("--poly", required=True)
@click.option("--vars", "var_list", required=True)
@click.option("--n", "level", type=int, required=True)
@format_option
@click.pass_obj
@guarded
def cmd_phi(cfg: RunConfig, poly, var_list, level):
    """Print phi_f at 0, 1/q, ..., 1."""
    f = parse_poly(poly, _vars(var_list))
    phi = phi_sample(f, level, **cfg.kw())
    fmt = cfg.fmt("text")
    if fmt == "json":
        emit({"poly_key": f.key(), "n": level, "values": [frac_str(v) for v in phi.values]})
    elif fmt == "csv":
        for i, v in enumerate(phi.values):
            click.echo(f"{i},{frac_str(v)}")
    else:
        click.echo(" ".join(str(v) for v in phi.values))


def _series_from_spec(spec: str, N: int, cfg: RunConfig):
    """``nodal``, ``mono:K``, ``even``, ``odd``, ``poly:EXPR:VARS``; prefix ``sq:`` squares the polynomial."""
    squares = 0
    while spec.startswith("sq:"):
        squares += 1
        spec = spec[3:]
    base_N = N - squares
    if base_N < 0:
        raise ValueError(f"order {N} too small for {squares} squarings")
    if spec == "nodal":
        t = theta_nodal_conjectural(base_N)
    elif spec == "even":
        t = even_selector(base_N)
    elif spec == "odd":
        t = odd_selector(base_N)
    elif spec.startswith("mono:"):
        t = theta_monomial(int(spec[5:]), base_N)
    elif spec.startswith("poly:"):
        _, expr, var_list = spec.split(":", 2)
        t = theta_empirical(parse_poly(expr, _vars(var_list)), base_N, **cfg.kw())
    else:
        raise ValueError(f"unknown series spec {spec!r}")
    for _ in range(squares):
        t = theta_square(t)
    return t


def _emit_series(cfg: RunConfig, t, point):
    explicit = point is not None
    if not explicit:
        point = Fraction(1, 2 ** (t.r + 1))
    try:
        enc = evaluate(t, point)
        ev = {"point": frac_str(point), "value": frac_str(enc.value), "error": frac_str(enc.error_bound),
              "decimal": enc.decimal(25)}
    except ConvergenceError as exc:
        if explicit:
            raise
        ev = {"point": frac_str(point), "error_message": str(exc)}
    fmt = cfg.fmt("json")
    if fmt == "json":
        out = t.to_json()
        out["eval"] = ev
        emit(out)
    elif fmt == "csv":
        for n, a in enumerate(t.coeffs):
            click.echo(f"{n},{a}")
    else:
        click.echo(" ".join(str(a) for a in t.coeffs))
        if "value" in ev:
            click.echo(f"value at {ev['point']}: {ev['decimal']} +/- {float(enc.error_bound):.3g}")


@cli.command("theta")
@click.option("--poly", help="Polynomial for a brute-force series.")
@click.option("--vars", "var_list")
@click.option("--monomial", type=int, help="Closed-form series of x^K.")
@click.option("--nodal", is_flag=True, help="Conjectured series of x^3+y^3+xyz.")
@click.option("--N", "order", type=int, default=None, help="Truncation order.")
@click.option("--square", "squares", type=int, default=0, help="Apply the squaring rule this many times.")
@click.option("--eval", "point", default=None, help="Evaluation point p/q (default 1/2^(r+1)).")
@format_option
@click.pass_obj
@guarded
def cmd_theta(cfg: RunConfig, poly, var_list, monomial, nodal, order, squares, point):
    """Coefficients of a theta series and an enclosure of its value."""
    chosen = sum(x is not None and x is not False for x in (poly, monomial, nodal or None))
    if chosen != 1:
        raise click.UsageError("choose exactly one of --poly, --monomial, --nodal")
    if poly is not None:
        if not var_list:
            raise click.UsageError("--poly needs --vars")
        t = theta_empirical(parse_poly(poly, _vars(var_list)), 4 if order is None else order, **cfg.kw())
    elif monomial is not None:
        t = theta_monomial(monomial, 12 if order is None else order)
    else:
        t = theta_nodal_conjectural(12 if order is None else order)
    for _ in range(squares):
        t = theta_square(t)
    _emit_series(cfg, t, _fraction(point) if point else None)


@cli.command("hadamard")
@click.option("--series", "specs", multiple=True, required=True,
              help="nodal | mono:K | even | odd | poly:EXPR:VARS, optionally prefixed by sq:")
@click.option("--N", "order", type=int, default=12, show_default=True)
@click.option("--eval", "point", default=None)
@format_option
@click.pass_obj
@guarded
def cmd_hadamard(cfg: RunConfig, specs, order, point):
    """Coefficientwise product of theta series (the series of a sum in disjoint variables)."""
    t = hadamard([_series_from_spec(s, order, cfg) for s in specs])
    _emit_series(cfg, t, _fraction(point) if point else None)


@cli.command("verify")
@click.option("--suite", required=True, type=click.Choice(sorted(SUITES) + sorted(ALIASES)))
@click.option("--N", "order", type=int, default=None, help="Order or level bound for the suite.")
@click.option("--poly", "polys", multiple=True, help="Override polynomial(s); pair each with --vars.")
@click.option("--vars", "var_lists", multiple=True)
@click.option("--samples", type=int, default=100, show_default=True, help="Random elements per level (dyadic).")
@click.option("--seed", type=int, default=0, show_default=True)
@format_option
@click.pass_obj
@guarded
def cmd_verify(cfg: RunConfig, suite, order, polys, var_lists, samples, seed):
    """Run an exact identity suite; exit 1 if any check fails."""
    if len(polys) != len(var_lists):
        raise click.UsageError("each --poly needs a matching --vars")
    parsed = [parse_poly(p, _vars(v)) for p, v in zip(polys, var_lists)]
    key = ALIASES.get(suite, suite)
    kw = cfg.kw()
    if order is not None:
        kw["N"] = order
    if key == "hadamard" and parsed:
        kw["polys"] = parsed
    elif key == "square" and parsed:
        kw["f"] = parsed[0]
    elif key == "recursion" and parsed:
        kw["g"] = parsed[0]
    if key == "dyadic":
        kw.update(samples=samples, seed=seed)
    rep = verify_suite(suite, **kw)
    fmt = cfg.fmt("json")
    if fmt == "json":
        emit(rep.to_json())
    else:
        for c in rep.checks:
            click.echo(f"{'PASS' if c.ok else 'FAIL'} {c.label}: expected {c.expected}, got {c.actual}")
        click.echo(f"{rep.name}: {'pass' if rep.passed else 'FAIL'}")
    if not rep.passed:
        sys.exit(EXIT_IDENTITY)


@cli.command("constant")
@click.option("--lambda", "lam", default="1/256", show_default=True, help="Rational lambda in (0, 1/4).")
@click.option("--digits", type=int, default=25, show_default=True)
@click.option("--check", type=click.Choice(["none", "euler", "thm22", "decomposition"]), default="none",
              show_default=True)
@click.option("--N", "order", type=int, default=20, show_default=True, help="Order for the decomposition check.")
@click.option("--tol", type=float, default=1e-10, show_default=True, help="Tolerance for the Euler check.")
@format_option
@click.pass_obj
@guarded
def cmd_constant(cfg: RunConfig, lam, digits, check, order, tol):
    """Enclose sum binom(2n,n)^2 lambda^(2n) and optionally cross-check it."""
    lam_q = _fraction(lam)
    out: dict = {"lambda": frac_str(lam_q), "digits": digits,
                 "enclosure": schneider_sum(lam_q, digits).to_json()}
    passed = True
    if check == "euler":
        rep = euler_integral_check(lam_q, tol)
        out["euler"] = rep.to_json()
        passed = rep.passed
    elif check in ("thm22", "decomposition"):
        rep = binomial_square_decomposition(order, digits)
        out["decomposition"] = rep.to_json()
        passed = rep.passed
    out["passed"] = passed
    if cfg.fmt("json") == "json":
        emit(out)
    else:
        click.echo(f"{out['enclosure']['decimal']} ({'pass' if passed else 'FAIL'})")
    if not passed:
        sys.exit(EXIT_IDENTITY)


@cli.group("cache")
def cmd_cache():
    """Inspect or extend the persistent record file."""


@cmd_cache.command("path")
@click.pass_obj
def cache_path(cfg: RunConfig):
    click.echo(str(cfg.cache.path) if cfg.cache.path else "(no cache directory configured)")


@cmd_cache.command("show")
@format_option
@click.pass_obj
def cache_show(cfg: RunConfig):
    fmt = cfg.fmt("csv")
    recs = cfg.cache.records()
    if fmt == "json":
        emit([{"poly_key": r.poly_key, "i": r.i, "n": r.n, "value": r.value} for r in recs])
    else:
        for r in recs:
            click.echo(r.to_line())


@cmd_cache.command("check")
@click.pass_obj
def cache_check(cfg: RunConfig):
    """Load the record file, reporting corrupt lines and conflicts."""
    try:
        cache = cfg.cache
    except CacheConflictError as exc:
        _fail(EXIT_IDENTITY, str(exc))
    click.echo(f"{len(cache)} records, {len(cache.errors)} corrupt lines")
    if cache.errors:
        sys.exit(EXIT_IDENTITY)


def _read_records(text: str) -> tuple[list[HKRecord], list[str]]:
    stripped = text.lstrip()
    if stripped.startswith(("{", "[")):
        data = json.loads(stripped)
        items = data if isinstance(data, list) else [data]
        return [HKRecord(d["poly_key"], int(d["i"]), int(d["n"]), int(d["value"])) for d in items], []
    return parse_records(text.splitlines())


@cmd_cache.command("import")
@click.argument("source", type=click.File("r"))
@click.pass_obj
def cache_import(cfg: RunConfig, source):
    """Merge records (CSV lines or the JSON emitted by ``hk --format json``)."""
    if cfg.cache_dir is None:
        _fail(EXIT_USAGE, "no cache directory configured")
    try:
        records, errors = _read_records(source.read())
        merge({}, records)
        total = store_file(cfg.cache.path, records)
    except CacheConflictError as exc:
        _fail(EXIT_IDENTITY, str(exc))
    except (ValueError, KeyError) as exc:
        _fail(EXIT_USAGE, f"unreadable records: {exc}")
    for msg in errors:
        click.echo(msg, err=True)
    click.echo(f"{total} records in {cfg.cache.path}")


def main(argv=None):
    cli.main(args=argv, prog_name="hkcalc")


if __name__ == "__main__":
    main()
