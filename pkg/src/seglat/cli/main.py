"""
seglat command-line interface.

Results go to stdout and to the artifact files; rich summaries and log
records go to stderr. Exit codes: 0 success, 1 failed verification,
2 usage or parameter error, 3 I/O or serialisation error.
"""

from contextlib import contextmanager
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Sequence

import orjson
import structlog
import typer
from click.core import ParameterSource
from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from seglat.analytic import (
    BlockParams,
    block_event_A_prob,
    block_event_C_prob,
    block_r,
    branching_means,
    classify_region,
    collinear_corr_independent,
    collinear_pair_prob_independent,
    collinear_pair_prob_one_choice,
    compass_spectral_radius,
    compass_threshold,
    format_exact,
    good_block_lower_bound,
    lambda_one_choice,
    perp_pair_prob_independent,
    perp_pair_prob_one_choice,
    subcritical_bound,
    vertex_blue_prob_independent,
    vertex_blue_prob_one_choice,
)
from seglat.cli.render import render_svg
from seglat.cli.run_config import RunConfig
from seglat.cli.verify import GROUPS, VerifySettings, run_verify
from seglat.core.config import LoggingConfig, get_config, set_config
from seglat.core.exceptions import ConfigurationError, ParameterError, SeglatError, SerializationError
from seglat.lattice.geometry import Boundary
from seglat.lattice.rng import RngStream, StreamRole
from seglat.lattice.sites import sample_sites, site_config_from_json, site_config_to_json
from seglat.models.coloring import ModelTag, blue_edge_set_from_json, blue_edge_set_to_json
from seglat.montecarlo import (
    LocalEvent,
    LocalEventSpec,
    ModelSpec,
    ReplicateRunner,
    block_event_mc,
    critical_search,
    estimate_local_event,
    estimate_row,
    frontier_sweep,
    geometry_for,
    mixed_curve_estimate,
    quenched_wrapping_probability,
    sample_edges,
    sweep_rows,
    wrapping_probability,
    write_csv,
    write_json,
)

EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_IO = 3

app = typer.Typer(
    name="seglat",
    help="Segment percolation on Z^d: sampling, estimation and verification",
    no_args_is_help=True,
    add_completion=False,
)
console = Console(stderr=True)
logger = structlog.get_logger(__name__)


@dataclass
class CliState:
    run_config: Optional[RunConfig] = None
    save_config: Optional[Path] = None


@contextmanager
def _guard() -> Iterator[None]:
    """Translate library errors into exit codes."""
    try:
        yield
    except (SerializationError, OSError) as e:
        console.print(f"[red]I/O error:[/red] {escape(str(e))}")
        raise typer.Exit(EXIT_IO) from e
    except (SeglatError, ValidationError) as e:
        console.print(f"[red]Error:[/red] {escape(str(e))}")
        raise typer.Exit(EXIT_USAGE) from e


def _resolve(ctx: typer.Context, **given: Any) -> Dict[str, Any]:
    """Options of this call; a loaded RunConfig fills every option not set on the command line."""
    state: CliState = ctx.obj or CliState()
    values = dict(given)
    run = state.run_config
    if run is not None:
        if run.command != ctx.info_name:
            raise ConfigurationError(
                f"RunConfig is for '{run.command}', not '{ctx.info_name}'", config_key="command"
            )
        unknown = sorted(set(run.options) - set(values))
        if unknown:
            raise ConfigurationError(f"Unknown options in RunConfig: {', '.join(unknown)}", config_key="options")
        for name, value in run.options.items():
            if ctx.get_parameter_source(name) != ParameterSource.COMMANDLINE:
                values[name] = value
    if state.save_config is not None:
        RunConfig.from_options(ctx.info_name or "", values).to_yaml(state.save_config)
        logger.info("RunConfig saved", path=str(state.save_config), command=ctx.info_name)
    return values


def _require(values: Dict[str, Any], *names: str) -> None:
    for name in names:
        if values.get(name) is None:
            flag = "lambda" if name == "lam" else name.replace("_", "-")
            raise ParameterError(f"Option --{flag} is required", field=name)


def _numbers(text: Any, name: str, kind: type = float) -> List[Any]:
    """'0.5,0.6' (or a YAML list) as a list of numbers."""
    items = text if isinstance(text, (list, tuple)) else str(text).split(",")
    try:
        return [kind(item) for item in items if str(item).strip()]
    except ValueError as e:
        raise ParameterError(f"Cannot parse {name}", field=name, value=text) from e


def _exact(text: Optional[str], name: str) -> Optional[Fraction]:
    if text is None:
        return None
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as e:
        raise ParameterError(f"Cannot parse {name} as a number", field=name, value=text) from e


def _spec(values: Dict[str, Any]) -> ModelSpec:
    _require(values, "model", "p")
    return ModelSpec(
        model=ModelTag(values["model"]),
        d=values["d"],
        p=values["p"],
        lam=values.get("lam"),
        boundary=Boundary(values.get("boundary") or Boundary.TORUS),
    )


def _seed(values: Dict[str, Any]) -> int:
    seed = values.get("seed")
    return int(seed) if seed is not None else get_config().simulation.default_master_seed


def _table(title: str, columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    table = Table(title=title)
    for column in columns:
        table.add_column(column)
    for row in rows:
        table.add_row(*(str(cell) for cell in row))
    console.print(table)


def _emit(values: Dict[str, Any], rows: List[Dict[str, Any]], result: Any = None) -> None:
    if values.get("csv") is not None:
        write_csv(rows, Path(values["csv"]))
    if values.get("json") is not None:
        write_json(result if result is not None else rows, Path(values["json"]), full=bool(values.get("full")))


def _search_row(spec: ModelSpec, L: Optional[int], metric: str, value: float, halfwidth: float, replicates: int, seed: int) -> Dict[str, Any]:
    """CSV row of a search result; the stderr column carries the CI half-width."""
    return {
        "model": spec.model,
        "d": spec.d,
        "L": L,
        "boundary": spec.boundary,
        "p": spec.p,
        "lambda": spec.lam,
        "replicates": replicates,
        "metric": metric,
        "mean": value,
        "stderr": halfwidth,
        "master_seed": seed,
    }


@app.callback()
def main(
    ctx: typer.Context,
    threads: Optional[int] = typer.Option(None, "--threads", envvar="SEGLAT_THREADS", min=1, help="Worker processes"),
    log_level: Optional[str] = typer.Option(None, "--log-level", help="DEBUG, INFO, WARNING, ERROR"),
    config: Optional[Path] = typer.Option(None, "--config", help="RunConfig YAML to replay"),
    save_config: Optional[Path] = typer.Option(None, "--save-config", help="Write the effective RunConfig here"),
) -> None:
    """Segment percolation toolkit."""
    with _guard():
        settings = get_config()
        updates: Dict[str, Any] = {}
        if threads is not None:
            updates["simulation"] = settings.simulation.model_copy(update={"threads": threads})
        if log_level is not None:
            updates["logging"] = LoggingConfig(
                log_level=log_level,
                log_format=settings.logging.log_format,
                include_timestamps=settings.logging.include_timestamps,
            )
        if updates:
            settings = settings.model_copy(update=updates)
            set_config(settings)
        settings.logging.setup_logging()
        ctx.obj = CliState(
            run_config=RunConfig.from_yaml(config) if config is not None else None,
            save_config=save_config,
        )


@app.command()
def sample(
    ctx: typer.Context,
    model: Optional[ModelTag] = typer.Option(None, "--model", help="Colouring rule"),
    d: int = typer.Option(2, "--d", help="Dimension"),
    L: int = typer.Option(64, "--L", help="Side length"),
    boundary: Boundary = typer.Option(Boundary.TORUS, "--boundary"),
    p: Optional[float] = typer.Option(None, "--p", help="Site density"),
    lam: Optional[float] = typer.Option(None, "--lambda", help="Segment colour probability"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    out_dir: Path = typer.Option(Path("."), "--out-dir", help="Where sites.json and edges.json go"),
) -> None:
    """Sample one site configuration and its blue edges."""
    with _guard():
        values = _resolve(ctx, model=model, d=d, L=L, boundary=boundary, p=p, lam=lam, seed=seed, out_dir=out_dir)
        spec = _spec(values)
        geometry = geometry_for(spec, values["L"])
        stream = RngStream(master_seed=_seed(values), stream_id=0)
        sites = sample_sites(geometry, spec.p, stream.seed_for(StreamRole.SITES))
        edges = sample_edges(spec, geometry, stream, sites)

        target = Path(values["out_dir"])
        target.mkdir(parents=True, exist_ok=True)
        (target / "sites.json").write_bytes(site_config_to_json(sites))
        (target / "edges.json").write_bytes(blue_edge_set_to_json(edges))
        _table(
            "Sample",
            ["model", "sites", "occupied", "blue edges", "edge fraction"],
            [[spec.model.value, geometry.n_sites, sites.occupied_count, edges.edge_count, f"{edges.edge_fraction():.4f}"]],
        )
        typer.echo(str(target / "sites.json"))
        typer.echo(str(target / "edges.json"))


@app.command()
def render(
    ctx: typer.Context,
    edges: Optional[Path] = typer.Option(None, "--edges", help="BlueEdgeSet JSON"),
    sites: Optional[Path] = typer.Option(None, "--sites", help="SiteConfig JSON (draws occupied sites)"),
    out: Path = typer.Option(Path("sample.svg"), "--out"),
    highlight_left: bool = typer.Option(False, "--highlight-left", help="Darken clusters touching x = 0"),
    omit_plain: bool = typer.Option(False, "--omit-plain", help="Skip occupied sites without blue edges"),
    cell: int = typer.Option(10, "--cell", min=2, help="Pixels between sites"),
) -> None:
    """Draw a free two-dimensional sample as SVG."""
    with _guard():
        values = _resolve(
            ctx, edges=edges, sites=sites, out=out, highlight_left=highlight_left, omit_plain=omit_plain, cell=cell
        )
        _require(values, "edges")
        blue = blue_edge_set_from_json(Path(values["edges"]).read_bytes())
        config = site_config_from_json(Path(values["sites"]).read_bytes()) if values.get("sites") else None
        svg = render_svg(
            blue,
            config,
            highlight_left=bool(values["highlight_left"]),
            omit_plain=bool(values["omit_plain"]),
            cell=int(values["cell"]),
        )
        target = Path(values["out"])
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(svg, encoding="utf-8")
        typer.echo(str(target))


@app.command()
def verify(
    ctx: typer.Context,
    only: Optional[List[str]] = typer.Option(None, "--only", help=f"Check groups: {', '.join(GROUPS)}"),
    quick: bool = typer.Option(False, "--quick", help="Small replicate counts"),
    inject_fault: Optional[str] = typer.Option(None, "--inject-fault", help="Corrupt a coupling to test the harness"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    json: Optional[Path] = typer.Option(None, "--json", help="Write the report as JSON"),
) -> None:
    """Run the acceptance checks; exit 1 if any fails."""
    with _guard():
        values = _resolve(ctx, only=only, quick=quick, inject_fault=inject_fault, seed=seed, json=json)
        with ReplicateRunner() as runner:
            settings = VerifySettings(
                master_seed=_seed(values),
                quick=bool(values["quick"]),
                inject_fault=values.get("inject_fault"),
                runner=runner,
            )
            report = run_verify(settings, values.get("only"))

        for check in report.checks:
            typer.echo(orjson.dumps(check.model_dump()).decode())
        _table(
            "Verification",
            ["group", "check", "anchor", "result", "detail"],
            [
                [c.group, c.name, c.anchor, "[green]pass[/green]" if c.passed else "[red]FAIL[/red]", c.detail]
                for c in report.checks
            ],
        )
        if values.get("json") is not None:
            write_json(report, Path(values["json"]), full=True)
    if not report.passed:
        console.print(f"[red]{len(report.failures)} check(s) failed[/red]")
        raise typer.Exit(EXIT_VERIFY)


@app.command()
def estimate(
    ctx: typer.Context,
    model: Optional[ModelTag] = typer.Option(None, "--model"),
    d: int = typer.Option(2, "--d"),
    p: Optional[float] = typer.Option(None, "--p"),
    lam: Optional[float] = typer.Option(None, "--lambda"),
    event: LocalEvent = typer.Option(LocalEvent.EDGE_BLUE, "--event"),
    k: Optional[int] = typer.Option(None, "--k", help="Offset for pair_collinear_distance"),
    L: int = typer.Option(256, "--L"),
    replicates: int = typer.Option(100, "--replicates"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    csv: Optional[Path] = typer.Option(None, "--csv"),
    json: Optional[Path] = typer.Option(None, "--json"),
    full: bool = typer.Option(False, "--full", help="Keep per-replicate values in JSON"),
) -> None:
    """Estimate a local event probability on the torus."""
    with _guard():
        values = _resolve(
            ctx, model=model, d=d, p=p, lam=lam, event=event, k=k, L=L,
            replicates=replicates, seed=seed, csv=csv, json=json, full=full,
        )
        spec = _spec(values)
        local = LocalEventSpec(kind=LocalEvent(values["event"]), k=values.get("k"))
        master_seed = _seed(values)
        with ReplicateRunner() as runner:
            result = estimate_local_event(
                spec, local, values["L"], values["replicates"], master_seed, runner,
                keep_values=bool(values["full"]), strict=False,
            )
        rows = [estimate_row(spec.model, spec.d, values["L"], spec.p, spec.lam, str(local), result, spec.boundary)]
        if result.correlation is not None:
            rows.append(
                {**rows[0], "metric": f"correlation({local.k})", "mean": result.correlation, "stderr": result.correlation_stderr}
            )
        _emit(values, rows, result)
        for row in rows:
            typer.echo(f"{row['metric']} {row['mean']!r} {row['stderr']!r}")


@app.command()
def wrap(
    ctx: typer.Context,
    model: Optional[ModelTag] = typer.Option(None, "--model"),
    d: int = typer.Option(2, "--d"),
    p: Optional[float] = typer.Option(None, "--p"),
    lam: Optional[float] = typer.Option(None, "--lambda"),
    L: int = typer.Option(64, "--L"),
    replicates: int = typer.Option(100, "--replicates"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    site_seed: Optional[int] = typer.Option(None, "--site-seed", help="Fix the sites (quenched)"),
    csv: Optional[Path] = typer.Option(None, "--csv"),
    json: Optional[Path] = typer.Option(None, "--json"),
    full: bool = typer.Option(False, "--full"),
) -> None:
    """Probability that a blue cluster wraps around the torus."""
    with _guard():
        values = _resolve(
            ctx, model=model, d=d, p=p, lam=lam, L=L, replicates=replicates,
            seed=seed, site_seed=site_seed, csv=csv, json=json, full=full,
        )
        spec = _spec(values)
        master_seed = _seed(values)
        with ReplicateRunner() as runner:
            if values.get("site_seed") is not None:
                result = quenched_wrapping_probability(
                    spec, values["L"], int(values["site_seed"]), values["replicates"], master_seed, runner
                )
                metric = "wrap_prob_quenched"
            else:
                result = wrapping_probability(
                    spec, values["L"], values["replicates"], master_seed, runner, keep_values=bool(values["full"])
                )
                metric = "wrap_prob"
        rows = [estimate_row(spec.model, spec.d, values["L"], spec.p, spec.lam, metric, result, spec.boundary)]
        _emit(values, rows, result)
        typer.echo(f"{metric} {result.mean!r} {result.stderr!r}")


@app.command()
def critical(
    ctx: typer.Context,
    model: Optional[ModelTag] = typer.Option(None, "--model"),
    d: int = typer.Option(2, "--d"),
    p: Optional[float] = typer.Option(None, "--p", help="Fixed p when varying lambda"),
    lam: Optional[float] = typer.Option(None, "--lambda", help="Fixed lambda when varying p"),
    vary: str = typer.Option("p", "--vary", help="p or lambda"),
    bracket: str = typer.Option("0.3,0.9", "--bracket"),
    L: str = typer.Option("64,128", "--L", help="Comma-separated side lengths"),
    replicates: int = typer.Option(200, "--replicates"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    target: float = typer.Option(0.5, "--target"),
    tol: float = typer.Option(0.005, "--tol"),
    csv: Optional[Path] = typer.Option(None, "--csv"),
    json: Optional[Path] = typer.Option(None, "--json"),
) -> None:
    """Crossing point of the wrap probability."""
    with _guard():
        values = _resolve(
            ctx, model=model, d=d, p=p, lam=lam, vary=vary, bracket=bracket, L=L,
            replicates=replicates, seed=seed, target=target, tol=tol, csv=csv, json=json,
        )
        bounds = _numbers(values["bracket"], "bracket")
        if len(bounds) != 2:
            raise ParameterError("Bracket needs two values", field="bracket", value=values["bracket"])
        low, high = bounds
        if values["vary"] == "p" and values.get("p") is None:
            values["p"] = low
        if values["vary"] == "lambda" and values.get("lam") is None:
            values["lam"] = low
        spec = _spec(values)
        master_seed = _seed(values)
        with ReplicateRunner() as runner:
            result = critical_search(
                spec, values["vary"], (low, high), _numbers(values["L"], "L", int),
                values["replicates"], master_seed, target=values["target"], tol=values["tol"], runner=runner,
            )
        row = _search_row(
            spec, max(result.L_list), f"critical_{result.parameter}", result.estimate,
            result.ci_halfwidth, values["replicates"], master_seed,
        )
        _emit(values, [row], result)
        _table(
            "Crossing",
            ["L", result.parameter],
            [[L_, f"{value:.4f}"] for L_, value in sorted(result.per_L.items())],
        )
        typer.echo(f"{result.parameter} {result.estimate!r} +- {result.ci_halfwidth!r}")


@app.command()
def sweep(
    ctx: typer.Context,
    d: int = typer.Option(2, "--d"),
    p_grid: str = typer.Option("0.6,0.8,1.0", "--p-grid"),
    lam_grid: str = typer.Option("0.2,0.4,0.6,0.8", "--lambda-grid"),
    L: int = typer.Option(64, "--L"),
    replicates: int = typer.Option(100, "--replicates"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    csv: Optional[Path] = typer.Option(None, "--csv"),
    json: Optional[Path] = typer.Option(None, "--json"),
    full: bool = typer.Option(False, "--full"),
) -> None:
    """Independent-model wrap probability over a (p, lambda) grid."""
    with _guard():
        values = _resolve(
            ctx, d=d, p_grid=p_grid, lam_grid=lam_grid, L=L, replicates=replicates,
            seed=seed, csv=csv, json=json, full=full,
        )
        with ReplicateRunner() as runner:
            result = frontier_sweep(
                values["d"], _numbers(values["p_grid"], "p_grid"), _numbers(values["lam_grid"], "lambda_grid"),
                values["L"], values["replicates"], _seed(values), runner,
            )
        rows = sweep_rows(result)
        _emit(values, rows, result)
        _table(
            "Wrap probability",
            ["p", "lambda", "wrap", "stderr"],
            [[r.p, r.lam, f"{r.wrap_prob.mean:.3f}", f"{r.wrap_prob.stderr:.3f}"] for r in result.rows],
        )
        typer.echo(f"{len(result.rows)} grid points")


@app.command("mixed-curve")
def mixed_curve(
    ctx: typer.Context,
    d: int = typer.Option(2, "--d"),
    p_grid: str = typer.Option("0.65,0.75,0.85,0.95,1.0", "--p-grid"),
    L: int = typer.Option(64, "--L"),
    replicates: int = typer.Option(100, "--replicates"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    tol: float = typer.Option(0.005, "--tol"),
    csv: Optional[Path] = typer.Option(None, "--csv"),
    json: Optional[Path] = typer.Option(None, "--json"),
    full: bool = typer.Option(False, "--full"),
) -> None:
    """Critical curve of the mixed site-bond model."""
    with _guard():
        values = _resolve(
            ctx, d=d, p_grid=p_grid, L=L, replicates=replicates, seed=seed, tol=tol, csv=csv, json=json, full=full
        )
        master_seed = _seed(values)
        with ReplicateRunner() as runner:
            result = mixed_curve_estimate(
                values["d"], _numbers(values["p_grid"], "p_grid"), values["L"], values["replicates"],
                master_seed, tol=values["tol"], runner=runner,
            )
        rows = sweep_rows(result)
        for point in result.curve:
            spec = ModelSpec(model=ModelTag.MIXED, d=values["d"], p=point.p, lam=point.lambda_c)
            rows.append(
                _search_row(spec, values["L"], "lambda_c", point.lambda_c, point.ci_halfwidth, values["replicates"], master_seed)
            )
        _emit(values, rows, result)
        _table(
            "Mixed curve",
            ["p", "lambda_c", "halfwidth", "pinned"],
            [[c.p, f"{c.lambda_c:.4f}", f"{c.ci_halfwidth:.4f}", c.pinned] for c in result.curve],
        )
        for point in result.curve:
            typer.echo(f"{point.p!r} {point.lambda_c!r} {point.ci_halfwidth!r}")


@app.command()
def blockcheck(
    ctx: typer.Context,
    r: int = typer.Option(1, "--r", help="Block scale"),
    q: Optional[float] = typer.Option(None, "--q", help="1 - p"),
    lam: Optional[float] = typer.Option(None, "--lambda"),
    replicates: int = typer.Option(2000, "--replicates"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    json: Optional[Path] = typer.Option(None, "--json"),
) -> None:
    """Block-event formulas against simulation."""
    with _guard():
        values = _resolve(ctx, r=r, q=q, lam=lam, replicates=replicates, seed=seed, json=json)
        _require(values, "q", "lam")
        bp = BlockParams.from_q(r=values["r"], q=values["q"], lam=values["lam"])
        with ReplicateRunner() as runner:
            mc = block_event_mc(bp, values["replicates"], _seed(values), runner)

        lines = [("A_e1", block_event_A_prob(bp), mc.a_e1)]
        if mc.c_e1 is not None and mc.good is not None:
            lines.append(("C_e1", block_event_C_prob(bp), mc.c_e1))
            lines.append(("good (lower bound)", good_block_lower_bound(bp), mc.good))
        table_rows = []
        for name, formula, estimate in lines:
            agree = estimate.within(formula, 3.0) if name != "good (lower bound)" else estimate.mean + 3.0 * estimate.stderr >= formula
            table_rows.append([name, f"{formula:.6f}", f"{estimate.mean:.6f}", f"{estimate.stderr:.6f}", agree])
            typer.echo(f"{name} {formula!r} {estimate.mean!r} {estimate.stderr!r}")
        _table("Block events", ["event", "formula", "mc", "stderr", "within 3 sigma"], table_rows)
        if values.get("json") is not None:
            write_json(mc, Path(values["json"]))


class Formula(str, Enum):
    LAMBDA_ONE_CHOICE = "lambda-one-choice"
    VERTEX_ONE_CHOICE = "vertex-one-choice"
    COLLINEAR_ONE_CHOICE = "collinear-one-choice"
    PERP_ONE_CHOICE = "perp-one-choice"
    VERTEX_INDEPENDENT = "vertex-independent"
    COLLINEAR_INDEPENDENT = "collinear-independent"
    PERP_INDEPENDENT = "perp-independent"
    COLLINEAR_CORR = "collinear-corr"
    BRANCHING = "branching"
    SUBCRITICAL_BOUND = "subcritical-bound"
    COMPASS_RADIUS = "compass-radius"
    COMPASS_THRESHOLD = "compass-threshold"
    BLOCK_R = "block-r"
    BLOCK_A = "block-a"
    BLOCK_C = "block-c"
    GOOD_BLOCK = "good-block"
    REGION = "region"


def _evaluate(formula: Formula, values: Dict[str, Any]) -> str:
    d = values["d"]
    p = _exact(values.get("p"), "p")
    lam = _exact(values.get("lam"), "lambda")

    def need(*names: str) -> None:
        _require({"p": p, "lam": lam, "k": values.get("k"), "q": values.get("q")}, *names)

    if formula == Formula.LAMBDA_ONE_CHOICE:
        return format_exact(lambda_one_choice(d))
    if formula == Formula.VERTEX_ONE_CHOICE:
        need("p")
        return format_exact(vertex_blue_prob_one_choice(d, p))
    if formula == Formula.COLLINEAR_ONE_CHOICE:
        need("p")
        return format_exact(collinear_pair_prob_one_choice(d, p))
    if formula == Formula.PERP_ONE_CHOICE:
        need("p")
        return format_exact(perp_pair_prob_one_choice(d, p))
    if formula == Formula.VERTEX_INDEPENDENT:
        need("p", "lam")
        return format_exact(vertex_blue_prob_independent(d, p, lam))
    if formula == Formula.COLLINEAR_INDEPENDENT:
        need("p", "lam")
        return format_exact(collinear_pair_prob_independent(p, lam))
    if formula == Formula.PERP_INDEPENDENT:
        need("lam")
        return format_exact(perp_pair_prob_independent(lam))
    if formula == Formula.COLLINEAR_CORR:
        need("p", "k")
        return format_exact(collinear_corr_independent(p, int(values["k"])))
    if formula == Formula.BRANCHING:
        need("p", "lam")
        means = branching_means(d, p, lam)
        return f"{format_exact(means.mu1)} {format_exact(means.mu2)} {str(means.subcritical).lower()}"
    if formula == Formula.SUBCRITICAL_BOUND:
        need("p")
        return format_exact(subcritical_bound(d, p))
    if formula == Formula.COMPASS_RADIUS:
        need("p")
        return format_exact(compass_spectral_radius(d, float(p)))
    if formula == Formula.COMPASS_THRESHOLD:
        return format_exact(compass_threshold(d))
    if formula == Formula.REGION:
        need("p", "lam")
        curve = values.get("mixed_lambda")
        return classify_region(d, p, lam, mixed_curve=None if curve is None else lambda _: float(curve)).value

    need("q")
    q = float(values["q"])
    if formula == Formula.BLOCK_R:
        return str(block_r(1.0 - q))
    need("lam")
    bp = BlockParams.from_q(r=values["r"], q=q, lam=float(lam))
    if formula == Formula.BLOCK_A:
        return format_exact(block_event_A_prob(bp))
    if formula == Formula.BLOCK_C:
        return format_exact(block_event_C_prob(bp))
    return format_exact(good_block_lower_bound(bp))


@app.command()
def analytic(
    ctx: typer.Context,
    formula: Optional[Formula] = typer.Option(None, "--formula"),
    d: int = typer.Option(2, "--d"),
    p: Optional[str] = typer.Option(None, "--p", help="Exact when given as a fraction or decimal"),
    lam: Optional[str] = typer.Option(None, "--lambda"),
    k: Optional[int] = typer.Option(None, "--k"),
    r: int = typer.Option(1, "--r"),
    q: Optional[float] = typer.Option(None, "--q"),
    mixed_lambda: Optional[float] = typer.Option(
        None, "--mixed-curve", min=0.0, max=1.0, help="Mixed-model critical lambda at p, for --formula region"
    ),
) -> None:
    """Evaluate a closed form; rationals are printed exactly."""
    with _guard():
        values = _resolve(ctx, formula=formula, d=d, p=p, lam=lam, k=k, r=r, q=q, mixed_lambda=mixed_lambda)
        _require(values, "formula")
        typer.echo(_evaluate(Formula(values["formula"]), values))


if __name__ == "__main__":
    app()
