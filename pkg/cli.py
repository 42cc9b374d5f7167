# cli.py
"""
Command-line front end.

    normalize  --expr "d*X"                 normal form in the algebra
    reduce     --expr "Xinv^2*d + Xinv"     class modulo the ideal, and its residue
    expand     --expr "1 + X^2" --at "0,1"  series Σ a_k φ_k and its values
    extract    --f "pow(2,t)" --model delta coefficients by oracle and/or residue
    residue    --g "1/t" --r 2              numeric residue on the configured contour
    liouville  --f "pow(2,-t)" --model delta verdict report
    charlier   --n 2 --a 2 --x 3            Charlier polynomial, all routes

Reports go to stdout (JSON by default, --format text for tables), logs to stderr.
Exit codes: 0 success, 1 hypothesis-violated verdict, 2 errors.
"""

import logging
from pathlib import Path
from typing import Callable, List, Optional

import typer
from pydantic import ValidationError
from typing_extensions import Annotated

from logging_config import configure_logging
from pydantic_schemas.report import Report
from pydantic_schemas.run_config import ExtractMethod
from services.report_service import ReportService, exit_code
from utils.config import load_run_config
from utils.errors import ParseError, WeylSeriesError
from utils.parsing import iter_points

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="weylseries",
    help="Series expansions, residues and Liouville-type checks from (q-)Weyl algebra modules.",
    add_completion=False,
    no_args_is_help=True,
)

ModelOpt = Annotated[Optional[str], typer.Option("--model", help="classical | delta | qa | qb")]
QOpt = Annotated[Optional[str], typer.Option("--q", help="q for the Jackson models, e.g. 0.5 or (0.3+0.1i)")]
LambdaOpt = Annotated[Optional[str], typer.Option("--lambda", help="λ of ∂X - λX∂ = 1 (default: 1, or q)")]
AOpt = Annotated[Optional[float], typer.Option("--a", help="abscissa of the vertical line")]
YOpt = Annotated[Optional[float], typer.Option("--Y", help="half-height of the vertical line")]
HOpt = Annotated[Optional[float], typer.Option("--h", help="trapezoid step on the vertical line")]
SigmaOpt = Annotated[Optional[int], typer.Option("--sigma", help="+1 or -1, the sign in e^(-σ cos 2πt)")]
ROpt = Annotated[Optional[float], typer.Option("--r", help="circle radius")]
NOpt = Annotated[Optional[int], typer.Option("--N", help="circle nodes")]
KOpt = Annotated[Optional[int], typer.Option("--K", help="truncation index")]
FormatOpt = Annotated[Optional[str], typer.Option("--format", help="json | text")]
ConfigOpt = Annotated[Optional[Path], typer.Option("--config", help="JSON file merged under the flags")]
VerboseOpt = Annotated[bool, typer.Option("--verbose", help="log at INFO on stderr")]


def _run(
    flags: dict,
    config_path: Optional[Path],
    verbose: bool,
    action: Callable[[ReportService], Report],
) -> None:
    configure_logging("INFO" if verbose else "WARNING")
    try:
        config = load_run_config(flags, config_path)
        report = action(ReportService(config))
    except ParseError as exc:
        typer.echo(f"parse error: {exc.describe()}", err=True)
        raise typer.Exit(code=2)
    except ValidationError as exc:
        typer.echo(f"invalid configuration: {exc}", err=True)
        raise typer.Exit(code=2)
    except (WeylSeriesError, ValueError) as exc:
        logger.error(f"Command failed: {exc}")
        typer.echo(f"error: {exc}", err=True)
        raise typer.Exit(code=2)
    except Exception as exc:
        # exit 1 is reserved for a hypothesis-violated verdict
        logger.exception(f"Unexpected failure: {exc}")
        typer.echo(f"internal error: {exc}", err=True)
        raise typer.Exit(code=2)
    typer.echo(report.render(config.format.value))
    code = exit_code(report)
    if code:
        raise typer.Exit(code=code)


def _points(text: Optional[str]) -> List[complex]:
    return list(iter_points(text)) if text else []


@app.command()
def normalize(
    expr: Annotated[str, typer.Option("--expr", help="Weyl expression")],
    exact: Annotated[bool, typer.Option("--exact", help="exact rational arithmetic")] = False,
    model: ModelOpt = None,
    q: QOpt = None,
    lam: LambdaOpt = None,
    fmt: FormatOpt = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = False,
):
    """Normal form of a Weyl-algebra expression."""
    flags = {"model": model, "q": q, "lambda": lam, "format": fmt}
    _run(flags, config, verbose, lambda service: service.normalize(expr, exact))


@app.command()
def reduce(
    expr: Annotated[str, typer.Option("--expr", help="Weyl expression")],
    exact: Annotated[bool, typer.Option("--exact", help="exact rational arithmetic")] = False,
    model: ModelOpt = None,
    q: QOpt = None,
    lam: LambdaOpt = None,
    fmt: FormatOpt = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = False,
):
    """Class modulo the left ideal generated by d, with its residue."""
    flags = {"model": model, "q": q, "lambda": lam, "format": fmt}
    _run(flags, config, verbose, lambda service: service.reduce(expr, exact))


@app.command()
def expand(
    expr: Annotated[str, typer.Option("--expr", help="Weyl expression")],
    p: Annotated[Optional[str], typer.Option("--p", help="generator p (default 1)")] = None,
    at: Annotated[Optional[str], typer.Option("--at", help="evaluation points, comma separated")] = None,
    model: ModelOpt = None,
    q: QOpt = None,
    K: KOpt = None,
    fmt: FormatOpt = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = False,
):
    """Series of the class of an expression in the basis X^k·p."""
    flags = {"model": model, "q": q, "K": K, "format": fmt}
    _run(flags, config, verbose, lambda service: service.expand(expr, p, _points(at)))


@app.command()
def extract(
    f: Annotated[str, typer.Option("--f", help="function expression")],
    p: Annotated[Optional[str], typer.Option("--p", help="generator p (default 1)")] = None,
    method: Annotated[ExtractMethod, typer.Option("--method")] = ExtractMethod.oracle,
    model: ModelOpt = None,
    q: QOpt = None,
    a: AOpt = None,
    Y: YOpt = None,
    h: HOpt = None,
    sigma: SigmaOpt = None,
    r: ROpt = None,
    N: NOpt = None,
    K: KOpt = None,
    fmt: FormatOpt = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = False,
):
    """Coefficients a_0..a_K of f."""
    flags = {
        "model": model, "q": q, "a": a, "Y": Y, "h": h, "sigma": sigma,
        "r": r, "N": N, "K": K, "format": fmt,
    }
    _run(flags, config, verbose, lambda service: service.extract(f, p, method))


@app.command()
def residue(
    g: Annotated[str, typer.Option("--g", help="function expression")],
    model: ModelOpt = None,
    q: QOpt = None,
    a: AOpt = None,
    Y: YOpt = None,
    h: HOpt = None,
    sigma: SigmaOpt = None,
    r: ROpt = None,
    N: NOpt = None,
    fmt: FormatOpt = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = False,
):
    """Numeric residue of g (vertical line for delta, circle otherwise)."""
    flags = {
        "model": model, "q": q, "a": a, "Y": Y, "h": h, "sigma": sigma,
        "r": r, "N": N, "format": fmt,
    }
    _run(flags, config, verbose, lambda service: service.residue(g))


@app.command()
def liouville(
    f: Annotated[str, typer.Option("--f", help="function expression")],
    p: Annotated[Optional[str], typer.Option("--p", help="1-periodic generator (delta only)")] = None,
    model: ModelOpt = None,
    q: QOpt = None,
    a: AOpt = None,
    Y: YOpt = None,
    h: HOpt = None,
    sigma: SigmaOpt = None,
    r: ROpt = None,
    N: NOpt = None,
    K: KOpt = None,
    fmt: FormatOpt = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = False,
):
    """Verdict report for the Liouville-type statement of the model."""
    flags = {
        "model": model, "q": q, "a": a, "Y": Y, "h": h, "sigma": sigma,
        "r": r, "N": N, "K": K, "format": fmt,
    }
    _run(flags, config, verbose, lambda service: service.liouville(f, p))


@app.command()
def charlier(
    n: Annotated[int, typer.Option("--n", help="degree")],
    a: Annotated[str, typer.Option("--a", help="parameter a != 0")],
    x: Annotated[Optional[str], typer.Option("--x", help="evaluation points, comma separated")] = None,
    fmt: FormatOpt = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = False,
):
    """Charlier polynomial C_n(x; a) by every route, with their agreement."""

    def action(service: ReportService) -> Report:
        (parameter,) = list(iter_points(a)) or [0]
        return service.charlier(n, _real_if_possible(parameter), _points(x))

    _run({"format": fmt}, config, verbose, action)


def _real_if_possible(value: complex):
    value = complex(value)
    return value.real if value.imag == 0 else value


def main() -> None:
    app()


if __name__ == "__main__":
    main()
