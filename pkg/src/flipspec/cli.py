"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on input errors.
"""

from __future__ import annotations

import csv
import io
import sys
from pathlib import Path

import click

from . import acceptance
from .description import DescriptionError, geometry_from_description, load_description
from .geometry import GeometryError
from .reports import decompose_report, dumps, fourier_report, geometry_report, parse_locus, spectrum_report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
DEFAULT_LOCI = ("t=1", "t=2.5", "t=exp(i*pi/7)")


def _emit(name: str, text: str, out: str | None) -> None:
    if out is None:
        click.echo(text, nl=False)
        return
    d = Path(out)
    d.mkdir(parents=True, exist_ok=True)
    (d / name).write_text(text)


def _load(path: str):
    data = load_description(path)
    return data, geometry_from_description(data)


def _options(data: dict, order, tol, loci):
    opts = data.get("options", {})
    order = order if order is not None else opts.get("order", 3)
    tol = tol if tol is not None else opts.get("tol", 1e-9)
    loci = list(loci) or list(opts.get("locus", [])) or list(DEFAULT_LOCI)
    return order, tol, loci


def _input_error(msg: str) -> None:
    click.echo(f"input error: {msg}", err=True)
    sys.exit(EXIT_INPUT)


def _json_only(fmt: str) -> None:
    if fmt != "json":
        _input_error("csv output is only available for the spectrum command")


common_input = click.option("--input", "input_path", required=True, type=click.Path(dir_okay=False),
                            help="geometry description (JSON)")
common_out = click.option("--out", type=click.Path(file_okay=False), default=None,
                          help="directory for report files (default: stdout)")
common_order = click.option("--order", type=click.IntRange(min=0), default=None, help="Novikov truncation order (default 3)")
common_tol = click.option("--tol", type=float, default=None, help="relative tolerance (default 1e-9)")
common_format = click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")


@click.group()
def main() -> None:
    """Checks for three-component C*-wall-crossings of toric varieties."""


@main.command()
@common_input
@common_out
@common_format
def geometry(input_path, out, fmt):
    """Build, validate and dump the geometry."""
    _json_only(fmt)
    try:
        _, g = _load(input_path)
        rep, ok = geometry_report(g)
    except (DescriptionError, GeometryError) as exc:
        _input_error(str(exc))
    _emit("geometry.json", dumps({"pass": ok, **rep}), out)
    sys.exit(EXIT_OK if ok else EXIT_FAIL)


@main.command()
@common_input
@common_out
@common_format
def decompose(input_path, out, fmt):
    """Decomposition matrix, pairing identities and reference basis."""
    _json_only(fmt)
    try:
        _, g = _load(input_path)
        rep, ok = decompose_report(g)
    except (DescriptionError, GeometryError) as exc:
        _input_error(str(exc))
    _emit("decompose.json", dumps({"pass": ok, **rep}), out)
    sys.exit(EXIT_OK if ok else EXIT_FAIL)


@main.command()
@common_input
@common_out
@common_order
@common_format
def fourier(input_path, out, order, fmt):
    """Continuous-FT constants and discrete-FT leading terms."""
    _json_only(fmt)
    try:
        data, g = _load(input_path)
        order, _, _ = _options(data, order, None, ())
        rep, ok = fourier_report(g, order)
    except (DescriptionError, GeometryError) as exc:
        _input_error(str(exc))
    _emit("fourier.json", dumps({"pass": ok, **rep}), out)
    sys.exit(EXIT_OK if ok else EXIT_FAIL)


@main.command()
@common_input
@common_out
@click.option("--locus", "loci", multiple=True, help='spectrum locus such as "t=2.5" (repeatable)')
@common_tol
@common_format
def spectrum(input_path, out, loci, tol, fmt):
    """Compare the predicted Euler-field spectrum with the quantum-ring oracle."""
    try:
        data, g = _load(input_path)
        _, tol, loci = _options(data, None, tol, loci)
        values = [parse_locus(s) for s in loci]
        rep, ok, rows = spectrum_report(g, values, tol)
    except (DescriptionError, GeometryError, ValueError) as exc:
        _input_error(str(exc))
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t_re", "t_im", "re", "im", "multiplicity", "source"])
        w.writerows(rows)
        _emit("spectrum.csv", buf.getvalue(), out)
    else:
        _emit("spectrum.json", dumps({"pass": ok, **rep}), out)
    sys.exit(EXIT_OK if ok else EXIT_FAIL)


@main.command()
@common_out
@common_order
@common_tol
def selftest(out, order, tol):
    """Run the acceptance suite; one line per criterion, JSON report with --out."""
    order = 3 if order is None else order
    tol = 1e-9 if tol is None else tol
    results = acceptance.run_all(tol, order)
    for r in results:
        click.echo(r.line())
    report = acceptance.selftest_report(results, tol, order)
    if out is not None:
        _emit("selftest.json", dumps(report), out)
    sys.exit(EXIT_OK if report["pass"] else EXIT_FAIL)


if __name__ == "__main__":
    main()
