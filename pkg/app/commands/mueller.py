import csv
import logging

import click
import inject

from app.commands.common import EXIT_ERROR, emit, fail, file_argument, read_matrix, resolution_option, tol_option, tolerances
from app.schemas import NormReport
from app.services.errors import ConeError
from app.services.mueller import MuellerService
from app.services.numkernel import NumericKernelService

logger = logging.getLogger(__name__)

CSV_HEADER = ("x", "y", "hemisphere", "q", "b")


@click.command("check-mueller")
@file_argument
@resolution_option
@tol_option
def check_mueller(file, resolution, tol):
    """Sampled certificate that the matrix in FILE maps the Stokes cone into itself."""
    try:
        report = inject.instance(MuellerService).is_mueller(read_matrix(file), resolution, tolerances(tol))
    except ConeError as e:
        fail(e)

    emit("check-mueller", report, holds=report.verdict)


@click.command("screen")
@file_argument
@tol_option
def screen(file, tol):
    """Necessary conditions only; failing one rules FILE out, passing all proves nothing."""
    try:
        conditions = inject.instance(MuellerService).necessary_conditions(read_matrix(file), tolerances(tol))
    except ConeError as e:
        fail(e)

    emit("screen", {**conditions.dict(), "passed": conditions.passed}, holds=conditions.passed)


@click.command("norm")
@file_argument
@tol_option
def norm(file, tol):
    """Spectral norm, determinant and normalized form of FILE."""
    mathService = inject.instance(NumericKernelService)
    try:
        matrix = read_matrix(file)
        tol = tolerances(tol)
        normalized = None
        if abs(matrix[0, 0]) > tol.zero_tol:
            normalized = inject.instance(MuellerService).normalize(matrix, tol)
        report = NormReport(spectral_norm=mathService.spectral_norm(matrix), determinant=mathService.determinant(matrix), normalized=normalized)
    except ConeError as e:
        fail(e)

    emit("norm", report)


@click.command("qgrid")
@file_argument
@resolution_option
@tol_option
@click.option("--out", type=click.Path(dir_okay=False), default="-", help="CSV destination, standard output by default.")
def qgrid(file, resolution, tol, out):
    """Dump q and b over both hemisphere grids as CSV for plotting."""
    try:
        chunks = inject.instance(MuellerService).sample_chunks(read_matrix(file), resolution, tolerances(tol))
        stream = click.open_file(out, "w")
    except ConeError as e:
        fail(e)
    except OSError as e:
        click.echo(f"error: cannot write {out}: {e.strerror}", err=True)
        click.get_current_context().exit(EXIT_ERROR)

    with stream:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        rows = 0
        for chunk in chunks:
            for x, y, hemisphere, q, b in zip(chunk.x, chunk.y, chunk.hemisphere, chunk.q, chunk.b):
                writer.writerow((repr(float(x)), repr(float(y)), int(hemisphere), repr(float(q) + 0.0), repr(float(b) + 0.0)))
            rows += chunk.x.shape[0]
    logger.info(f"wrote {rows} grid rows")
