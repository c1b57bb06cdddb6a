import logging
import os

import click
import inject

from app.commands.common import emit, fail, file_argument, read_matrix, resolution_option, tol_option, tolerances
from app.schemas import ApproxPath, ApproxReport, ApproxResult
from app.services.approx import ApproximationService
from app.services.conespec import ConeSpectrumService
from app.services.errors import ConeError, ConeInputError
from app.services.matrix_file import MatrixFileService

logger = logging.getLogger(__name__)

MODES = ("mueller", "invertible", "mueller-inv", "mueller-inv-rho", "primitive")


def output_path(file: str, mode: str) -> str:
    """``<name>.<mode>.txt`` next to the input file."""
    directory, name = os.path.split(file)
    stem = os.path.splitext(name)[0]
    return os.path.join(directory, f"{stem}.{mode}.txt")


@click.command("approx")
@file_argument
@click.option("--mode", type=click.Choice(MODES), default="mueller-inv", show_default=True)
@click.option("--n", "n", type=int, default=1, show_default=True, help="Index of the primitive approximation M + (2/n)·E11.")
@click.option("--epsilon", type=float, default=1.0, show_default=True, help="Spectral margin of the mueller-inv-rho mode.")
@resolution_option
@tol_option
def approx(file, mode, n, epsilon, resolution, tol):
    """Approximate the matrix in FILE by a Mueller, invertible or primitive one."""
    service = inject.instance(ApproximationService)
    try:
        matrix = read_matrix(file)
        tol = tolerances(tol)
        if mode == "mueller":
            result = service.approx_mueller(matrix, resolution, tol, check_primitive=True)
        elif mode == "invertible":
            result = service.make_invertible(matrix, tol)
        elif mode == "mueller-inv":
            result = service.approx_invertible_mueller(matrix, resolution, tol)
        elif mode == "mueller-inv-rho":
            result = service.approx_invertible_mueller_spectral(matrix, epsilon, resolution, tol)
        else:
            output = service.approx_primitive(matrix, n, resolution, tol)
            decision = inject.instance(ConeSpectrumService).is_K_primitive(output, tol, resolution, verified=True)
            result = ApproxResult(output=output, changed=True, e11_shift=2.0 / n, path=ApproxPath.shifted_by_e11, label="M(prim)", primitive=decision.holds)
    except ConeError as e:
        fail(e)

    path = output_path(file, mode)
    try:
        inject.instance(MatrixFileService).write_matrix(path, result.output)
    except OSError as e:
        fail(ConeInputError(f"cannot write {path}: {e.strerror}"))

    emit("approx", ApproxReport(**result.dict(), output_file=path), holds=result.verified is not False)
