import logging
from typing import Any, NoReturn, Optional

import click
import inject
import numpy as np
from pydantic import ValidationError

from app.schemas import Payload, Tolerances
from app.services.errors import ConeError, ConeInputError
from app.services.matrix_file import MatrixFileService

logger = logging.getLogger(__name__)

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_ERROR = 2

resolution_option = click.option("--resolution", type=click.IntRange(min=3), default=None,
                                 help="Grid points per axis of the certificate (default 1001).")
tol_option = click.option("--tol", type=float, default=None,
                          help="Zero tolerance (default MUELLER_CONE_TOL or 1e-9).")
file_argument = click.argument("file", type=click.Path(dir_okay=False))


def tolerances(tol: Optional[float]) -> Tolerances:
    if tol is None:
        return Tolerances.default()
    try:
        return Tolerances(zero_tol=tol)
    except ValidationError:
        raise ConeInputError(f"--tol must be positive, got {tol}")


def read_matrix(path: str) -> np.ndarray:
    return inject.instance(MatrixFileService).read_matrix(path)


def read_vector(path: str) -> np.ndarray:
    return inject.instance(MatrixFileService).read_vector(path)


def emit(command: str, data: Any, holds: bool = True) -> NoReturn:
    """Print the report envelope and leave with the verdict's exit code."""
    click.echo(Payload(command=command, data=data).render())
    click.get_current_context().exit(EXIT_HOLDS if holds else EXIT_FAILS)


def fail(e: ConeError) -> NoReturn:
    logger.debug(repr(e))
    click.echo(f"error: {e}", err=True)
    click.get_current_context().exit(EXIT_ERROR)
