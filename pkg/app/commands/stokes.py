import click
import inject

from app.commands.common import emit, fail, file_argument, read_vector, tol_option, tolerances
from app.schemas import ConeClass
from app.services.errors import ConeError
from app.services.stokes import StokesService


@click.command("check-stokes")
@file_argument
@tol_option
def check_stokes(file, tol):
    """Classify the Stokes vector in FILE as Interior, Boundary or Outside."""
    try:
        check = inject.instance(StokesService).check(read_vector(file), tolerances(tol))
    except ConeError as e:
        fail(e)

    emit("check-stokes", check, holds=check.cone_class != ConeClass.outside)
