import click
import inject

from app.commands.common import fail, read_matrix, resolution_option, tol_option, tolerances, EXIT_FAILS, EXIT_HOLDS
from app.schemas import CalibrationInput, Payload
from app.services.ecm import CalibrationService
from app.services.errors import ConeError, ConeInputError


@click.command("ecm")
@click.argument("m_file", metavar="M", type=click.Path(dir_okay=False))
@click.argument("aw_file", metavar="AW", type=click.Path(dir_okay=False))
@click.argument("amw_file", metavar="AMW", type=click.Path(dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Also write the report to this file.")
@resolution_option
@tol_option
def ecm(m_file, aw_file, amw_file, out, resolution, tol):
    """Eigenvalue calibration from a reference matrix M and instrument matrices AW, AMW."""
    try:
        data = CalibrationInput(M=read_matrix(m_file), aw=read_matrix(aw_file), amw=read_matrix(amw_file))
        result = inject.instance(CalibrationService).calibrate(data, resolution, tolerances(tol))
    except ConeError as e:
        fail(e)

    document = Payload(command="ecm", data={**result.dict(), "succeeded": result.succeeded}).render()
    if out:
        try:
            with open(out, "w") as f:
                f.write(document + "\n")
        except OSError as e:
            fail(ConeInputError(f"cannot write {out}: {e.strerror}"))

    click.echo(document)
    if not result.succeeded:
        click.echo("error: corrected matrix is not an invertible Mueller matrix", err=True)
    click.get_current_context().exit(EXIT_HOLDS if result.succeeded else EXIT_FAILS)
