import logging
import logging.config
import os

import click

from app.commands import approx, calibration, fixtures, mueller, spectral, stokes
from app.config import settings

log_levels = {
    "prod": logging.WARNING,
    "test": logging.INFO,
}

# setup loggers
log_file_path = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'logging.conf')
logger = logging.getLogger(__name__)


@click.group(help="Stokes cone, Mueller matrix and eigenvalue calibration toolkit.")
@click.version_option(settings.version, prog_name="mueller-cone")
@click.option("--verbose", is_flag=True, help="Log debug output to standard error.")
def cli(verbose):
    logging.config.fileConfig(log_file_path, disable_existing_loggers=False)
    logging.getLogger("app").setLevel(logging.DEBUG if verbose else log_levels.get(settings.env, logging.INFO))
    logger.debug(f"zero tolerance {settings.zero_tol}, grid resolution {settings.grid.resolution}")


cli.add_command(stokes.check_stokes)
cli.add_command(mueller.check_mueller)
cli.add_command(mueller.screen)
cli.add_command(mueller.norm)
cli.add_command(mueller.qgrid)
cli.add_command(spectral.spectral)
cli.add_command(spectral.irreducible)
cli.add_command(spectral.primitive)
cli.add_command(spectral.eigen)
cli.add_command(spectral.power)
cli.add_command(approx.approx)
cli.add_command(calibration.ecm)
cli.add_command(fixtures.fixtures)

if __name__ == "__main__":
    cli()
