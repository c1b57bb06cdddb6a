import os

import click
import inject

from app.commands.common import emit, fail
from app.fixtures import golden_suite
from app.services.errors import ConeInputError
from app.services.matrix_file import MatrixFileService


@click.command("fixtures")
@click.argument("directory", type=click.Path(file_okay=False))
def fixtures(directory):
    """Write every golden fixture as <name>.txt into DIRECTORY."""
    files = inject.instance(MatrixFileService)
    written = []
    try:
        os.makedirs(directory, exist_ok=True)
        for fixture in golden_suite():
            path = os.path.join(directory, f"{fixture.name}.txt")
            files.write_matrix(path, fixture.matrix)
            written.append({"name": fixture.name, "file": path, "expected_mueller": fixture.expected_mueller,
                            "expected_primitive": fixture.expected_primitive})
    except OSError as e:
        fail(ConeInputError(f"cannot write fixtures to {directory}: {e.strerror}"))

    emit("fixtures", written)
