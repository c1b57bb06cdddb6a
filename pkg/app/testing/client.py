import json
import os
import tempfile

from click.testing import CliRunner

from app.main import cli
from app.services.matrix_file import MatrixFileService

runner = CliRunner(mix_stderr=False)


def invoke(*args):
    return runner.invoke(cli, [str(arg) for arg in args], catch_exceptions=False)


def payload(result) -> dict:
    return json.loads(result.stdout)


def write_matrix(directory: str, name: str, matrix) -> str:
    path = os.path.join(directory, f"{name}.txt")
    MatrixFileService().write_matrix(path, matrix)
    return path


def write_text(directory: str, name: str, text: str) -> str:
    path = os.path.join(directory, name)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    return path


def workspace() -> tempfile.TemporaryDirectory:
    return tempfile.TemporaryDirectory(prefix="mueller-cone-")
