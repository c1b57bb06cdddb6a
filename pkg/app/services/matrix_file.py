import json
import logging
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ValidationError, conlist

from app.services.errors import MatrixFileError

logger = logging.getLogger(__name__)

COMMENT = "#"


class MatrixDocument(BaseModel):
    m: conlist(float, min_items=16, max_items=16)


class VectorDocument(BaseModel):
    s: conlist(float, min_items=4, max_items=4)


class MatrixFileService:
    """Text interchange for 4×4 matrices and 4-vectors.

    A matrix file holds 4 lines of 4 whitespace separated decimals, or a
    single JSON line ``{"m": [16 numbers]}`` in row-major order. Lines
    starting with ``#`` are comments. Rendering uses the shortest decimal
    that round-trips, so parse(render(M)) reproduces M bit for bit.
    """

    def parse_matrix(self, text: str, path: Optional[str] = None) -> np.ndarray:
        rows = self._content_lines(text)
        if rows and rows[0][1].lstrip().startswith("{"):
            values = self._parse_json(rows, MatrixDocument, "m", path)
            return np.array(values, dtype=float).reshape((4, 4))

        if len(rows) != 4:
            line = rows[4][0] if len(rows) > 4 else (rows[-1][0] if rows else 1)
            raise MatrixFileError(f"expected 4 rows of numbers, found {len(rows)}", line, 1, path)
        return np.array([self._parse_row(number, content, path) for number, content in rows])

    def parse_vector(self, text: str, path: Optional[str] = None) -> np.ndarray:
        rows = self._content_lines(text)
        if rows and rows[0][1].lstrip().startswith("{"):
            return np.array(self._parse_json(rows, VectorDocument, "s", path), dtype=float)
        if len(rows) != 1:
            line = rows[1][0] if len(rows) > 1 else 1
            raise MatrixFileError(f"expected one line with 4 numbers, found {len(rows)} lines", line, 1, path)
        number, content = rows[0]
        return self._parse_row(number, content, path)

    def read_matrix(self, path: str) -> np.ndarray:
        return self.parse_matrix(self._read(path), path)

    def read_vector(self, path: str) -> np.ndarray:
        return self.parse_vector(self._read(path), path)

    # noinspection PyMethodMayBeStatic
    def render_matrix(self, matrix: np.ndarray) -> str:
        matrix = np.asarray(matrix, dtype=float)
        lines = [" ".join(repr(float(value)) for value in row) for row in matrix.reshape((4, 4))]
        return "\n".join(lines) + "\n"

    # noinspection PyMethodMayBeStatic
    def render_vector(self, vector: np.ndarray) -> str:
        return " ".join(repr(float(value)) for value in np.asarray(vector, dtype=float).ravel()) + "\n"

    def write_matrix(self, path: str, matrix: np.ndarray):
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.render_matrix(matrix))
        logger.debug(f"matrix written to {path}")

    # region helpers

    @staticmethod
    def _read(path: str) -> str:
        try:
            with open(path, encoding="utf-8") as f:
                return f.read()
        except OSError as e:
            raise MatrixFileError(f"cannot read file: {e.strerror}", 0, 0, path)

    @staticmethod
    def _content_lines(text: str) -> List[Tuple[int, str]]:
        rows = []
        for number, line in enumerate(text.splitlines(), start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith(COMMENT):
                continue
            rows.append((number, line))
        return rows

    @staticmethod
    def _parse_row(number: int, content: str, path: Optional[str]) -> np.ndarray:
        values, position = [], 0
        for token in content.split():
            start = content.index(token, position)
            column, position = start + 1, start + len(token)
            try:
                value = float(token)
            except ValueError:
                raise MatrixFileError(f"not a number: {token!r}", number, column, path)
            if not np.isfinite(value):
                raise MatrixFileError(f"non-finite value: {token!r}", number, column, path)
            values.append(value)
        if len(values) != 4:
            raise MatrixFileError(f"expected 4 numbers, found {len(values)}", number, 1, path)
        return np.array(values)

    @staticmethod
    def _parse_json(rows: List[Tuple[int, str]], document, key: str, path: Optional[str]) -> List[float]:
        number, content = rows[0]
        if len(rows) > 1:
            raise MatrixFileError("the JSON form is a single line", rows[1][0], 1, path)
        try:
            parsed = json.loads(content)
        except json.JSONDecodeError as e:
            raise MatrixFileError(f"invalid JSON: {e.msg}", number, e.colno, path)
        try:
            values = document.parse_obj(parsed).dict()[key]
        except ValidationError as e:
            raise MatrixFileError(f"invalid JSON document: {e.errors()[0]['msg']}", number, 1, path)
        if not np.all(np.isfinite(values)):
            raise MatrixFileError("non-finite value in JSON document", number, 1, path)
        return values

    # endregion
