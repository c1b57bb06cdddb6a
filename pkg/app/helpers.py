from typing import Sequence, Tuple

import numpy as np


def basis_matrix(i: int, j: int, n: int = 4) -> np.ndarray:
    """
    Matrix unit E_ij with 1-based indices.

     Parameters
    ----------
    i, j : int
        Row and column, counted from 1 as in ``E11``.
    n : int

     Returns
    -------
    An n×n matrix whose ij-th entry is 1 and 0 elsewhere.

     Examples
    --------
    >>> basis_matrix(2, 3)[1, 2]
    1.0
    >>> basis_matrix(1, 1).sum()
    1.0
    """
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"E_{i}{j} is not a {n}x{n} matrix unit")
    unit = np.zeros((n, n))
    unit[i - 1, j - 1] = 1.0
    return unit


def assemble(a: float, w0: Sequence[float], v0: Sequence[float], m) -> np.ndarray:
    """
    Build the block matrix [[a, w0ᵀ], [v0, m]].

     Examples
    --------
    >>> assemble(1.0, (0, 0, 0), (0, 0, 0), -np.eye(3)).diagonal().tolist()
    [1.0, -1.0, -1.0, -1.0]
    """
    matrix = np.zeros((4, 4))
    matrix[0, 0] = a
    matrix[0, 1:] = np.asarray(w0, dtype=float)
    matrix[1:, 0] = np.asarray(v0, dtype=float)
    matrix[1:, 1:] = np.asarray(m, dtype=float)
    return matrix


def split(matrix) -> Tuple[float, np.ndarray, np.ndarray, np.ndarray]:
    """Inverse of :func:`assemble`, returns (a, w0, v0, m)."""
    matrix = np.asarray(matrix, dtype=float)
    return float(matrix[0, 0]), matrix[0, 1:].copy(), matrix[1:, 0].copy(), matrix[1:, 1:].copy()


def planar_rotation(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def rotation_about_z(theta: float, z_scale: float = 1.0) -> np.ndarray:
    """
    Block matrix diag(1, R(theta), z_scale) rotating the (x, y) components.

     Examples
    --------
    >>> rotation_about_z(0.0).tolist() == np.eye(4).tolist()
    True
    """
    m = np.zeros((3, 3))
    m[:2, :2] = planar_rotation(theta)
    m[2, 2] = z_scale
    return assemble(1.0, (0, 0, 0), (0, 0, 0), m)


def vec(matrix) -> np.ndarray:
    """Row-major vectorization, entry (i, j) lands at index 4i + j."""
    return np.asarray(matrix, dtype=float).reshape(-1)


def unvec(vector) -> np.ndarray:
    return np.asarray(vector, dtype=float).reshape((4, 4))
