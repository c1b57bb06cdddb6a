from typing import Dict, List

import numpy as np

from app import helpers
from app.constants import E11, G, I4
from app.schemas import Fixture
from app.services.errors import ConeInputError

# Polarization directions used by the one-block families, ‖v0‖ ≤ 1.
DIRECTIONS = {
    "x": (1.0, 0.0, 0.0),
    "diag": (0.5, 0.5, 0.0),
    "minus-z": (0.0, 0.0, -1.0),
}

# Pairs with ‖v0‖ + ‖w0‖ = 1, the edge of the sum family.
SUM_PAIRS = [
    ((0.3, 0.0, 0.4), (0.0, 0.5, 0.0)),
    ((0.0, 0.0, 0.25), (0.45, 0.6, 0.0)),
    ((0.1, 0.2, 0.2), (0.0, 0.7, 0.0)),
]

ZERO3 = (0.0, 0.0, 0.0)


def _unit_shifts() -> List[Fixture]:
    return [
        Fixture(
            name=f"E11+E{i}{j}",
            matrix=E11 + helpers.basis_matrix(i, j),
            expected_mueller=True,
            expected_primitive=False if (i, j) == (1, 2) else None,
            source="E11 plus a matrix unit",
        )
        for i in range(1, 5)
        for j in range(1, 5)
    ]


def _block_families() -> List[Fixture]:
    fixtures = []
    for label, v0 in DIRECTIONS.items():
        fixtures.append(Fixture(name=f"row-{label}", matrix=helpers.assemble(1.0, v0, ZERO3, np.zeros((3, 3))), expected_mueller=True,
                                source="intensity row [[1, v0ᵀ], [0, 0]]"))
        fixtures.append(Fixture(name=f"column-{label}", matrix=helpers.assemble(1.0, ZERO3, v0, np.zeros((3, 3))), expected_mueller=True,
                                source="polarizer column [[1, 0], [v0, 0]]"))
    for label, m in (("identity", np.eye(3)), ("negated", -np.eye(3)), ("half", 0.5 * np.eye(3))):
        fixtures.append(Fixture(name=f"block-{label}", matrix=helpers.assemble(1.0, ZERO3, ZERO3, m), expected_mueller=True,
                                source="block diagonal [[1, 0], [0, m]]"))
    for k, (v0, w0) in enumerate(SUM_PAIRS, start=1):
        fixtures.append(Fixture(name=f"sum-{k}", matrix=helpers.assemble(1.0, w0, v0, np.zeros((3, 3))), expected_mueller=True,
                                source="[[1, w0ᵀ], [v0, 0]] with ‖v0‖ + ‖w0‖ = 1"))
    return fixtures


def golden_suite() -> List[Fixture]:
    """Every named matrix with its expected Mueller verdict and primitivity."""
    fixtures = [
        Fixture(name="I4", matrix=I4, expected_mueller=True, expected_primitive=False, source="identity"),
        Fixture(name="zero", matrix=np.zeros((4, 4)), expected_mueller=True, source="zero matrix"),
        Fixture(name="G", matrix=G, expected_mueller=True, expected_primitive=False, source="form matrix diag(1, -1, -1, -1)"),
        Fixture(name="E11", matrix=E11, expected_mueller=True, expected_primitive=True, source="matrix unit"),
    ]
    fixtures += _unit_shifts()
    fixtures += _block_families()
    fixtures += [
        Fixture(name="M-rot", matrix=helpers.rotation_about_z(np.pi / 2), expected_mueller=True, expected_primitive=False,
                source="rotator by a quarter turn about z"),
        Fixture(name="M-irr", matrix=helpers.rotation_about_z(np.pi / 3, z_scale=0.5), expected_mueller=True, expected_primitive=False,
                source="rotator by a sixth of a turn with damped z, irreducible"),
        Fixture(name="G+2E11", matrix=G + 2.0 * E11, expected_mueller=True, expected_primitive=True, source="shifted form matrix"),
        Fixture(name="neg-unit", matrix=-E11, expected_mueller=False, source="negated matrix unit"),
        Fixture(name="neg-intensity", matrix=np.diag([-2.0, 1.0, 1.0, 1.0]), expected_mueller=False, source="negative intensity"),
        Fixture(name="negI4", matrix=-I4, expected_mueller=False, source="negated identity"),
    ]
    return fixtures


def lookup(name: str) -> Fixture:
    fixtures: Dict[str, Fixture] = {fixture.name: fixture for fixture in golden_suite()}
    if name not in fixtures:
        raise ConeInputError(f"no fixture named {name!r}")
    return fixtures[name]
