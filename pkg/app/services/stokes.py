import logging
from typing import Iterable, List, Optional, Union

import numpy as np

from app.constants import G_DIAGONAL
from app.schemas import ConeClass, SliceDecomposition, StokesCheck, StokesVector, Tolerances
from app.services.errors import ConeDomainError, ConeInputError

logger = logging.getLogger(__name__)

VectorLike = Union[StokesVector, np.ndarray, Iterable[float]]

_CLASS_VALUES = np.array([ConeClass.interior.value, ConeClass.boundary.value, ConeClass.outside.value])


class StokesService:
    """Membership in the Stokes cone K = {(a; v) : a ≥ 0, a² ≥ ‖v‖²}."""

    # noinspection PyMethodMayBeStatic
    def as_array(self, s: VectorLike) -> np.ndarray:
        if isinstance(s, StokesVector):
            return s.to_array()
        array = np.asarray(s, dtype=float)
        if array.shape[-1:] != (4,):
            raise ConeInputError(f"Stokes vectors have 4 components, got shape {array.shape}")
        if not np.all(np.isfinite(array)):
            raise ConeInputError("Stokes vector has non-finite entries")
        return array

    # noinspection PyMethodMayBeStatic
    def q_form(self, S: np.ndarray) -> np.ndarray:
        """sᵀGs along the last axis, for one vector or a stack of them."""
        return np.einsum("...i,i,...i->...", S, G_DIAGONAL, S)

    def q_G(self, s: VectorLike) -> float:
        return float(self.q_form(self.as_array(s)))

    def classify_many(self, S, tol: Optional[Tolerances] = None) -> np.ndarray:
        """Vectorized :meth:`classify`.

        Returns a string array of ConeClass values, so masks compare against
        ``ConeClass.outside.value`` rather than the enum member.
        """
        tol = tol or Tolerances.default()
        S = self.as_array(S)
        a = S[..., 0]
        q = self.q_form(S)
        outside = (a < -tol.zero_tol) | (q < -tol.zero_tol)
        boundary = ~outside & (np.abs(q) <= tol.zero_tol)
        codes = np.where(outside, 2, np.where(boundary, 1, 0))
        return _CLASS_VALUES[codes]

    def classify(self, s: VectorLike, tol: Optional[Tolerances] = None) -> ConeClass:
        return ConeClass(self.classify_many(self.as_array(s)[np.newaxis], tol)[0])

    def is_stokes(self, s: VectorLike, tol: Optional[Tolerances] = None) -> bool:
        return self.classify(s, tol) != ConeClass.outside

    def check(self, s: VectorLike, tol: Optional[Tolerances] = None) -> StokesCheck:
        array = self.as_array(s)
        return StokesCheck(vector=StokesVector.from_array(array), q=self.q_G(array), cone_class=self.classify(array, tol))

    def slice_decompose(self, s: VectorLike, tol: Optional[Tolerances] = None) -> SliceDecomposition:
        """Write s as scale·(1; u) with ‖u‖ ≤ 1."""
        tol = tol or Tolerances.default()
        array = self.as_array(s)
        if self.classify(array, tol) == ConeClass.outside:
            raise ConeDomainError("vector is not in the Stokes cone")
        a = array[0]
        if a <= tol.zero_tol:
            raise ConeDomainError("the apex has no slice representative")
        return SliceDecomposition(scale=a, slice_point=StokesVector.from_array(np.concatenate(([1.0], array[1:] / a))))

    def interior_criterion(self, z: VectorLike, directions: List[VectorLike], tol: Optional[Tolerances] = None, depth: int = 40) -> bool:
        """True iff for every direction x some z − 2⁻ᵏx (k = 0..depth) stays in K."""
        tol = tol or Tolerances.default()
        z = self.as_array(z)
        if self.classify(z, tol) == ConeClass.outside:
            raise ConeDomainError("interior test needs a point of the cone")
        steps = 2.0 ** -np.arange(depth + 1)
        for direction in directions:
            x = self.as_array(direction)
            candidates = z[np.newaxis, :] - steps[:, np.newaxis] * x[np.newaxis, :]
            # the boundary band shrinks with the step, short steps stay decisive
            inside = (candidates[:, 0] >= -tol.zero_tol * steps) & (self.q_form(candidates) >= -tol.zero_tol * steps ** 2)
            if not np.any(inside):
                logger.debug(f"direction {x.tolist()} leaves the cone from {z.tolist()}")
                return False
        return True

    # noinspection PyMethodMayBeStatic
    def canonical_boundary_seeds(self) -> List[StokesVector]:
        """The six fully polarized unit-intensity vectors (1; ±e_k)."""
        seeds = []
        for k in range(3):
            for sign in (1.0, -1.0):
                v = [0.0, 0.0, 0.0]
                v[k] = sign
                seeds.append(StokesVector(a=1.0, v=tuple(v)))
        return seeds

    # noinspection PyMethodMayBeStatic
    def signed_axes(self) -> List[StokesVector]:
        """(0; ±e_k), the six signed polarization axes used as interior test directions."""
        return [StokesVector(a=0.0, v=seed.v) for seed in self.canonical_boundary_seeds()]
