import logging
from typing import Optional

import inject
import numpy as np

from app.constants import E11
from app.schemas import ApproxPath, ApproxResult, Tolerances
from app.services.conespec import ConeSpectrumService
from app.services.errors import ConeDomainError, ConeNumericError
from app.services.mueller import MuellerService
from app.services.numkernel import NumericKernelService

logger = logging.getLogger(__name__)

# Upper bound for the identity shift of make_invertible.
MAX_IDENTITY_SHIFT = 0.01
MAX_HALVINGS = 64


class ApproximationService:
    mathService: NumericKernelService = inject.attr(NumericKernelService)
    muellerService: MuellerService = inject.attr(MuellerService)
    spectrumService: ConeSpectrumService = inject.attr(ConeSpectrumService)

    def approx_mueller(self, A, resolution: Optional[int] = None, tol: Optional[Tolerances] = None, check_primitive: bool = False) -> ApproxResult:
        """Return A itself when it is Mueller, A + 2‖A‖₂·E11 otherwise."""
        tol = tol or Tolerances.default()
        A = self.mathService.as_matrix(A)
        if self.muellerService.is_mueller(A, resolution, tol).verdict:
            return ApproxResult(output=A, changed=False, path=ApproxPath.already_mueller, label="M")

        shift = 2.0 * self.mathService.spectral_norm(A)
        output = A + shift * E11
        primitive = None
        if check_primitive:
            primitive = self.spectrumService.is_K_primitive(output, tol, resolution, verified=True).holds
            if not primitive:
                logger.warning(f"shifted matrix A + {shift}·E11 is not K-primitive")
        logger.debug(f"shifted by {shift}·E11")
        return ApproxResult(output=output, changed=True, e11_shift=shift, path=ApproxPath.shifted_by_e11, label="M(mu)", primitive=primitive)

    def make_invertible(self, A, tol: Optional[Tolerances] = None) -> ApproxResult:
        """Return A itself when det A ≠ 0, A + εI otherwise.

        ε = min(1/100, ½·min |λ| over nonzero eigenvalues), halved while ±ε
        still collides with an eigenvalue.
        """
        tol = tol or Tolerances.default()
        A = self.mathService.as_matrix(A)
        scale = self.mathService.spectral_norm(A)
        threshold = tol.zero_tol * scale ** 4 if scale > 0 else tol.zero_tol
        if abs(np.linalg.det(A)) > threshold:
            return ApproxResult(output=A, changed=False, path=ApproxPath.already_invertible, label="M")

        values = self.mathService.eigenvalues(A, tol)
        moduli = np.abs(values)
        nonzero = moduli[moduli > tol.zero_tol]
        epsilon = min(MAX_IDENTITY_SHIFT, 0.5 * float(nonzero.min())) if nonzero.size else MAX_IDENTITY_SHIFT

        for _ in range(MAX_HALVINGS):
            if not np.any((np.abs(values + epsilon) <= tol.zero_tol) | (np.abs(values - epsilon) <= tol.zero_tol)):
                break
            epsilon /= 2.0
        else:
            raise ConeNumericError("no identity shift avoids the spectrum", routine="make_invertible", iterations=MAX_HALVINGS)

        logger.debug(f"shifted by {epsilon}·I")
        return ApproxResult(output=A + epsilon * np.eye(4), changed=True, epsilon_used=epsilon, path=ApproxPath.shifted_by_identity, label="M(inv)")

    def approx_invertible_mueller(self, A, resolution: Optional[int] = None, tol: Optional[Tolerances] = None) -> ApproxResult:
        tol = tol or Tolerances.default()
        first = self.approx_mueller(A, resolution, tol)
        second = self.make_invertible(first.output, tol)
        result = ApproxResult(
            output=second.output,
            changed=first.changed or second.changed,
            epsilon_used=second.epsilon_used,
            e11_shift=first.e11_shift,
            path=ApproxPath.composite,
            label="M(mu-inv)",
        )
        return result.copy(update={"verified": self._verify(result, resolution, tol)})

    def approx_invertible_mueller_spectral(self, A, epsilon: float, resolution: Optional[int] = None, tol: Optional[Tolerances] = None) -> ApproxResult:
        """(ρ(B) + ε)·I + B with B = A + 2‖A‖₂·E11, invertible for any ε > 0."""
        tol = tol or Tolerances.default()
        if not epsilon > 0:
            raise ConeDomainError("epsilon must be positive")
        A = self.mathService.as_matrix(A)
        shift = 2.0 * self.mathService.spectral_norm(A)
        shifted = A + shift * E11
        rho = self.mathService.spectral_radius(shifted, tol)
        result = ApproxResult(
            output=(rho + epsilon) * np.eye(4) + shifted,
            changed=True,
            epsilon_used=epsilon,
            e11_shift=shift,
            path=ApproxPath.composite,
            label="M(mu-inv-rho)",
        )
        return result.copy(update={"verified": self._verify(result, resolution, tol)})

    def approx_primitive(self, M, n: int, resolution: Optional[int] = None, tol: Optional[Tolerances] = None) -> np.ndarray:
        """M + (2/n)·E11, a K-primitive approximation converging to M."""
        tol = tol or Tolerances.default()
        if n < 1:
            raise ConeDomainError("n must be a positive integer")
        M = self.mathService.as_matrix(M)
        if not self.muellerService.is_mueller(M, resolution, tol).verdict:
            raise ConeDomainError("primitive approximation needs a Mueller matrix")
        return M + (2.0 / n) * E11

    def _verify(self, result: ApproxResult, resolution: Optional[int], tol: Tolerances) -> bool:
        """Recheck a composite output: it has to be a Mueller matrix with nonzero determinant."""
        verified = True
        if not self.muellerService.is_mueller(result.output, resolution, tol).verdict:
            logger.error(f"{result.label} failed the Mueller check")
            verified = False
        if np.linalg.det(result.output) == 0.0:
            logger.error(f"{result.label} is singular")
            verified = False
        return verified
