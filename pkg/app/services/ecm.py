import logging
from typing import List, Optional

import inject
import numpy as np
from scipy import linalg

from app import helpers
from app.config import settings
from app.constants import I4
from app.schemas import CalibrationInput, CalibrationResult, CalibrationStep, Tolerances, WProvenance, WSelection
from app.services.approx import ApproximationService
from app.services.errors import ConeNumericError
from app.services.mueller import MuellerService
from app.services.numkernel import NumericKernelService

logger = logging.getLogger(__name__)


class CalibrationService:
    """Eigenvalue calibration of a polarimeter against a known sample.

    Given the measured matrix M of a reference and the instrument matrices
    aw (without sample) and amw (with sample), find W with M·W = W·B for
    B = aw⁻¹·amw, then report the corrected sample W·B·W⁻¹ made Mueller and
    invertible.
    """

    mathService: NumericKernelService = inject.attr(NumericKernelService)
    approxService: ApproximationService = inject.attr(ApproximationService)
    muellerService: MuellerService = inject.attr(MuellerService)

    def build_H(self, M, B) -> np.ndarray:
        """16×16 matrix of X ↦ M·X − X·B on row-major vec(X).

        Column 4i+j is the image of E_(i,j) and row 4x+y holds entry (x, y).
        """
        M = self.mathService.as_matrix(M)
        B = self.mathService.as_matrix(B)
        return np.kron(M, I4) - np.kron(I4, B.T)

    def select_W(
            self,
            H,
            tol: Optional[Tolerances] = None,
            combine: bool = False,
            kernel_rtol: Optional[float] = None,
    ) -> WSelection:
        tol = tol or Tolerances.default()
        H = self.mathService.as_matrix(H, sizes=(16,))
        basis = self.mathService.nullspace(H, tol, rtol=kernel_rtol)

        eigenvalue_used = None
        if basis:
            candidates = [helpers.unvec(vector) for vector in basis]
            invertible = next((X for X in candidates if abs(np.linalg.det(X)) > tol.zero_tol), None)
            combination = self._combine(basis, tol) if invertible is None and combine else None
            if invertible is not None:
                X, provenance = invertible, WProvenance.kernel_invertible
            elif combination is not None:
                X, provenance = combination, WProvenance.kernel_combination
            else:
                X, provenance = candidates[0], WProvenance.kernel_first
            logger.debug(f"kernel of H has dimension {len(basis)}, using {provenance.value}")
        else:
            real = [pair for pair in self.mathService.eigen_decompose(H, tol) if pair.is_real]
            if real:
                smallest = min(real, key=lambda pair: abs(pair.value))
                X = helpers.unvec(smallest.real_vector())
                eigenvalue_used = smallest.value.real
                provenance = WProvenance.real_eig_smallest
            else:
                values, vectors = linalg.eigh(H.T @ H)
                X = helpers.unvec(vectors[:, 0])
                eigenvalue_used = float(values[0])
                provenance = WProvenance.symmetrized_smallest
            logger.debug(f"H is nonsingular, using {provenance.value} with eigenvalue {eigenvalue_used}")

        fixed = self.approxService.make_invertible(X, tol)
        return WSelection(
            W=fixed.output,
            provenance=provenance,
            eigenvalue_used=eigenvalue_used,
            kernel_dimension=len(basis),
            epsilon_used=fixed.epsilon_used,
        )

    def calibrate(self, data: CalibrationInput, resolution: Optional[int] = None, tol: Optional[Tolerances] = None) -> CalibrationResult:
        tol = tol or Tolerances.default()
        M = self.mathService.as_matrix(data.M)
        aw = self.mathService.as_matrix(data.aw)
        amw = self.mathService.as_matrix(data.amw)
        diagnostics: List[CalibrationStep] = []

        for name, matrix in (("M", M), ("aw", aw), ("amw", amw)):
            if matrix[0, 0] == 0.0:
                logger.warning(f"{name} has a zero (1,1) entry")
                diagnostics.append(CalibrationStep(step="zero-corner", detail={"matrix": name}))

        aw_fix = self.approxService.make_invertible(aw, tol)
        if aw_fix.changed:
            logger.warning(f"aw is singular, shifted by {aw_fix.epsilon_used}·I")
            diagnostics.append(CalibrationStep(step="aw-invertible", detail={"epsilon": aw_fix.epsilon_used}))
        try:
            B = linalg.solve(aw_fix.output, amw)
        except linalg.LinAlgError as e:
            logger.error(e)
            raise ConeNumericError(f"aw could not be inverted: {e}", routine="gesv")

        H = self.build_H(M, B)
        selection = self.select_W(H, tol, combine=True, kernel_rtol=settings.ecm.kernel_rtol)
        diagnostics.append(CalibrationStep(step="select-W", detail={
            "provenance": selection.provenance.value,
            "kernel_dimension": selection.kernel_dimension,
            "epsilon": selection.epsilon_used,
        }))

        W = selection.W
        raw = linalg.solve(W.T, (W @ B).T).T
        rounded = np.around(raw, settings.ecm.raw_decimals) + 0.0

        final = self.approxService.approx_invertible_mueller(rounded, resolution, tol)
        if final.changed:
            diagnostics.append(CalibrationStep(step="approximate", detail={"e11_shift": final.e11_shift, "epsilon": final.epsilon_used}))
        report = self.muellerService.is_mueller(final.output, resolution, tol)
        determinant = float(np.linalg.det(final.output))

        result = CalibrationResult(
            H=H,
            selection=selection,
            aw_used=aw_fix.output,
            new_M_raw=rounded,
            new_M_final=final.output,
            mueller_report=report,
            determinant=determinant,
            diagnostics=diagnostics,
        )
        logger.info(f"calibration finished with W from {selection.provenance.value}, mueller={report.verdict}")
        return result

    # region helpers

    def _combine(self, basis: List[np.ndarray], tol: Tolerances) -> Optional[np.ndarray]:
        """Best-conditioned invertible random combination of a kernel basis."""
        rng = np.random.default_rng(settings.ecm.seed)
        stacked = np.column_stack(basis)
        best, best_condition = None, np.inf
        for _ in range(settings.ecm.candidates):
            X = helpers.unvec(stacked @ rng.standard_normal(len(basis)))
            X = X / np.linalg.norm(X)
            if abs(np.linalg.det(X)) <= tol.zero_tol:
                continue
            condition = np.linalg.cond(X)
            if condition < best_condition:
                best, best_condition = X, condition
        return best

    # endregion
