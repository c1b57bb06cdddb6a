import logging
from typing import List, Optional, Tuple

import inject
import numpy as np
from scipy import linalg

from app.config import settings
from app.constants import G, I4
from app.schemas import ConeClass, ConeDecision, PowerIterationTrace, SpectralReport, Tolerances
from app.services.errors import ConeDomainError
from app.services.mueller import MuellerService
from app.services.numkernel import NumericKernelService
from app.services.stokes import StokesService

logger = logging.getLogger(__name__)


class ConeSpectrumService:
    """Spectral view of cone preservation.

    Birkhoff's conditions are necessary for A(K) ⊆ K. For a cone-preserving
    A, K-irreducibility holds iff ρ and every peripheral eigenvalue are
    simple and the only eigenvector in K is the Perron vector, which has to
    be interior. Primitivity adds that ρ is the only peripheral eigenvalue.
    """

    mathService: NumericKernelService = inject.attr(NumericKernelService)
    stokesService: StokesService = inject.attr(StokesService)
    muellerService: MuellerService = inject.attr(MuellerService)

    def spectral_radius(self, A, tol: Optional[Tolerances] = None) -> float:
        return self.mathService.spectral_radius(A, tol)

    def birkhoff_report(self, A, tol: Optional[Tolerances] = None) -> SpectralReport:
        tol = tol or Tolerances.default()
        A = self.mathService.as_matrix(A)
        pairs = self.mathService.eigen_decompose(A, tol)
        rho = max(pair.modulus for pair in pairs)
        radius = tol.zero_tol * max(1.0, rho)

        peripheral = [pair for pair in pairs if abs(pair.modulus - rho) <= radius]
        rho_pair = next((pair for pair in peripheral if pair.is_real and pair.value.real >= -radius), None)

        perron_vector, perron_class, unique = None, None, False
        degree_condition = False
        if rho_pair is not None:
            rho_degree = self.mathService.eigen_degree(A, rho_pair.value, tol)
            degree_condition = all(rho_degree >= self.mathService.eigen_degree(A, pair.value, tol) for pair in peripheral)

            basis = self.mathService.eigenspace(A, rho_pair.value, tol)
            if basis.shape[1] == 0:
                basis = rho_pair.real_vector()[:, np.newaxis]
            meets, single_ray, perron_vector = self._cone_intersection(basis, tol)
            perron_class = self.stokesService.classify(perron_vector, tol)
            others = [pair for pair in pairs if pair.is_real and pair is not rho_pair]
            unique = meets and single_ray and not any(self._cone_intersection(self.mathService.eigenspace(A, pair.value, tol), tol)[0] for pair in others)

        report = SpectralReport(
            rho=rho,
            rho_is_eigenvalue=rho_pair is not None,
            rho_simple=rho_pair is not None and rho_pair.algebraic_multiplicity == 1,
            peripheral_eigenvalues=[pair.value for pair in peripheral],
            peripheral_all_simple=all(pair.algebraic_multiplicity == 1 for pair in peripheral),
            perron_vector=perron_vector,
            perron_in_K=perron_class,
            unique_K_eigenvector=unique,
            degree_condition=degree_condition,
        )
        logger.debug(f"birkhoff report: rho={rho}, peripheral={report.peripheral_eigenvalues}")
        return report

    def is_K_irreducible(self, A, tol: Optional[Tolerances] = None, resolution: Optional[int] = None, verified: bool = False) -> ConeDecision:
        tol = tol or Tolerances.default()
        A = self._cone_preserving(A, tol, resolution, verified)
        report = self.birkhoff_report(A, tol)
        holds = report.rho_simple and report.peripheral_all_simple and report.unique_K_eigenvector and report.perron_in_K == ConeClass.interior
        return ConeDecision(holds=holds, report=report)

    def is_K_primitive(self, A, tol: Optional[Tolerances] = None, resolution: Optional[int] = None, verified: bool = False) -> ConeDecision:
        decision = self.is_K_irreducible(A, tol, resolution, verified)
        holds = decision.holds and len(decision.report.peripheral_eigenvalues) == 1
        return ConeDecision(holds=holds, report=decision.report)

    def power_iteration(
            self,
            A,
            w,
            m_max: Optional[int] = None,
            tol_iter: Optional[float] = None,
            tol: Optional[Tolerances] = None,
    ) -> PowerIterationTrace:
        """Iterate x ← A·x/ρ(A) from a cone vector w.

        Converged once ``settings.power.window`` consecutive steps move less
        than tol_iter. The limit is accepted only if it is a ρ-eigenvector.
        """
        tol = tol or Tolerances.default()
        m_max = m_max or settings.power.m_max
        tol_iter = tol_iter or settings.power.tol
        A = self.mathService.as_matrix(A)
        w = self.stokesService.as_array(w)

        rho = self.mathService.spectral_radius(A, tol)
        if rho <= tol.zero_tol:
            raise ConeDomainError("power iteration needs a positive spectral radius")
        if np.linalg.norm(w) <= tol.zero_tol or self.stokesService.classify(w, tol) == ConeClass.outside:
            raise ConeDomainError("power iteration starts from a nonzero vector of the cone")

        x = w.copy()
        iterates = [x]
        streak, steps, converged = 0, 0, False
        for steps in range(1, m_max + 1):
            following = A @ x / rho
            streak = streak + 1 if np.linalg.norm(following - x) < tol_iter else 0
            x = following
            iterates.append(x)
            if streak >= settings.power.window:
                converged = True
                break

        limit = residual = limit_class = lambda_w = None
        if converged:
            residual = float(np.linalg.norm(A @ x - rho * x) / max(1.0, np.linalg.norm(x)))
            if residual > 10.0 * tol_iter * max(1.0, rho):
                logger.warning(f"iteration settled on a vector with residual {residual}")
                converged = False
            else:
                limit = x
                limit_class = self.stokesService.classify(x, tol)
                norm = float(np.linalg.norm(x))
                if x[0] > tol.zero_tol and norm > tol.zero_tol:
                    lambda_w = norm
        else:
            logger.info(f"power iteration did not settle within {m_max} steps")

        return PowerIterationTrace(
            iterates=iterates,
            converged=converged,
            steps=steps,
            rho=rho,
            limit=limit,
            limit_residual=residual,
            limit_class=limit_class,
            lambda_w=lambda_w,
        )

    def witness_strong_irreducibility(self, A, tol: Optional[Tolerances] = None, m_max: Optional[int] = None) -> List[PowerIterationTrace]:
        """Power iteration of I + A from the six canonical boundary seeds.

        For a K-irreducible A every trace converges to an interior vector.
        """
        tol = tol or Tolerances.default()
        shifted = I4 + self.mathService.as_matrix(A)
        return [self.power_iteration(shifted, seed, m_max=m_max, tol=tol) for seed in self.stokesService.canonical_boundary_seeds()]

    # region helpers

    def _cone_preserving(self, A, tol: Tolerances, resolution: Optional[int], verified: bool) -> np.ndarray:
        A = self.mathService.as_matrix(A)
        if np.all(np.abs(A) <= tol.zero_tol):
            raise ConeDomainError("the zero matrix has no Perron structure")
        if not verified and not self.muellerService.is_mueller(A, resolution, tol).verdict:
            raise ConeDomainError("matrix does not map the Stokes cone into itself")
        return A

    @staticmethod
    def _cone_intersection(basis: np.ndarray, tol: Tolerances) -> Tuple[bool, bool, Optional[np.ndarray]]:
        """Intersect span(basis) with K through the restricted form VᵀGV.

        Returns (meets, single_ray, representative). The span meets K outside
        the apex iff the largest eigenvalue of VᵀGV is ≥ -zero_tol; the
        intersection is one ray iff that eigenvalue is ≈ 0 or the span is a
        line.
        """
        if basis.ndim == 1:
            basis = basis[:, np.newaxis]
        if basis.shape[1] == 0:
            return False, False, None
        values, vectors = linalg.eigh(basis.T @ G @ basis)
        candidate = basis @ vectors[:, -1]
        candidate = candidate / np.linalg.norm(candidate)
        if candidate[0] < 0 or (candidate[0] == 0 and candidate[np.flatnonzero(candidate)[0]] < 0):
            candidate = -candidate
        meets = values[-1] >= -tol.zero_tol
        single_ray = basis.shape[1] == 1 or abs(values[-1]) <= tol.zero_tol
        return bool(meets), bool(meets and single_ray), candidate

    # endregion
