import logging
from typing import List, Optional, Sequence

import numpy as np
from scipy import linalg

from app.schemas import EigenPair, Tolerances
from app.services.errors import ConeInputError, ConeDomainError, ConeNumericError

logger = logging.getLogger(__name__)


class NumericKernelService:
    """Dense primitives shared by every cone service.

    All methods are pure functions of their arguments; the service keeps no
    state besides its logger.
    """

    # noinspection PyMethodMayBeStatic
    def as_matrix(self, A, sizes: Sequence[int] = (4,)) -> np.ndarray:
        try:
            matrix = np.array(A, dtype=float)
        except (TypeError, ValueError) as e:
            raise ConeInputError(f"not a real matrix: {e}")
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] not in sizes:
            raise ConeInputError(f"expected a square matrix of size {' or '.join(map(str, sizes))}, got shape {matrix.shape}")
        if not np.all(np.isfinite(matrix)):
            raise ConeInputError("matrix has non-finite entries")
        return matrix

    def spectral_norm(self, A) -> float:
        """Square root of the largest eigenvalue of AᵀA."""
        A = self.as_matrix(A, sizes=(4, 16))
        gram = A.T @ A
        largest = linalg.eigvalsh(gram, check_finite=False)[-1]
        return float(np.sqrt(max(largest, 0.0)))

    def determinant(self, A) -> float:
        return float(np.linalg.det(self.as_matrix(A, sizes=(4, 16))))

    def eigen_decompose(self, A, tol: Optional[Tolerances] = None) -> List[EigenPair]:
        """Distinct eigenvalues with multiplicities and unit eigenvectors.

        Sorted by descending modulus, then descending real part, then
        descending imaginary part. Multiplicities add up to the matrix size.
        """
        tol = tol or Tolerances.default()
        A = self.as_matrix(A, sizes=(4, 16))

        try:
            values = linalg.eigvals(A, check_finite=False)
        except linalg.LinAlgError as e:
            logger.error(e)
            raise ConeNumericError(f"eigenvalue iteration did not converge: {e}", routine="geev")

        values = self._clean_conjugates(values, tol)
        scale = max(1.0, self.spectral_norm(A))

        pairs = []
        for candidate in self._clusters(values, np.sqrt(tol.zero_tol) * scale, tol):
            for cluster in self._confirm_cluster(A, candidate, scale, tol):
                value = self._cluster_value(cluster)
                vector = self._null_vector(A, value)
                pairs.append(EigenPair(value=value, vector=vector, algebraic_multiplicity=len(cluster)))

        pairs.sort(key=lambda pair: self._order_key(pair.value, tol))
        return pairs

    def eigenvalues(self, A, tol: Optional[Tolerances] = None) -> np.ndarray:
        """Spectrum repeated by algebraic multiplicity, in eigen_decompose order."""
        pairs = self.eigen_decompose(A, tol)
        return np.array([pair.value for pair in pairs for _ in range(pair.algebraic_multiplicity)], dtype=complex)

    def spectral_radius(self, A, tol: Optional[Tolerances] = None) -> float:
        """Largest modulus of the raw spectrum, before any clustering."""
        A = self.as_matrix(A, sizes=(4, 16))
        try:
            values = linalg.eigvals(A, check_finite=False)
        except linalg.LinAlgError as e:
            logger.error(e)
            raise ConeNumericError(f"eigenvalue iteration did not converge: {e}", routine="geev")
        return float(np.max(np.abs(values)))

    def nullspace(self, A, tol: Optional[Tolerances] = None, rtol: Optional[float] = None) -> List[np.ndarray]:
        """Orthonormal kernel basis in a canonical, basis-independent order.

        The kernel is {x : ‖Ax‖ ≤ rtol·‖A‖₂} with rtol defaulting to the zero
        tolerance. The raw singular basis is reduced to echelon form first,
        so the result depends only on the subspace.
        """
        tol = tol or Tolerances.default()
        rtol = tol.zero_tol if rtol is None else rtol
        A = self.as_matrix(A, sizes=(4, 16))
        n = A.shape[0]

        _, s, vh = linalg.svd(A, check_finite=False)
        if s[0] == 0.0:
            kernel = np.eye(n)
        else:
            rank = int(np.count_nonzero(s > rtol * s[0]))
            kernel = vh[rank:].T
        if kernel.shape[1] == 0:
            return []

        echelon, _ = self._row_echelon(kernel.T, tol.zero_tol)
        q, _ = np.linalg.qr(echelon.T)

        basis = []
        for column in q.T:
            dominant = int(np.argmax(np.abs(column)))
            if column[dominant] < 0:
                column = -column
            basis.append((dominant, column + 0.0))
        basis.sort(key=lambda item: item[0])
        return [column for _, column in basis]

    def eigenspace(self, A, value: complex, tol: Optional[Tolerances] = None, rtol: Optional[float] = None) -> np.ndarray:
        """Orthonormal basis (as columns) of the real eigenspace of a real eigenvalue."""
        tol = tol or Tolerances.default()
        A = self.as_matrix(A)
        shifted = A - complex(value).real * np.eye(A.shape[0])
        scale = max(1.0, self.spectral_norm(A))
        _, s, vh = linalg.svd(shifted, check_finite=False)
        threshold = (tol.zero_tol if rtol is None else rtol) * scale
        return vh[int(np.count_nonzero(s > threshold)):].T

    def numeric_rank(self, A, threshold: float) -> int:
        s = linalg.svd(A, compute_uv=False, check_finite=False)
        return int(np.count_nonzero(s > threshold))

    def eigen_degree(self, A, value: complex, tol: Optional[Tolerances] = None) -> int:
        """Size of the largest Jordan block of an eigenvalue.

        Smallest k with rank((A−λI)^k) = rank((A−λI)^(k+1)); singular values
        of the k-th power count when above zero_tol·max(1, ‖A−λI‖₂)^k. The
        nullity never exceeds the algebraic multiplicity, so powers of a
        small gap to a neighbouring eigenvalue are not mistaken for a block.
        """
        tol = tol or Tolerances.default()
        A = self.as_matrix(A)
        n = A.shape[0]
        value = complex(value)
        if value.imag == 0.0:
            shifted = A - value.real * np.eye(n)
        else:
            shifted = A.astype(complex) - value * np.eye(n)

        scale = max(1.0, float(linalg.norm(shifted, 2)))
        power = shifted.copy()
        rank = self.numeric_rank(power, tol.zero_tol * scale)
        if rank == n:
            raise ConeDomainError(f"{value} is not an eigenvalue of the matrix")

        nearest = min(self.eigen_decompose(A, tol), key=lambda pair: abs(pair.value - value))
        multiplicity = nearest.algebraic_multiplicity
        nullity = min(n - rank, multiplicity)
        for k in range(1, n + 1):
            power = power @ shifted
            next_nullity = min(n - self.numeric_rank(power, tol.zero_tol * scale ** (k + 1)), multiplicity)
            if next_nullity == nullity:
                return k
            nullity = next_nullity
        return n

    # region helpers

    @staticmethod
    def _order_key(value: complex, tol: Tolerances):
        decimals = tol.round_decimals
        return -round(abs(value), decimals), -round(value.real, decimals), -round(value.imag, decimals)

    @staticmethod
    def _clean_conjugates(values: np.ndarray, tol: Tolerances) -> np.ndarray:
        cleaned = np.array(values, dtype=complex)
        for i, value in enumerate(values):
            if value.imag == 0.0:
                continue
            small = abs(value.imag) <= tol.zero_tol * (1.0 + abs(value))
            others = np.delete(values, i)
            paired = others.size > 0 and np.min(np.abs(others - np.conj(value))) <= tol.zero_tol * (1.0 + abs(value))
            if small or not paired:
                cleaned[i] = complex(value.real, 0.0)
        return cleaned

    def _confirm_cluster(self, A: np.ndarray, cluster: List[complex], scale: float, tol: Tolerances) -> List[List[complex]]:
        """Keep a near-coincident group together only if its centre is an eigenvalue.

        A defective eigenvalue comes back from LAPACK as a ring of nearby
        values whose mean still annihilates a vector; distinct eigenvalues a
        little apart do not. Unconfirmed groups are split at zero_tol.
        """
        if len(cluster) == 1:
            return [cluster]
        value = self._cluster_value(cluster)
        if self._smallest_singular_value(A, value) <= tol.zero_tol * scale:
            return [cluster]
        logger.debug(f"splitting {len(cluster)} eigenvalues near {value}")
        return self._clusters(np.array(cluster), tol.zero_tol * scale, tol)

    @staticmethod
    def _cluster_value(cluster: List[complex]) -> complex:
        if all(z == cluster[0] for z in cluster):
            value = complex(cluster[0])
        else:
            value = complex(np.mean(cluster))
        if all(z.imag == 0.0 for z in cluster):
            value = complex(value.real, 0.0)
        return value

    @staticmethod
    def _smallest_singular_value(A: np.ndarray, value: complex) -> float:
        n = A.shape[0]
        if value.imag == 0.0:
            shifted = A - value.real * np.eye(n)
        else:
            shifted = A.astype(complex) - value * np.eye(n)
        return float(linalg.svdvals(shifted, check_finite=False)[-1])

    def _clusters(self, values: np.ndarray, radius: float, tol: Tolerances) -> List[List[complex]]:
        ordered = sorted((complex(z) for z in values), key=lambda z: self._order_key(z, tol))
        clusters = []
        assigned = [False] * len(ordered)
        for i, seed in enumerate(ordered):
            if assigned[i]:
                continue
            members = [seed]
            assigned[i] = True
            grown = True
            while grown:
                grown = False
                for j, other in enumerate(ordered):
                    if not assigned[j] and min(abs(other - m) for m in members) <= radius:
                        members.append(other)
                        assigned[j] = True
                        grown = True
            clusters.append(members)
        return clusters

    @staticmethod
    def _null_vector(A: np.ndarray, value: complex) -> np.ndarray:
        n = A.shape[0]
        if value.imag == 0.0:
            _, _, vh = linalg.svd(A - value.real * np.eye(n), check_finite=False)
            vector = vh[-1].astype(complex)
        else:
            _, _, vh = linalg.svd(A.astype(complex) - value * np.eye(n), check_finite=False)
            vector = vh[-1].conj()

        vector = vector / np.linalg.norm(vector)
        leading = np.flatnonzero(np.abs(vector) > 1e-12)
        if leading.size:
            first = vector[leading[0]]
            vector = vector * (abs(first) / first)
        return vector

    @staticmethod
    def _row_echelon(rows: np.ndarray, zero_tol: float):
        echelon = np.array(rows, dtype=float)
        k, n = echelon.shape
        pivots = []
        r = 0
        for c in range(n):
            if r == k:
                break
            p = r + int(np.argmax(np.abs(echelon[r:, c])))
            if abs(echelon[p, c]) <= zero_tol:
                continue
            echelon[[r, p]] = echelon[[p, r]]
            echelon[r] /= echelon[r, c]
            for i in range(k):
                if i != r:
                    echelon[i] -= echelon[i, c] * echelon[r]
            pivots.append(c)
            r += 1
        return echelon[:r], pivots

    # endregion
