import logging
from typing import Iterator, Optional, Tuple

import inject
import numpy as np

from app import helpers
from app.config import settings
from app.schemas import ConeClass, Gap, GridSample, MuellerReport, NecessaryConditions, Tolerances
from app.services import cache
from app.services.errors import ConeDomainError
from app.services.numkernel import NumericKernelService
from app.services.stokes import StokesService

logger = logging.getLogger(__name__)


class MuellerService:
    """Sampled certificate for M(K) ⊆ K.

    M is Mueller iff q_G(M·(1; u)) ≥ 0 and the intensity b(u) ≥ 0 for every
    u on the unit sphere. The sphere is covered by the two hemispheres over a
    square grid of the unit disk plus, when ``settings.grid.ring`` is on, a
    ring of points on the equator where the hemisphere grids are sparsest.
    """

    mathService: NumericKernelService = inject.attr(NumericKernelService)
    stokesService: StokesService = inject.attr(StokesService)

    def gap(self, M, u, tol: Optional[Tolerances] = None) -> Gap:
        """Intensity b and quadratic form q of M applied to (1; u), unrounded."""
        M = self.mathService.as_matrix(M)
        u = np.asarray(u, dtype=float).ravel()
        if u.shape != (3,) or abs(np.linalg.norm(u) - 1.0) > 1e-9:
            raise ConeDomainError("gap is evaluated on unit vectors u")
        s = M @ np.concatenate(([1.0], u))
        return Gap(b=float(s[0]), q=self.stokesService.q_G(s))

    def is_mueller(self, M, resolution: Optional[int] = None, tol: Optional[Tolerances] = None) -> MuellerReport:
        tol = tol or Tolerances.default()
        resolution = resolution or settings.grid.resolution
        ring = settings.grid.ring
        M = self.mathService.as_matrix(M)
        self._check_resolution(resolution)

        key = cache.matrix_key(M, resolution, tol.zero_tol, tol.round_decimals, ring)
        cached = cache.lookup(key)
        if cached is not None:
            logger.debug("mueller report served from cache")
            return cached

        min_q, min_b = np.inf, np.inf
        argmin_q = argmin_b = None
        samples = 0
        for _, points in self._slice_points(resolution, ring):
            q, b = self._evaluate(M, points, tol)
            samples += points.shape[0]
            i, j = int(np.argmin(q)), int(np.argmin(b))
            # strict comparison keeps the earliest point on ties
            if q[i] < min_q:
                min_q, argmin_q = float(q[i]), points[i]
            if b[j] < min_b:
                min_b, argmin_b = float(b[j]), points[j]

        report = MuellerReport(
            verdict=bool(min_q >= -tol.zero_tol and min_b >= -tol.zero_tol),
            min_q=min_q + 0.0,
            argmin_q=argmin_q,
            min_b=min_b + 0.0,
            argmin_b=argmin_b,
            samples=samples,
            resolution=resolution,
            tol=tol.zero_tol,
        )
        logger.debug(f"mueller check over {samples} samples: min_q={report.min_q}, min_b={report.min_b}")
        return cache.store(key, report)

    def sample_chunks(self, M, resolution: Optional[int] = None, tol: Optional[Tolerances] = None, ring: bool = False) -> Iterator[GridSample]:
        """Rounded per-point values, one chunk of grid rows at a time.

        Arguments are validated before the first chunk is requested.
        """
        tol = tol or Tolerances.default()
        resolution = resolution or settings.grid.resolution
        M = self.mathService.as_matrix(M)
        self._check_resolution(resolution)
        return self._sample_chunks(M, resolution, tol, ring)

    def _sample_chunks(self, M: np.ndarray, resolution: int, tol: Tolerances, ring: bool) -> Iterator[GridSample]:
        for hemisphere, points in self._slice_points(resolution, ring):
            q, b = self._evaluate(M, points, tol)
            yield GridSample(x=points[:, 0], y=points[:, 1], hemisphere=np.full(points.shape[0], hemisphere), q=q, b=b)

    def sample(self, M, resolution: Optional[int] = None, tol: Optional[Tolerances] = None, ring: bool = False) -> GridSample:
        chunks = list(self.sample_chunks(M, resolution, tol, ring))
        return GridSample(**{field: np.concatenate([getattr(chunk, field) for chunk in chunks]) for field in ("x", "y", "hemisphere", "q", "b")})

    def necessary_conditions(self, M, tol: Optional[Tolerances] = None) -> NecessaryConditions:
        """Cheap screen, failing any flag rules M out; passing all proves nothing."""
        tol = tol or Tolerances.default()
        M = self.mathService.as_matrix(M)
        a, w0, v0, m = helpers.split(M)

        first_column = self.stokesService.classify(np.concatenate(([a], v0)), tol) != ConeClass.outside
        first_row = self.stokesService.classify(np.concatenate(([a], w0)), tol) != ConeClass.outside
        if abs(a) <= tol.zero_tol:
            zero_a = bool(np.all(np.abs(M) <= tol.zero_tol))
            submatrix = True
        else:
            zero_a = True
            corner = helpers.assemble(0.0, (0, 0, 0), (0, 0, 0), m / a)
            submatrix = a > 0 and self.mathService.spectral_norm(corner) <= 1.0 + tol.zero_tol

        return NecessaryConditions(
            first_column_stokes=first_column,
            first_row_stokes=first_row,
            zero_a_implies_zero=zero_a,
            submatrix_norm_ok=bool(submatrix),
        )

    def normalize(self, M, tol: Optional[Tolerances] = None) -> np.ndarray:
        """Scale M so that its (1,1) entry is 1."""
        tol = tol or Tolerances.default()
        M = self.mathService.as_matrix(M)
        a = M[0, 0]
        if abs(a) <= tol.zero_tol:
            raise ConeDomainError("entry (1,1) is zero; such a matrix is Mueller only when it is the zero matrix and has no normalized form")
        return M / a

    # region helpers

    def _evaluate(self, M: np.ndarray, points: np.ndarray, tol: Tolerances) -> Tuple[np.ndarray, np.ndarray]:
        S = np.hstack((np.ones((points.shape[0], 1)), points)) @ M.T
        q = np.around(self.stokesService.q_form(S), tol.round_decimals)
        b = np.around(S[:, 0], tol.round_decimals)
        return q, b

    @staticmethod
    def _check_resolution(resolution: int):
        if resolution < 3:
            raise ConeDomainError("grid resolution must be at least 3")

    @staticmethod
    def _slice_points(resolution: int, ring: bool) -> Iterator[Tuple[float, np.ndarray]]:
        """Unit vectors u in evaluation order, tagged +1, -1 or 0 (equator ring)."""
        xs = np.linspace(-settings.grid.extent, settings.grid.extent, resolution)
        step = max(1, settings.grid.chunk_rows)
        for hemisphere in (1.0, -1.0):
            for start in range(0, resolution, step):
                X, Y = np.meshgrid(xs, xs[start:start + step])
                inside = ~(X ** 2 + Y ** 2 > 1.0)
                x, y = X[inside], Y[inside]
                if x.size == 0:
                    continue
                z = hemisphere * np.sqrt(np.clip(1.0 - x ** 2 - y ** 2, 0.0, None))
                yield hemisphere, np.column_stack((x, y, z))
        if ring:
            count = 4 * (resolution - 1)
            theta = 2.0 * np.pi * np.arange(count) / count
            yield 0.0, np.column_stack((np.cos(theta), np.sin(theta), np.zeros(count)))

    # endregion
