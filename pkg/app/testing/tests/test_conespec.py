import inject
import numpy as np

from app.constants import E11, G, I4
from app.fixtures import golden_suite, lookup
from app.schemas import ConeClass
from app.services.conespec import ConeSpectrumService
from app.services.errors import ConeDomainError
from app.testing.base import QUICK_RESOLUTION, TestCaseBase


class ConeSpectrumTestCase(TestCaseBase):
    spectrumService = inject.attr(ConeSpectrumService)

    def irreducible(self, name: str) -> bool:
        return self.spectrumService.is_K_irreducible(lookup(name).matrix, resolution=QUICK_RESOLUTION).holds

    def primitive(self, name: str) -> bool:
        return self.spectrumService.is_K_primitive(lookup(name).matrix, resolution=QUICK_RESOLUTION).holds

    def test_primitive_examples(self):
        self.should("recognize K-primitive matrices")
        self.assertTrue(self.primitive("E11"))
        self.assertTrue(self.primitive("G+2E11"))
        decision = self.spectrumService.is_K_primitive(G + 2.0 * E11, resolution=QUICK_RESOLUTION)
        self.assertEqual(decision.report.rho, 3.0)
        self.assertEqual(self.spectrumService.spectral_radius(G + 2.0 * E11), 3.0)
        self.assertEqual(decision.report.perron_in_K, ConeClass.interior)

    def test_reducible_examples(self):
        self.should("reject matrices with a repeated or non-simple peripheral spectrum")
        self.assertFalse(self.irreducible("G"))
        self.assertFalse(self.irreducible("M-rot"))
        self.assertFalse(self.irreducible("I4"))
        self.assertFalse(self.irreducible("E11+E12"))
        self.assertFalse(self.irreducible("E11+E21"))

    def test_irreducible_but_not_primitive(self):
        self.should("separate irreducibility from primitivity on a damped rotator")
        self.assertTrue(self.irreducible("M-irr"))
        self.assertFalse(self.primitive("M-irr"))
        report = self.spectrumService.birkhoff_report(lookup("M-irr").matrix)
        self.assertEqual(len(report.peripheral_eigenvalues), 3)

    def test_close_peripheral_eigenvalues(self):
        self.should("treat a slightly depolarizing diagonal as primitive")
        depolarizer = np.diag([1.0, 0.99999, 0.99999, 0.99999])
        decision = self.spectrumService.is_K_primitive(depolarizer, resolution=QUICK_RESOLUTION)
        self.assertTrue(decision.holds)
        self.assertEqual(decision.report.rho, 1.0)
        self.assertEqual(decision.report.peripheral_eigenvalues, [1.0])
        self.assertTrue(decision.report.rho_simple)
        self.assertEqual(decision.report.perron_in_K, ConeClass.interior)
        self.assertEqual(self.spectrumService.spectral_radius(depolarizer), 1.0)

    def test_birkhoff_failure(self):
        self.should("find no nonnegative Perron root for diag(-2, 1, 1, 1)")
        report = self.spectrumService.birkhoff_report(np.diag([-2.0, 1.0, 1.0, 1.0]))
        self.assertEqual(report.rho, 2.0)
        self.assertFalse(report.rho_is_eigenvalue)
        self.assertFalse(report.birkhoff_holds)

    def test_birkhoff_necessity(self):
        self.should("satisfy Birkhoff's conditions for every nonzero Mueller fixture")
        for fixture in golden_suite():
            if not fixture.expected_mueller or not np.any(fixture.matrix):
                continue
            with self.subTest(fixture=fixture.name):
                self.assertTrue(self.spectrumService.birkhoff_report(fixture.matrix).birkhoff_holds)

    def test_primitive_implies_irreducible(self):
        self.should("never call a matrix primitive without it being irreducible")
        for fixture in golden_suite():
            if not fixture.expected_mueller or not np.any(fixture.matrix):
                continue
            with self.subTest(fixture=fixture.name):
                if self.primitive(fixture.name):
                    self.assertTrue(self.irreducible(fixture.name))

    def test_rejects_non_cone_preserving(self):
        self.should("require a nonzero matrix that preserves the cone")
        with self.assertRaises(ConeDomainError):
            self.spectrumService.is_K_irreducible(np.zeros((4, 4)))
        with self.assertRaises(ConeDomainError):
            self.spectrumService.is_K_irreducible(-I4, resolution=QUICK_RESOLUTION)

    def test_power_iteration_converges(self):
        self.should("settle on the Perron vector of a dominant diagonal")
        trace = self.spectrumService.power_iteration(np.diag([2.0, 1.0, 1.0, 1.0]), [1.0, 0.5, 0.0, 0.0])
        self.assertTrue(trace.converged)
        self.assertLessEqual(trace.steps, 200)
        self.assertEqual(trace.limit_class, ConeClass.interior)
        self.assertAlmostEqual(trace.lambda_w, 1.0, delta=1e-9)
        self.assertEqual(len(trace.iterates), trace.steps + 1)

    def test_power_iteration_on_primitive_fixtures(self):
        self.should("reach an interior limit from every boundary seed")
        matrices = [(fixture.name, fixture.matrix) for fixture in golden_suite() if fixture.expected_primitive]
        matrices.append(("diag(2,1,1,1)", np.diag([2.0, 1.0, 1.0, 1.0])))
        self.assertGreaterEqual(len(matrices), 3)
        seeds = self.spectrumService.stokesService.canonical_boundary_seeds()
        for name, matrix in matrices:
            for seed in seeds:
                with self.subTest(fixture=name, seed=seed.to_array().tolist()):
                    trace = self.spectrumService.power_iteration(matrix, seed)
                    self.assertTrue(trace.converged)
                    self.assertLessEqual(trace.steps, 200)
                    self.assertEqual(trace.limit_class, ConeClass.interior)

    def test_power_iteration_oscillates(self):
        self.should("report no limit when the peripheral spectrum oscillates")
        trace = self.spectrumService.power_iteration(G, [1.0, 1.0, 0.0, 0.0], m_max=50)
        self.assertFalse(trace.converged)
        self.assertEqual(trace.steps, 50)
        self.assertIsNone(trace.limit)
        self.assertIsNone(trace.lambda_w)

    def test_power_iteration_rejects_bad_seeds(self):
        self.should("start only from nonzero cone vectors of a matrix with positive radius")
        with self.assertRaises(ConeDomainError):
            self.spectrumService.power_iteration(I4, [1.0, 2.0, 0.0, 0.0])
        with self.assertRaises(ConeDomainError):
            self.spectrumService.power_iteration(I4, [0.0, 0.0, 0.0, 0.0])
        with self.assertRaises(ConeDomainError):
            self.spectrumService.power_iteration(np.zeros((4, 4)), [1.0, 0.0, 0.0, 0.0])

    def test_witness_strong_irreducibility(self):
        self.should("drive every boundary seed into the interior for irreducible matrices")
        for name in ("E11", "G+2E11", "M-irr"):
            traces = self.spectrumService.witness_strong_irreducibility(lookup(name).matrix)
            self.assertEqual(len(traces), 6)
            for trace in traces:
                with self.subTest(fixture=name):
                    self.assertTrue(trace.converged)
                    self.assertEqual(trace.limit_class, ConeClass.interior)
