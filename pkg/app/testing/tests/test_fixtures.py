import inject
import numpy as np

from app import helpers
from app.fixtures import golden_suite, lookup
from app.services.conespec import ConeSpectrumService
from app.services.errors import ConeInputError
from app.testing.base import QUICK_RESOLUTION, TestCaseBase


class FixtureTestCase(TestCaseBase):
    spectrumService = inject.attr(ConeSpectrumService)

    def test_names_are_unique(self):
        self.should("give every fixture its own name")
        names = [fixture.name for fixture in golden_suite()]
        self.assertEqual(len(names), len(set(names)))
        self.assertIn("negI4", names)

    def test_unit_shifts_span(self):
        self.should("span all 4×4 matrices with the sixteen E11 + E_ij fixtures")
        stacked = np.array([helpers.vec(lookup(f"E11+E{i}{j}").matrix) for i in range(1, 5) for j in range(1, 5)])
        self.assertEqual(np.linalg.matrix_rank(stacked), 16)

    def test_expected_primitivity(self):
        self.should("agree with the cone spectral decisions where an expectation is recorded")
        for fixture in golden_suite():
            if fixture.expected_primitive is None:
                continue
            with self.subTest(fixture=fixture.name):
                decision = self.spectrumService.is_K_primitive(fixture.matrix, resolution=QUICK_RESOLUTION)
                self.assertEqual(decision.holds, fixture.expected_primitive)

    def test_lookup(self):
        self.should("find fixtures by name and reject unknown names")
        self.assertEqual(lookup("G+2E11").matrix.diagonal().tolist(), [3.0, -1.0, -1.0, -1.0])
        with self.assertRaises(ConeInputError):
            lookup("no-such-fixture")
