import inspect
import unittest

import numpy as np

from app.schemas import Tolerances
from app.services import cache

# Grid used by property sweeps, the default 1001 is kept for golden checks.
QUICK_RESOLUTION = 201


class TestCaseBase(unittest.TestCase):
    tol = Tolerances.default()

    @classmethod
    def setUpClass(cls) -> None:
        cache.clear()
        super().setUpClass()

    def setUp(self) -> None:
        self.logPoint()

    def tearDown(self) -> None:
        self.logPoint()
        print("\n")

    def logPoint(self):
        calling_function = inspect.stack()[1][3]
        current_test = self.id().split('.')[-1]
        print(f"in {current_test} - {calling_function}()")

    # noinspection PyMethodMayBeStatic
    def should(self, message=None):
        if message is not None and len(message) > 0:
            print(f"should {message}")

    def assertMatrixEqual(self, actual, expected, atol: float = 0.0):
        actual, expected = np.asarray(actual, dtype=float), np.asarray(expected, dtype=float)
        self.assertEqual(actual.shape, expected.shape)
        if atol == 0.0:
            self.assertTrue(np.array_equal(actual, expected), f"\n{actual}\n!=\n{expected}")
        else:
            self.assertTrue(np.allclose(actual, expected, rtol=0.0, atol=atol), f"\n{actual}\n!~\n{expected}")
