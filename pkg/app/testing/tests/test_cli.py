import os
from unittest import mock

import numpy as np

from app.constants import E11, G, I4
from app.fixtures import golden_suite
from app.services.approx import ApproximationService
from app.services.matrix_file import MatrixFileService
from app.testing import client
from app.testing.base import QUICK_RESOLUTION, TestCaseBase


class CommandLineTestCase(TestCaseBase):
    fileService = MatrixFileService()

    def setUp(self) -> None:
        super().setUp()
        self._workspace = client.workspace()
        self.directory = self._workspace.name

    def tearDown(self) -> None:
        self._workspace.cleanup()
        super().tearDown()

    def matrix_file(self, name: str, matrix) -> str:
        return client.write_matrix(self.directory, name, matrix)

    def test_envelope(self):
        self.should("wrap every report in the versioned envelope")
        result = client.invoke("check-mueller", self.matrix_file("G", G), "--resolution", QUICK_RESOLUTION)
        self.assertEqual(result.exit_code, 0)
        document = client.payload(result)
        self.assertEqual(document["schema"], "mueller-cone/1")
        self.assertEqual(document["command"], "check-mueller")
        self.assertTrue(document["data"]["verdict"])
        self.assertEqual(document["data"]["resolution"], QUICK_RESOLUTION)

    def test_check_mueller_failure(self):
        self.should("exit with 1 and report the intensity minimum")
        result = client.invoke("check-mueller", self.matrix_file("neg-unit", -E11), "--resolution", QUICK_RESOLUTION)
        self.assertEqual(result.exit_code, 1)
        self.assertAlmostEqual(client.payload(result)["data"]["min_b"], -1.0, delta=1e-9)

    def test_check_stokes(self):
        self.should("classify a vector file")
        path = client.write_text(self.directory, "s.txt", "1 2 0 0\n")
        result = client.invoke("check-stokes", path)
        self.assertEqual(result.exit_code, 1)
        data = client.payload(result)["data"]
        self.assertEqual(data["class"], "Outside")
        self.assertEqual(data["q"], -3.0)
        self.assertEqual(data["vector"], {"a": 1.0, "v": [2.0, 0.0, 0.0]})

        path = client.write_text(self.directory, "t.txt", '{"s": [1, 0.6, 0.8, 0]}\n')
        result = client.invoke("check-stokes", path)
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(client.payload(result)["data"]["class"], "Boundary")

    def test_malformed_input(self):
        self.should("exit with 2 and name the line and column")
        path = client.write_text(self.directory, "bad.txt", "1 0 0 0\n0 1 x 0\n0 0 1 0\n0 0 0 1\n")
        result = client.invoke("check-mueller", path)
        self.assertEqual(result.exit_code, 2)
        self.assertEqual(result.stdout, "")
        self.assertIn(f"{path}:2:5", result.stderr)

        result = client.invoke("check-mueller", os.path.join(self.directory, "missing.txt"))
        self.assertEqual(result.exit_code, 2)

        result = client.invoke("norm", self.matrix_file("G", G), "--tol", "-1")
        self.assertEqual(result.exit_code, 2)
        self.assertIn("--tol", result.stderr)

        result = client.invoke("check-mueller", self.matrix_file("G", G), "--resolution", 2)
        self.assertEqual(result.exit_code, 2)
        self.assertIn("--resolution", result.stderr)

    def test_approx_writes_output(self):
        self.should("write the shifted matrix next to the input")
        path = self.matrix_file("negI4", -I4)
        result = client.invoke("approx", path, "--mode", "mueller", "--resolution", QUICK_RESOLUTION)
        self.assertEqual(result.exit_code, 0)
        data = client.payload(result)["data"]
        output = os.path.join(self.directory, "negI4.mueller.txt")
        self.assertEqual(data["output_file"], output)
        self.assertEqual(data["label"], "M(mu)")
        self.assertFalse(data["primitive"])
        with open(output, encoding="utf-8") as f:
            self.assertEqual(f.read(), self.fileService.render_matrix(G))

    def test_approx_modes(self):
        self.should("support every approximation mode")
        cases = [
            ("zero", np.zeros((4, 4)), ["--mode", "invertible"], 0.01 * I4, "M(inv)"),
            ("E11", E11, ["--mode", "mueller-inv-rho", "--epsilon", "1"], np.diag([7.0, 4.0, 4.0, 4.0]), "M(mu-inv-rho)"),
            ("G", G, ["--mode", "primitive", "--n", "2"], np.diag([2.0, -1.0, -1.0, -1.0]), "M(prim)"),
            ("negI4", -I4, ["--mode", "mueller-inv"], G, "M(mu-inv)"),
        ]
        for name, matrix, options, expected, label in cases:
            with self.subTest(mode=options[1]):
                result = client.invoke("approx", self.matrix_file(name, matrix), *options, "--resolution", QUICK_RESOLUTION)
                self.assertEqual(result.exit_code, 0)
                data = client.payload(result)["data"]
                self.assertEqual(data["label"], label)
                written = self.fileService.read_matrix(data["output_file"])
                self.assertMatrixEqual(written, expected, atol=1e-12)
                self.assertMatrixEqual(written, np.reshape(data["output"], (4, 4)))

    def test_approx_failed_recheck(self):
        self.should("exit with 1 when a composite output fails its recheck")
        path = self.matrix_file("negI4", -I4)
        result = client.invoke("approx", path, "--mode", "mueller-inv", "--resolution", QUICK_RESOLUTION)
        self.assertEqual(result.exit_code, 0)
        self.assertTrue(client.payload(result)["data"]["verified"])

        with mock.patch.object(ApproximationService, "_verify", return_value=False):
            result = client.invoke("approx", path, "--mode", "mueller-inv", "--resolution", QUICK_RESOLUTION)
        self.assertEqual(result.exit_code, 1)
        self.assertFalse(client.payload(result)["data"]["verified"])

    def test_approx_primitive_needs_mueller(self):
        self.should("refuse the primitive mode for a non-Mueller matrix")
        result = client.invoke("approx", self.matrix_file("negI4", -I4), "--mode", "primitive", "--resolution", QUICK_RESOLUTION)
        self.assertEqual(result.exit_code, 2)
        self.assertFalse(os.path.exists(os.path.join(self.directory, "negI4.primitive.txt")))

    def test_qgrid(self):
        self.should("dump the hemisphere grids as CSV")
        path = self.matrix_file("I4", I4)
        result = client.invoke("qgrid", path, "--resolution", 3)
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.stdout, "x,y,hemisphere,q,b\n0.0,0.0,1,0.0,1.0\n0.0,0.0,-1,0.0,1.0\n")

        again = client.invoke("qgrid", path, "--resolution", 3)
        self.assertEqual(again.stdout, result.stdout)

        out = os.path.join(self.directory, "grid.csv")
        result = client.invoke("qgrid", path, "--resolution", 3, "--out", out)
        self.assertEqual(result.exit_code, 0)
        with open(out, encoding="utf-8") as f:
            self.assertEqual(f.read(), again.stdout)

        result = client.invoke("qgrid", path, "--out", os.path.join(self.directory, "missing", "grid.csv"))
        self.assertEqual(result.exit_code, 2)

    def test_ecm(self):
        self.should("calibrate and optionally save the report")
        identity = self.matrix_file("I4", I4)
        out = os.path.join(self.directory, "ecm.json")
        result = client.invoke("ecm", identity, identity, identity, "--out", out, "--resolution", QUICK_RESOLUTION)
        self.assertEqual(result.exit_code, 0)
        data = client.payload(result)["data"]
        self.assertTrue(data["succeeded"])
        self.assertEqual(data["new_M_final"], I4.ravel().tolist())
        self.assertEqual(data["selection"]["provenance"], "KernelCombination")
        with open(out, encoding="utf-8") as f:
            self.assertEqual(f.read(), result.stdout)

    def test_fixtures_and_exit_codes(self):
        self.should("write the golden suite and honor the exit code of every verdict")
        target = os.path.join(self.directory, "golden")
        result = client.invoke("fixtures", target)
        self.assertEqual(result.exit_code, 0)
        suite = golden_suite()
        self.assertEqual(len(client.payload(result)["data"]), len(suite))
        for fixture in suite:
            path = os.path.join(target, f"{fixture.name}.txt")
            with self.subTest(fixture=fixture.name):
                self.assertMatrixEqual(self.fileService.read_matrix(path), fixture.matrix)
                result = client.invoke("check-mueller", path, "--resolution", QUICK_RESOLUTION)
                self.assertEqual(result.exit_code, 0 if fixture.expected_mueller else 1)

    def test_power(self):
        self.should("iterate from a seed file and strip iterates unless traced")
        matrix = self.matrix_file("E11", E11)
        seed = client.write_text(self.directory, "seed.txt", "1 1 0 0\n")
        result = client.invoke("power", matrix, "--seed", seed)
        self.assertEqual(result.exit_code, 0)
        traces = client.payload(result)["data"]
        self.assertEqual(len(traces), 1)
        self.assertEqual(traces[0]["iterates"], [])
        self.assertEqual(traces[0]["limit_class"], "Interior")

        result = client.invoke("power", matrix, "--seed", seed, "--trace")
        self.assertGreater(len(client.payload(result)["data"][0]["iterates"]), 1)

        result = client.invoke("power", matrix, "--witness")
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(len(client.payload(result)["data"]), 6)

        result = client.invoke("power", self.matrix_file("G", G), "--m-max", 20)
        self.assertEqual(result.exit_code, 1)

    def test_spectral_commands(self):
        self.should("report spectra and cone decisions")
        result = client.invoke("eigen", self.matrix_file("G", G))
        self.assertEqual(result.exit_code, 0)
        pairs = client.payload(result)["data"]
        self.assertEqual([pair["value"] for pair in pairs], [[1.0, 0.0], [-1.0, 0.0]])
        self.assertEqual([pair["algebraic_multiplicity"] for pair in pairs], [1, 3])

        result = client.invoke("spectral", self.matrix_file("neg-intensity", np.diag([-2.0, 1.0, 1.0, 1.0])))
        self.assertEqual(result.exit_code, 1)
        self.assertFalse(client.payload(result)["data"]["rho_is_eigenvalue"])

        primitive = self.matrix_file("G+2E11", G + 2.0 * E11)
        self.assertEqual(client.invoke("primitive", primitive, "--resolution", QUICK_RESOLUTION).exit_code, 0)
        depolarizer = self.matrix_file("depolarizer", np.diag([1.0, 0.99999, 0.99999, 0.99999]))
        result = client.invoke("primitive", depolarizer, "--resolution", QUICK_RESOLUTION)
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(client.payload(result)["data"]["report"]["peripheral_eigenvalues"], [[1.0, 0.0]])
        irreducible = self.matrix_file("M-rot", np.array([[1, 0, 0, 0], [0, 0, -1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=float))
        self.assertEqual(client.invoke("irreducible", irreducible, "--resolution", QUICK_RESOLUTION).exit_code, 1)
        result = client.invoke("irreducible", self.matrix_file("negI4", -I4), "--resolution", QUICK_RESOLUTION)
        self.assertEqual(result.exit_code, 2)

    def test_screen_and_norm(self):
        self.should("screen necessary conditions and report the norm")
        result = client.invoke("screen", self.matrix_file("neg-intensity", np.diag([-2.0, 1.0, 1.0, 1.0])))
        self.assertEqual(result.exit_code, 1)
        data = client.payload(result)["data"]
        self.assertFalse(data["passed"])
        self.assertFalse(data["first_column_stokes"])

        result = client.invoke("norm", self.matrix_file("2G", 2.0 * G))
        self.assertEqual(result.exit_code, 0)
        data = client.payload(result)["data"]
        self.assertAlmostEqual(data["spectral_norm"], 2.0, places=12)
        self.assertAlmostEqual(data["determinant"], -16.0, places=10)
        self.assertEqual(data["normalized"], G.ravel().tolist())

    def test_version(self):
        self.should("print the program version")
        result = client.invoke("--version")
        self.assertEqual(result.exit_code, 0)
        self.assertIn("mueller-cone", result.stdout)
