"""Smoke tests for the python module: each main operation is exercised once."""

import math
import unittest

import numpy as np

import wavegen


class SmokeTest(unittest.TestCase):
    def test_qmf_rev(self):
        self.assertEqual(wavegen.qmf([1, 2, 3, 4]), [4, -3, 2, -1])
        self.assertEqual(wavegen.rev([1, 2, 3, 4]), [4, 3, 2, 1])

    def test_catalog_lookup(self):
        names = [entry.name for entry in wavegen.catalog()]
        self.assertIn("haar", names)
        self.assertIn("db3", names)
        db3 = wavegen.lookup("db3")
        self.assertEqual(len(db3.taps), 6)
        self.assertAlmostEqual(db3.taps[0], 0.0352)
        self.assertIsNone(wavegen.lookup("nope"))

    def test_residuals(self):
        haar = wavegen.lookup("haar").taps
        report = wavegen.constraint_residuals(haar)
        self.assertLessEqual(report.total_abs, 1e-15)
        self.assertEqual(wavegen.lyapunov([1.0, 0.0]), 1.0)

    def test_solve(self):
        result = wavegen.solve(n=3, seed=7)
        self.assertTrue(result.converged)
        self.assertLess(result.report.total_abs, 1e-12)
        self.assertEqual(len(result.taps), 6)
        # pinned taps are preserved bitwise
        pinned = wavegen.solve(n=3, seed=0, epsilon=2e-4,
                               pinned={1: 0.0352, 5: 0.8069, 6: 0.3327})
        self.assertEqual(pinned.taps[0], 0.0352)
        self.assertAlmostEqual(pinned.taps[1], -0.0854, delta=5e-3)

    def test_closed_form(self):
        taps = wavegen.closed_form_n3(0.0352, 0.8069, 0.3327)
        self.assertAlmostEqual(taps[3], 0.4599, delta=5e-3)

    def test_roundtrip_1d(self):
        rng = np.random.default_rng(1)
        signal = rng.uniform(-100, 100, 64).tolist()
        l_d = wavegen.solve(n=4, seed=1).taps
        d = wavegen.analyze_1d(signal, l_d)
        self.assertEqual(len(d.p), 32)
        back, approx_from = wavegen.synthesize_1d(d, l_d)
        self.assertEqual(approx_from, 64)
        delta = max(abs(a - b) for a, b in zip(signal, back))
        self.assertLess(delta, 1e-10)

    def test_roundtrip_2d(self):
        rng = np.random.default_rng(2)
        image = rng.uniform(0, 255, (32, 32))
        l_d = wavegen.lookup("db3-exact").taps
        d = wavegen.analyze_2d(image, l_d)
        self.assertEqual(d.main.shape, (16, 16))
        back = wavegen.synthesize_2d(d, l_d)
        self.assertLess(wavegen.reconstruction_error(image, back), 1e-10)
        energy = wavegen.subband_energy(d)
        self.assertAlmostEqual(energy["total"], float(np.sum(image ** 2)), delta=1e-4)

    def test_analysis_matrix(self):
        l_d = wavegen.lookup("db3-exact").taps
        w = wavegen.build_analysis_matrix(l_d, 24)
        dev = np.max(np.abs(w @ w.T - np.eye(24)))
        self.assertLess(dev, 1e-10)

    def test_extension_mode(self):
        self.assertEqual(wavegen.extend([1.0, 2.0, 3.0, 4.0], 2), [3, 2, 1, 1, 2, 3, 4])
        l_d = wavegen.lookup("db3-exact").taps
        signal = [math.sin(0.3 * i) for i in range(16)]
        d = wavegen.analyze_1d(signal, l_d, mode="paper")
        back, approx_from = wavegen.synthesize_1d(d, l_d)
        self.assertEqual(approx_from, 16 - 6 + 2)
        exact = max(abs(a - b) for a, b in zip(signal[:approx_from], back[:approx_from]))
        self.assertLess(exact, 1e-10)


if __name__ == "__main__":
    unittest.main()
