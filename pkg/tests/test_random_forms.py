import unittest
import os
import sys

# Add the parent directory to the path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.algebra.errors import ConfigError
from src.data.random_forms import RandomFormGenerator
from src.spectrum.eigenfunctions import verify_eigen


class TestRandomFormGenerator(unittest.TestCase):
    """Test cases for the seeded form generator"""

    def setUp(self):
        self.generator = RandomFormGenerator(n=3, max_degree=4, seed=42)

    def test_determinism(self):
        """The same seed yields the same forms"""
        first = RandomFormGenerator(n=2, seed=7).generate_forms(10, 1)
        second = RandomFormGenerator(n=2, seed=7).generate_forms(10, 1)
        self.assertEqual(first, second)
        third = RandomFormGenerator(n=2, seed=8).generate_forms(10, 1)
        self.assertNotEqual(first, third)

    def test_shapes(self):
        """Forms have the requested type, nonzero coefficients and bounded degree"""
        forms = self.generator.generate_all_degrees(5)
        self.assertListEqual(sorted(forms), [0, 1, 2, 3])
        for q, batch in forms.items():
            self.assertEqual(len(batch), 5)
            for form in batch:
                self.assertEqual((form.n, form.q), (3, q))
                self.assertFalse(form.is_zero)
                self.assertLessEqual(form.degree, 4)

    def test_real_coefficients(self):
        """complex_coefficients=False gives real coefficients only"""
        generator = RandomFormGenerator(n=1, complex_coefficients=False, seed=1)
        for _ in range(20):
            poly = generator.random_poly()
            self.assertTrue(all(not c.y for c in poly.terms.values()))

    def test_invalid_bounds(self):
        """Nonsensical generator settings raise ConfigError"""
        with self.assertRaises(ConfigError):
            RandomFormGenerator(n=0)
        with self.assertRaises(ConfigError):
            RandomFormGenerator(max_terms=0)
        with self.assertRaises(ConfigError):
            RandomFormGenerator(coefficient_range=0)

    def test_random_tensor(self):
        """Random tensor eigenforms satisfy the eigen-equation"""
        for q in range(4):
            f = self.generator.random_tensor(q)
            self.assertEqual(f.q, q)
            self.assertTrue(verify_eigen(f).holds)


if __name__ == "__main__":
    unittest.main()
