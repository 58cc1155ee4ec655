import unittest
import os
import sys

# Add the parent directory to the path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.algebra.errors import DegreeError, DimensionMismatchError
from src.algebra.forms import QForm
from src.algebra.polynomial import Poly, parse_poly
from src.data.random_forms import RandomFormGenerator
from src.operators.dbar_complex import box
from src.operators.witten import (WittenRep, dirac_square, levi_action, levi_matrix, pauli,
                                  scalar_laplacian_on_components, witten_coord, witten_D, witten_Dstar,
                                  witten_laplacian, witten_Z, witten_Zstar)


class TestWittenExamples(unittest.TestCase):
    """Ladder operators and the Witten Laplacian on small inputs"""

    def setUp(self):
        self.zbar = WittenRep.of(Poly.zbar(1, 1))
        self.one = WittenRep.of(Poly.constant(1))

    def test_ladder(self):
        """Z* Z zbar = zbar and Z kills holomorphic representatives"""
        self.assertEqual(witten_Zstar(witten_Z(self.zbar, 1), 1), self.zbar)
        self.assertTrue(witten_Z(WittenRep.of(parse_poly("z1^2 + 3*z1", 1)), 1).form.is_zero)
        self.assertEqual(witten_Zstar(self.one, 1).scalar, Poly.zbar(1, 1))

    def test_coordinate_formula(self):
        """The coordinate formula fixes zbar e^{-|z|^2/2} and kills the ground state"""
        self.assertEqual(witten_coord(self.zbar), self.zbar)
        self.assertTrue(witten_coord(self.one).form.is_zero)

    def test_degree_bounds(self):
        """D needs q < n, D* needs q >= 1"""
        with self.assertRaises(DegreeError):
            witten_D(WittenRep(QForm.basis(1, (1,))))
        with self.assertRaises(DegreeError):
            witten_Dstar(self.one)

    def test_pauli(self):
        """P_- zbar = zbar, P_+ 1 = 1, P_- kills holomorphic representatives"""
        self.assertEqual(pauli(self.zbar, "-"), self.zbar)
        self.assertEqual(pauli(self.one, "+"), self.one)
        self.assertTrue(pauli(WittenRep.of(parse_poly("z1^3", 1)), -1).form.is_zero)
        minus, plus = dirac_square(self.zbar, self.one)
        self.assertEqual((minus, plus), (self.zbar, self.one))

    def test_pauli_errors(self):
        """Pauli operators only exist for n = 1 scalars with a valid sign"""
        with self.assertRaises(DimensionMismatchError):
            pauli(WittenRep.of(Poly.constant(2)), "-")
        with self.assertRaises(ValueError):
            pauli(self.one, "*")

    def test_levi_matrix(self):
        """The complex Hessian of |z|^2 is the identity"""
        matrix = levi_matrix(3)
        for j in range(3):
            for k in range(3):
                self.assertEqual(matrix[j][k], Poly.constant(3, 1 if j == k else 0))

    def test_to_text(self):
        """The Gaussian envelope is shown explicitly"""
        self.assertEqual(self.zbar.to_text(), "(zb1)*exp(-|z|^2/2)")


class TestWittenIdentities(unittest.TestCase):
    """Exact identities on 100 seeded random forms per degree q"""

    SAMPLES = 100

    @classmethod
    def setUpClass(cls):
        cls.forms = {}
        for n in (1, 2):
            generator = RandomFormGenerator(n=n, max_degree=4, seed=40 + n)
            cls.forms[n] = generator.generate_all_degrees(cls.SAMPLES)

    def test_conjugation(self):
        """The Witten Laplacian on representatives is exactly box"""
        for by_degree in self.forms.values():
            for forms in by_degree.values():
                for f in forms:
                    self.assertEqual(witten_laplacian(WittenRep(f)).form, box(f))

    def test_coordinate_formula(self):
        """The coordinate formula agrees with D D* + D* D"""
        for by_degree in self.forms.values():
            for forms in by_degree.values():
                for f in forms:
                    h = WittenRep(f)
                    self.assertEqual(witten_coord(h), witten_laplacian(h))

    def test_complex_property(self):
        """D D = 0 and D* D* = 0 for n = 2"""
        by_degree = self.forms[2]
        for f in by_degree[0]:
            self.assertTrue(witten_D(witten_D(WittenRep(f))).form.is_zero)
        for f in by_degree[2]:
            self.assertTrue(witten_Dstar(witten_Dstar(WittenRep(f))).form.is_zero)

    def test_ladder_commutator(self):
        """[Z_j, Z_k*] = delta_jk on every component"""
        for f in self.forms[2][0]:
            h = WittenRep(f)
            for j in (1, 2):
                for k in (1, 2):
                    commutator = witten_Z(witten_Zstar(h, k), j) - witten_Zstar(witten_Z(h, j), k)
                    self.assertEqual(commutator, h if j == k else WittenRep(QForm.zero(2, 0)))

    def test_levi_decomposition(self):
        """On (0,1)-forms the Laplacian splits as componentwise scalar part plus the Levi action"""
        for n, by_degree in self.forms.items():
            for f in by_degree[1]:
                g = WittenRep(f)
                self.assertEqual(witten_laplacian(g), scalar_laplacian_on_components(g) + levi_action(g))
        with self.assertRaises(DegreeError):
            levi_action(WittenRep.of(Poly.constant(1)))

    def test_pauli_matches_box(self):
        """P_- is box on functions; P_+ is box on the dzbar coefficient"""
        for f in self.forms[1][0]:
            p = f.scalar
            self.assertEqual(pauli(WittenRep(f), "-").form, box(f))
            plus = box(QForm.basis(1, (1,), p)).coefficient((1,))
            self.assertEqual(pauli(WittenRep(f), "+").scalar, plus)


if __name__ == "__main__":
    unittest.main()
