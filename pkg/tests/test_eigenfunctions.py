import unittest
import os
import sys

# Add the parent directory to the path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.algebra.errors import DegreeError, DimensionMismatchError, ParameterRangeError
from src.algebra.forms import all_multi_indices
from src.algebra.polynomial import Bidegree, Poly, gaussian, iter_bidegrees, parse_poly
from src.analysis.inner_product import poly_inner
from src.data.random_forms import RandomFormGenerator
from src.spectrum.eigenfunctions import (EigenFunction, antiholomorphic_fn, canonical_eigenfunction,
                                         count_with_eigenvalue, eigenbasis_up_to, expand_monomial,
                                         holomorphic_fn, reconstruct, span_rank, tensor_fn,
                                         tensor_from_monomial, u_coefficients, u_coefficients_by_recurrence,
                                         u_fn, v_coefficients, v_coefficients_by_recurrence, v_fn,
                                         verify_eigen)


class TestOneVariableFamilies(unittest.TestCase):
    """The u, v, holomorphic and antiholomorphic families for n = 1"""

    def test_u_examples(self):
        """u_(1,1) = z zbar^2 - 2 zbar with eigenvalue 2; u_(0,1) = z zbar - 1"""
        f = u_fn(1, 1)
        self.assertEqual(f.poly.to_text(), "z1 zb1^2 - 2*zb1")
        self.assertEqual(f.eigenvalue, 2)
        self.assertEqual(u_fn(0, 1).poly, parse_poly("z1 zb1 - 1", 1))

    def test_u_second_coefficient(self):
        """a_2 = (k+2)(k+1)"""
        for k in range(6):
            self.assertEqual(u_coefficients(k, 2)[2], (k + 2) * (k + 1))

    def test_v_examples(self):
        """v_(1,1) = zbar z^2 - 2z; v_(2,0) = zbar^2 z^2 - 4 zbar z + 2"""
        self.assertEqual(v_fn(1, 1).poly, parse_poly("z1^2 zb1 - 2*z1", 1))
        self.assertEqual(v_fn(1, 1).eigenvalue, 1)
        self.assertEqual(v_fn(2, 0).poly, parse_poly("z1^2 zb1^2 - 4*z1 zb1 + 2", 1))
        self.assertEqual(v_fn(1, 0).poly, u_fn(0, 1).poly)

    def test_families_coincide_on_charge_zero(self):
        """u_(0,m) and v_(m,0) are the same polynomial"""
        for m in range(1, 8):
            self.assertEqual(u_fn(0, m).poly, v_fn(m, 0).poly)

    def test_parameter_ranges(self):
        """u needs m >= 1, v needs k >= 1, exponents are non-negative"""
        with self.assertRaises(ParameterRangeError):
            u_fn(1, 0)
        with self.assertRaises(ParameterRangeError):
            u_fn(-1, 2)
        with self.assertRaises(ParameterRangeError):
            v_fn(0, 3)
        with self.assertRaises(ParameterRangeError):
            antiholomorphic_fn(0)
        with self.assertRaises(ParameterRangeError):
            holomorphic_fn(-1)
        with self.assertRaises(ParameterRangeError):
            canonical_eigenfunction(2, -1)
        with self.assertRaises(ValueError):
            EigenFunction(0, "w", ((0, 0),), Poly.constant(1))

    def test_recurrence_matches_closed_form(self):
        """The exponent-matching recurrence reproduces the factorial formulas"""
        for k in range(9):
            for m in range(9):
                self.assertEqual(u_coefficients_by_recurrence(k, m), u_coefficients(k, m))
                self.assertEqual(v_coefficients_by_recurrence(k, m), v_coefficients(k, m))

    def test_canonical_selection(self):
        """The canonical function leads with z^a zbar^b and has eigenvalue b"""
        for key in iter_bidegrees(1, 8):
            a, b = key.alpha[0], key.beta[0]
            f = canonical_eigenfunction(a, b)
            self.assertEqual(f.leading, key)
            self.assertEqual(f.eigenvalue, b)
        self.assertEqual(canonical_eigenfunction(3, 0).kind, "holomorphic")
        self.assertEqual(canonical_eigenfunction(0, 3).params, ((3, 0),))
        self.assertEqual(canonical_eigenfunction(3, 1).label(), "v1,2")
        self.assertEqual(canonical_eigenfunction(1, 3).label(), "u2,1")


class TestVerifyEigen(unittest.TestCase):
    """Exact eigen-equation checks"""

    def test_families(self):
        """Every u_(k,m) and v_(k,m) with k + m <= 12 satisfies box f = lambda f"""
        for k in range(13):
            for m in range(1, 13 - k):
                check = verify_eigen(u_fn(k, m))
                self.assertTrue(check.holds, f"u_({k},{m}) residual {check.residual}")
        for k in range(1, 13):
            for m in range(13 - k):
                check = verify_eigen(v_fn(k, m))
                self.assertTrue(check.holds, f"v_({k},{m}) residual {check.residual}")

    def test_tampered_coefficient(self):
        """Changing a lower coefficient leaves an exact nonzero residual"""
        tampered = EigenFunction(2, "u", ((1, 1),), parse_poly("z1 zb1^2 - 3*zb1", 1))
        check = verify_eigen(tampered)
        self.assertFalse(check.holds)
        self.assertEqual(check.residual, Poly.zbar(1, 1))


class TestTensors(unittest.TestCase):
    """Products of one-variable eigenfunctions in (0,q)-form components"""

    def test_shifted_eigenvalue(self):
        """v_(1,0) x 1 in dzbar_1 has eigenvalue 2; u_(1,1) x v_(2,1) in dzbar_2 has eigenvalue 5"""
        f = tensor_fn([v_fn(1, 0), holomorphic_fn(0)], (1,))
        self.assertEqual(f.eigenvalue, 2)
        self.assertEqual(f.q, 1)
        self.assertTrue(verify_eigen(f).holds)
        g = tensor_fn([u_fn(1, 1), v_fn(2, 1)], (2,))
        self.assertEqual(g.eigenvalue, 5)
        self.assertTrue(verify_eigen(g).holds)
        self.assertEqual(g.factor_kinds, ("u", "v"))
        default = tensor_fn([u_fn(1, 1), v_fn(2, 1)], q=1)
        self.assertEqual(default.component, (1,))

    def test_every_component(self):
        """The same product is an eigenform in every component of every degree, n = 3"""
        factors = [canonical_eigenfunction(1, 2), canonical_eigenfunction(2, 0), canonical_eigenfunction(0, 1)]
        for q in range(4):
            for J in all_multi_indices(3, q):
                f = tensor_fn(factors, J, q)
                self.assertEqual(f.eigenvalue, 3 + q)
                self.assertTrue(verify_eigen(f).holds)

    def test_random_tensors(self):
        """200 seeded random tensor eigenforms for n = 2, 3 over every degree q satisfy box f = lambda f"""
        for n in (2, 3):
            generator = RandomFormGenerator(n=n, max_degree=6, seed=70 + n)
            for i in range(100):
                f = generator.random_tensor(i % (n + 1))
                check = verify_eigen(f)
                self.assertTrue(check.holds, f"{f.label()} residual {check.residual}")

    def test_invalid_tensors(self):
        """Factor count, component and factor kind are validated"""
        with self.assertRaises(DimensionMismatchError):
            tensor_fn([])
        with self.assertRaises(DimensionMismatchError):
            tensor_fn([u_fn(0, 1)], n=2)
        with self.assertRaises(DegreeError):
            tensor_fn([u_fn(0, 1), u_fn(0, 1)], (3,))
        with self.assertRaises(DegreeError):
            tensor_fn([u_fn(0, 1), u_fn(0, 1)], (2, 1))
        with self.assertRaises(DimensionMismatchError):
            tensor_fn([tensor_fn([u_fn(0, 1)]), u_fn(0, 1)])

    def test_tensor_from_monomial(self):
        """The tensor leads with the requested monomial"""
        key = Bidegree((2, 0), (1, 3))
        f = tensor_from_monomial(key)
        self.assertEqual(f.leading, key)
        self.assertEqual(f.eigenvalue, 4)


class TestExpansion(unittest.TestCase):
    """Monomials as exact combinations of eigenfunctions"""

    def test_zzbar(self):
        """z zbar = u_(0,1) + 1"""
        expansion = expand_monomial(Bidegree((1,), (1,)))
        as_dict = {f.label(): c for f, c in expansion}
        self.assertEqual(as_dict, {"u0,1": gaussian(1), "z^0": gaussian(1)})
        self.assertEqual(reconstruct(expansion), Poly.monomial((1,), (1,)))

    def test_eigenfunctions_expand_to_themselves(self):
        """zbar and z^3 are already eigenfunctions"""
        for key in (Bidegree((0,), (1,)), Bidegree((3,), (0,))):
            expansion = expand_monomial(key)
            self.assertEqual(len(expansion), 1)
            self.assertEqual(expansion[0][0].leading, key)

    def test_reconstruction(self):
        """Every monomial of degree <= 8 (n = 1) and <= 4 (n = 2) is reproduced exactly"""
        for n, cap in ((1, 8), (2, 4)):
            for key in iter_bidegrees(n, cap):
                self.assertEqual(reconstruct(expand_monomial(key)), Poly(n, {key: 1}))
        with self.assertRaises(ValueError):
            reconstruct([])

    def test_completeness(self):
        """Canonical eigenfunctions of degree <= D span all polynomials of degree <= D"""
        for D in range(9):
            basis = eigenbasis_up_to(1, D)
            self.assertEqual(span_rank([f.poly for f in basis]), (D + 1) * (D + 2) // 2)
        self.assertEqual(span_rank([]), 0)

    def test_orthogonality(self):
        """Distinct u_(k,m) and v_(k,m) with k + m <= 6 are orthogonal (v_(k,0) repeats u_(0,k))"""
        family = [u_fn(k, m) for k in range(7) for m in range(1, 7 - k)]
        family += [v_fn(k, m) for k in range(1, 7) for m in range(1, 7 - k)]
        for i, f in enumerate(family):
            self.assertFalse(poly_inner(f.poly, f.poly).is_zero)
            for g in family[i + 1:]:
                self.assertTrue(poly_inner(f.poly, g.poly).is_zero, f"{f.label()} vs {g.label()}")
        basis = eigenbasis_up_to(1, 6)
        for i, f in enumerate(basis):
            for g in basis[i + 1:]:
                self.assertTrue(poly_inner(f.poly, g.poly).is_zero, f"{f.label()} vs {g.label()}")

    def test_count_with_eigenvalue(self):
        """Degree <= 8 holds 9 - mu eigenfunctions with eigenvalue mu"""
        for mu in range(9):
            self.assertEqual(count_with_eigenvalue(1, 8, mu), 9 - mu)


if __name__ == "__main__":
    unittest.main()
