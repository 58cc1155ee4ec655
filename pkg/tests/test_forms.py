import unittest
import os
import sys

from hypothesis import given, settings, strategies as st

# Add the parent directory to the path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.algebra.errors import DegreeError, DimensionMismatchError, IndexRangeError
from src.algebra.forms import (QForm, SignedIndex, all_multi_indices, contract_basis, form_add, form_scale,
                               normalize_index, wedge_basis)
from src.algebra.polynomial import Poly


def accumulate(total, signed, sign):
    """Add sign * signed to a {index: coefficient} dictionary"""
    if not signed.is_zero:
        total[signed.index] = total.get(signed.index, 0) + sign * signed.sign


def pairing(signed, K):
    """Coefficient of dzbar_K in a signed basis element"""
    return 0 if signed.is_zero or signed.index != K else signed.sign


def twice(step, k, m, J, n):
    """step_k step_m applied to dzbar_J as an {index: sign} dictionary"""
    inner = step(m, J, n)
    if inner.is_zero:
        return {}
    total = {}
    accumulate(total, step(k, inner.index, n), inner.sign)
    return total


class TestMultiIndices(unittest.TestCase):
    """Sign conventions of the exterior algebra"""

    def test_normalize(self):
        """Sorting picks up the sign of the permutation; repeats give zero"""
        self.assertEqual(normalize_index((2, 1)), SignedIndex(-1, (1, 2)))
        self.assertEqual(normalize_index((3, 1, 2)), SignedIndex(1, (1, 2, 3)))
        self.assertTrue(normalize_index((1, 1)).is_zero)

    def test_all_multi_indices(self):
        """Increasing multi-indices in lexicographic order"""
        self.assertEqual(all_multi_indices(3, 2), [(1, 2), (1, 3), (2, 3)])
        self.assertEqual(all_multi_indices(2, 0), [()])
        with self.assertRaises(DegreeError):
            all_multi_indices(2, 3)

    def test_wedge(self):
        """dzbar_k ^ dzbar_J carries (-1)^{#{j in J: j < k}}"""
        self.assertEqual(wedge_basis(2, (1,)), SignedIndex(-1, (1, 2)))
        self.assertEqual(wedge_basis(1, (2,)), SignedIndex(1, (1, 2)))
        self.assertEqual(wedge_basis(2, (1, 3)), SignedIndex(-1, (1, 2, 3)))
        self.assertTrue(wedge_basis(1, (1,)).is_zero)

    def test_contract(self):
        """dzbar_k -| dzbar_J carries (-1)^{position of k}"""
        self.assertEqual(contract_basis(2, (1, 2)), SignedIndex(-1, (1,)))
        self.assertEqual(contract_basis(1, (1, 2)), SignedIndex(1, (2,)))
        self.assertTrue(contract_basis(3, (1, 2)).is_zero)

    def test_contract_undoes_wedge(self):
        """Contracting k after wedging k returns J with total sign +1"""
        n = 4
        for q in range(n):
            for J in all_multi_indices(n, q):
                for k in range(1, n + 1):
                    if k in J:
                        continue
                    wedged = wedge_basis(k, J, n)
                    contracted = contract_basis(k, wedged.index, n)
                    self.assertEqual(contracted.index, J)
                    self.assertEqual(wedged.sign * contracted.sign, 1)

    def test_anticommutator_is_identity(self):
        """wedge_k contract_k + contract_k wedge_k is the identity on every basis element, n <= 4"""
        for n in range(1, 5):
            for q in range(n + 1):
                for J in all_multi_indices(n, q):
                    for k in range(1, n + 1):
                        total = {}
                        first = contract_basis(k, J, n)
                        if not first.is_zero:
                            accumulate(total, wedge_basis(k, first.index, n), first.sign)
                        second = wedge_basis(k, J, n)
                        if not second.is_zero:
                            accumulate(total, contract_basis(k, second.index, n), second.sign)
                        self.assertEqual({K: s for K, s in total.items() if s}, {J: 1}, f"n={n} k={k} J={J}")

    def test_contraction_is_adjoint_to_wedge(self):
        """<contract_k dzbar_J, dzbar_K> = <dzbar_J, wedge_k dzbar_K> for |J| = |K| + 1, n <= 4"""
        for n in range(1, 5):
            for q in range(n):
                for J in all_multi_indices(n, q + 1):
                    for K in all_multi_indices(n, q):
                        for k in range(1, n + 1):
                            self.assertEqual(pairing(contract_basis(k, J, n), K),
                                             pairing(wedge_basis(k, K, n), J), f"n={n} k={k} J={J} K={K}")

    def test_nilpotent(self):
        """Wedging or contracting the same index twice gives zero, n <= 4"""
        for n in range(1, 5):
            for q in range(n + 1):
                for J in all_multi_indices(n, q):
                    for k in range(1, n + 1):
                        wedged = wedge_basis(k, J, n)
                        if not wedged.is_zero:
                            self.assertTrue(wedge_basis(k, wedged.index, n).is_zero)
                        contracted = contract_basis(k, J, n)
                        if not contracted.is_zero:
                            self.assertTrue(contract_basis(k, contracted.index, n).is_zero)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(1, 6).flatmap(
        lambda n: st.tuples(st.just(n), st.sets(st.integers(1, n)), st.integers(1, n), st.integers(1, n))))
    def test_wedges_anticommute(self, case):
        """wedge_k wedge_m = -wedge_m wedge_k and contract_k contract_m = -contract_m contract_k"""
        n, J, k, m = case
        J = tuple(sorted(J))
        for step in (wedge_basis, contract_basis):
            self.assertEqual(twice(step, k, m, J, n), {K: -s for K, s in twice(step, m, k, J, n).items()})

    def test_basis_index_range(self):
        """Basis indices outside 1..n raise"""
        with self.assertRaises(IndexRangeError):
            wedge_basis(3, (1,), 2)
        with self.assertRaises(IndexRangeError):
            contract_basis(0, (1,))


class TestQForm(unittest.TestCase):
    """Construction, canonicalization and arithmetic of (0,q)-forms"""

    def setUp(self):
        self.p = Poly.z(2, 1) * Poly.zbar(2, 2)

    def test_canonical_storage(self):
        """A coefficient given under (2,1) is stored under (1,2) with the sign flipped"""
        form = QForm(2, 2, {(2, 1): self.p})
        self.assertEqual(dict(form.coeffs), {(1, 2): -self.p})
        self.assertEqual(form.coefficient((2, 1)), self.p)
        self.assertEqual(form, QForm(2, 2, {(1, 2): -self.p}))

    def test_repeated_index_vanishes(self):
        """dzbar_1 ^ dzbar_1 = 0"""
        self.assertTrue(QForm(2, 2, {(1, 1): self.p}).is_zero)

    def test_validation(self):
        """Length, range and dimension of every component are checked"""
        with self.assertRaises(DegreeError):
            QForm(2, 1, {(1, 2): self.p})
        with self.assertRaises(IndexRangeError):
            QForm(2, 1, {(3,): self.p})
        with self.assertRaises(DimensionMismatchError):
            QForm(2, 1, {(1,): Poly.z(1, 1)})
        with self.assertRaises(DegreeError):
            QForm(1, 2)

    def test_arithmetic(self):
        """Addition cancels to the zero form; scaling is componentwise"""
        form = QForm.basis(2, (1,), self.p)
        self.assertTrue(form_add(form, -form).is_zero)
        self.assertEqual(form_scale(form, 3).coefficient((1,)), self.p.scale(3))
        self.assertEqual((form - form), QForm.zero(2, 1))
        with self.assertRaises(DegreeError):
            form + QForm.function(self.p)

    def test_scalar_and_degree(self):
        """Functions are (0,0)-forms; degree is the largest coefficient degree"""
        form = QForm.function(self.p)
        self.assertEqual(form.scalar, self.p)
        self.assertEqual(form.degree, 2)
        self.assertEqual(QForm.zero(2, 1).degree, -1)
        with self.assertRaises(DegreeError):
            QForm.basis(2, (1,)).scalar

    def test_text(self):
        """Components render as (coefficient)*dzb basis"""
        form = QForm(2, 1, {(2,): self.p, (1,): Poly.constant(2)})
        self.assertEqual(form.to_text(), "(1)*dzb1 + (z1 zb2)*dzb2")


if __name__ == "__main__":
    unittest.main()
