import math
from dataclasses import dataclass
from typing import List, Sequence

from sympy.polys.domains.gaussiandomains import GaussianRational

from src.algebra.errors import DegreeError, DimensionMismatchError, FockSpecError
from src.algebra.forms import QForm
from src.algebra.polynomial import (Bidegree, Poly, ZERO, conjugate, format_gaussian, gaussian,
                                    to_complex)


@dataclass(frozen=True)
class ExactScalar:
    """coeff * pi^pi_power with an exact Gaussian rational coefficient"""
    coeff: GaussianRational
    pi_power: int

    @classmethod
    def zero(cls, pi_power: int) -> "ExactScalar":
        return cls(ZERO, pi_power)

    def _check(self, other: "ExactScalar") -> None:
        if other.pi_power != self.pi_power:
            raise DimensionMismatchError(
                f"Cannot combine pi^{self.pi_power} with pi^{other.pi_power}")

    def __add__(self, other: "ExactScalar") -> "ExactScalar":
        if not isinstance(other, ExactScalar):
            return NotImplemented
        self._check(other)
        return ExactScalar(self.coeff + other.coeff, self.pi_power)

    def __sub__(self, other: "ExactScalar") -> "ExactScalar":
        if not isinstance(other, ExactScalar):
            return NotImplemented
        self._check(other)
        return ExactScalar(self.coeff - other.coeff, self.pi_power)

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.coeff, self.pi_power)

    def scale(self, factor) -> "ExactScalar":
        return ExactScalar(self.coeff * gaussian(factor), self.pi_power)

    def conjugate(self) -> "ExactScalar":
        return ExactScalar(conjugate(self.coeff), self.pi_power)

    @property
    def is_zero(self) -> bool:
        return not self.coeff

    @property
    def is_real(self) -> bool:
        return not self.coeff.y

    def is_nonnegative(self) -> bool:
        return self.is_real and self.coeff.x >= 0

    def to_complex(self) -> complex:
        return to_complex(self.coeff) * math.pi ** self.pi_power

    def __float__(self) -> float:
        if not self.is_real:
            raise ValueError(f"{self.to_text()} is not real")
        return float(self.coeff.x) * math.pi ** self.pi_power

    def to_text(self) -> str:
        coeff = format_gaussian(self.coeff)
        if self.coeff.x and self.coeff.y:
            coeff = f"({coeff})"
        return f"{coeff}*pi^{self.pi_power}"

    def __str__(self) -> str:
        return self.to_text()


def monomial_inner(a: Bidegree, b: Bidegree) -> ExactScalar:
    """
    <z^a.alpha zbar^a.beta, z^b.alpha zbar^b.beta> against e^{-|z|^2}

    The integrand is prod_j z_j^{a.alpha_j + b.beta_j} zbar_j^{a.beta_j + b.alpha_j} e^{-|z_j|^2};
    the angular integral vanishes unless the charges agree, and the radial one is a factorial.

    Returns:
    - ExactScalar with pi_power n
    """
    if a.n != b.n:
        raise DimensionMismatchError(f"Dimension mismatch: {a.n} vs {b.n}")
    if a.charge != b.charge:
        return ExactScalar.zero(a.n)
    value = 1
    for alpha_j, beta_j in zip(a.alpha, b.beta):
        value *= math.factorial(alpha_j + beta_j)
    return ExactScalar(gaussian(value), a.n)


def poly_inner(p: Poly, q: Poly) -> ExactScalar:
    """Sesquilinear weighted inner product (p, q) = int p conj(q) e^{-|z|^2}"""
    if p.n != q.n:
        raise DimensionMismatchError(f"Dimension mismatch: {p.n} vs {q.n}")
    by_charge = {}
    for key, coeff in q.terms.items():
        by_charge.setdefault(key.charge, []).append((key, conjugate(coeff)))
    total = ZERO
    for key_p, coeff_p in p.terms.items():
        for key_q, coeff_q in by_charge.get(key_p.charge, ()):
            total = total + coeff_p * coeff_q * monomial_inner(key_p, key_q).coeff
    return ExactScalar(total, p.n)


def form_inner(f: QForm, g: QForm) -> ExactScalar:
    """Componentwise sum over increasing J of poly_inner(f_J, g_J)"""
    if f.n != g.n:
        raise DimensionMismatchError(f"Dimension mismatch: {f.n} vs {g.n}")
    if f.q != g.q:
        raise DegreeError(f"Degree mismatch: {f.q} vs {g.q}")
    total = ExactScalar.zero(f.n)
    g_coeffs = g.coeffs
    for J, poly in f.coeffs.items():
        if J in g_coeffs:
            total = total + poly_inner(poly, g_coeffs[J])
    return total


def gram(basis: Sequence[QForm]) -> List[List[ExactScalar]]:
    """
    Gram matrix G[i][j] = <basis[i], basis[j]>

    Parameters:
    - basis: nonempty list of nonzero forms sharing (n, q)

    Returns:
    - Hermitian matrix of ExactScalar values
    """
    if not basis:
        raise FockSpecError("Gram matrix of an empty family")
    first = basis[0]
    for i, form in enumerate(basis):
        if (form.n, form.q) != (first.n, first.q):
            raise DegreeError(f"Basis element {i} is a ({form.n},{form.q}) form, expected ({first.n},{first.q})")
        if form.is_zero:
            raise FockSpecError(f"Basis element {i} is the zero form")
    size = len(basis)
    matrix = [[ExactScalar.zero(first.n)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            value = form_inner(basis[i], basis[j])
            matrix[i][j] = value
            matrix[j][i] = value.conjugate()
    return matrix
