"""
Real-variable view of the Gaussian space: the substitution z = x + iy,
physicists' Hermite polynomials and their products H_i(x_j) H_k(y_j).

One-dimensional Gaussian moments carry a factor sqrt(pi), tracked here as an
integer power on SqrtPiScalar and converted to ExactScalar only at the end.
"""
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Mapping, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.domains.gaussiandomains import GaussianRational

from src.algebra.errors import DimensionMismatchError, ParameterRangeError
from src.algebra.polynomial import (ONE, ZERO, I_UNIT, Bidegree, Poly, SparsePolynomial, conjugate,
                                    format_gaussian, gaussian)
from src.analysis.inner_product import ExactScalar

HermiteKey = Tuple[Tuple[int, ...], Tuple[int, ...]]


class RealPoly(SparsePolynomial):
    """Polynomial in x_1..x_n and y_1..y_n over the Gaussian rationals"""

    VARIABLE_NAMES = ("x", "y")

    __slots__ = ()

    @classmethod
    def x(cls, n: int, j: int) -> "RealPoly":
        exps = [0] * n
        exps[j - 1] = 1
        return cls.monomial(exps, [0] * n)

    @classmethod
    def y(cls, n: int, j: int) -> "RealPoly":
        exps = [0] * n
        exps[j - 1] = 1
        return cls.monomial([0] * n, exps)


def _substitute(p: SparsePolynomial, target, first: Sequence, second: Sequence):
    """Replace variable j of each family by first[j] / second[j] (polynomials of the target class)"""
    result = target.zero(p.n)
    powers: Dict[Tuple[int, int, int], SparsePolynomial] = {}

    def power(family: int, j: int, e: int):
        if (family, j, e) not in powers:
            base = (first, second)[family][j]
            powers[(family, j, e)] = target.constant(p.n) if e == 0 else power(family, j, e - 1) * base
        return powers[(family, j, e)]

    for key, coeff in p.terms.items():
        term = target.constant(p.n, coeff)
        for j in range(p.n):
            term = term * power(0, j, key.alpha[j]) * power(1, j, key.beta[j])
        result = result + term
    return result


def to_real(p: Poly) -> RealPoly:
    """z_j = x_j + i y_j, zbar_j = x_j - i y_j"""
    n = p.n
    zs = [RealPoly.x(n, j) + RealPoly.y(n, j).scale(I_UNIT) for j in range(1, n + 1)]
    zbars = [RealPoly.x(n, j) - RealPoly.y(n, j).scale(I_UNIT) for j in range(1, n + 1)]
    return _substitute(p, RealPoly, zs, zbars)


def to_complex(r: RealPoly) -> Poly:
    """x_j = (z_j + zbar_j)/2, y_j = i (zbar_j - z_j)/2"""
    n = r.n
    half = gaussian(QQ(1, 2))
    xs = [(Poly.z(n, j) + Poly.zbar(n, j)).scale(half) for j in range(1, n + 1)]
    ys = [(Poly.zbar(n, j) - Poly.z(n, j)).scale(I_UNIT * half) for j in range(1, n + 1)]
    return _substitute(r, Poly, xs, ys)


def hermite_coefficients(k: int) -> Tuple[int, ...]:
    """Integer coefficients c_0..c_k of H_k(x) = sum_i c_i x^i"""
    if k < 0:
        raise ParameterRangeError(f"Hermite index must be >= 0, got {k}")
    return _hermite_coefficients(k)


@lru_cache(maxsize=None)
def _hermite_coefficients(k: int) -> Tuple[int, ...]:
    if k == 0:
        return (1,)
    if k == 1:
        return (0, 2)
    # H_{k+1} = 2x H_k - 2k H_{k-1}
    prev, cur = _hermite_coefficients(k - 2), _hermite_coefficients(k - 1)
    result = [0] * (k + 1)
    for i, c in enumerate(cur):
        result[i + 1] += 2 * c
    for i, c in enumerate(prev):
        result[i] -= 2 * (k - 1) * c
    return tuple(result)


def hermite_poly(k: int, n: int = 1, j: int = 1, axis: str = "x") -> RealPoly:
    """
    Physicists' Hermite polynomial H_k in one real variable

    Parameters:
    - k: index >= 0
    - n: dimension of the ambient RealPoly
    - j: which variable (1..n)
    - axis: 'x' or 'y'

    Returns:
    - RealPoly H_k(x_j) or H_k(y_j)
    """
    if axis not in ("x", "y"):
        raise ValueError(f"Unknown axis: {axis}. Available axes: ('x', 'y')")
    if not 1 <= j <= n:
        raise DimensionMismatchError(f"Variable index {j} outside 1..{n}")
    zeros = (0,) * n
    terms = {}
    for i, c in enumerate(hermite_coefficients(k)):
        if c:
            exps = zeros[:j - 1] + (i,) + zeros[j:]
            terms[Bidegree(exps, zeros) if axis == "x" else Bidegree(zeros, exps)] = c
    return RealPoly(n, terms)


@lru_cache(maxsize=None)
def hermite_product(key: HermiteKey) -> RealPoly:
    """prod_j H_{key[0][j]}(x_j) H_{key[1][j]}(y_j)"""
    x_exps, y_exps = key
    n = len(x_exps)
    result = RealPoly.constant(n)
    for j in range(1, n + 1):
        result = result * hermite_poly(x_exps[j - 1], n, j, "x") * hermite_poly(y_exps[j - 1], n, j, "y")
    return result


@dataclass(frozen=True)
class SqrtPiScalar:
    """coeff * sqrt(pi)^sqrt_pi_power"""
    coeff: GaussianRational
    sqrt_pi_power: int

    def __add__(self, other: "SqrtPiScalar") -> "SqrtPiScalar":
        if other.sqrt_pi_power != self.sqrt_pi_power:
            raise DimensionMismatchError(
                f"Cannot combine sqrt(pi)^{self.sqrt_pi_power} with sqrt(pi)^{other.sqrt_pi_power}")
        return SqrtPiScalar(self.coeff + other.coeff, self.sqrt_pi_power)

    def __mul__(self, other: "SqrtPiScalar") -> "SqrtPiScalar":
        return SqrtPiScalar(self.coeff * other.coeff, self.sqrt_pi_power + other.sqrt_pi_power)

    @property
    def is_zero(self) -> bool:
        return not self.coeff

    def to_exact(self) -> ExactScalar:
        """Re-express as coeff * pi^(power/2); the power must be even"""
        if self.sqrt_pi_power % 2:
            raise ValueError(f"sqrt(pi)^{self.sqrt_pi_power} is not an integer power of pi")
        return ExactScalar(self.coeff, self.sqrt_pi_power // 2)

    def __float__(self) -> float:
        return float(self.coeff.x) * math.sqrt(math.pi) ** self.sqrt_pi_power

    def to_text(self) -> str:
        return f"{format_gaussian(self.coeff)}*sqrt(pi)^{self.sqrt_pi_power}"


def gaussian_moment(m: int) -> SqrtPiScalar:
    """int_R x^m e^{-x^2} dx: 0 for odd m, sqrt(pi) (2k)! / (4^k k!) for m = 2k"""
    if m < 0:
        raise ParameterRangeError(f"Moment order must be >= 0, got {m}")
    if m % 2:
        return SqrtPiScalar(ZERO, 1)
    k = m // 2
    return SqrtPiScalar(gaussian(QQ(math.factorial(2 * k), 4 ** k * math.factorial(k))), 1)


def real_inner(r: RealPoly, s: RealPoly) -> SqrtPiScalar:
    """int r conj(s) e^{-|x|^2-|y|^2} dx dy over R^{2n}"""
    if r.n != s.n:
        raise DimensionMismatchError(f"Dimension mismatch: {r.n} vs {s.n}")
    total = ZERO
    for key_r, coeff_r in r.terms.items():
        for key_s, coeff_s in s.terms.items():
            exps = [a + b for a, b in zip(key_r.alpha + key_r.beta, key_s.alpha + key_s.beta)]
            if any(e % 2 for e in exps):
                continue
            moment = ONE
            for e in exps:
                moment = moment * gaussian_moment(e).coeff
            total = total + coeff_r * conjugate(coeff_s) * moment
    return SqrtPiScalar(total, 2 * r.n)


def hermite_inner(i: int, k: int) -> SqrtPiScalar:
    """<H_i, H_k> under e^{-x^2} on the line"""
    total = SqrtPiScalar(ZERO, 1)
    for a, ca in enumerate(hermite_coefficients(i)):
        for b, cb in enumerate(hermite_coefficients(k)):
            if ca and cb:
                moment = gaussian_moment(a + b)
                total = total + SqrtPiScalar(moment.coeff * (ca * cb), 1)
    return total


def hermite_expand_real(r: RealPoly) -> Dict[HermiteKey, GaussianRational]:
    """Back-substitution on leading terms: H_i(x) leads with 2^i x^i"""
    expansion: Dict[HermiteKey, GaussianRational] = {}
    remainder = r
    while remainder:
        key, coeff = remainder.leading_term()
        factor = coeff * gaussian(QQ(1, 2 ** key.degree))
        hermite_key = (key.alpha, key.beta)
        expansion[hermite_key] = factor
        remainder = remainder - hermite_product(hermite_key).scale(factor)
    return expansion


def hermite_expand(p: Poly) -> Dict[HermiteKey, GaussianRational]:
    """
    Coefficients of p over the products prod_j H_{i_j}(x_j) H_{k_j}(y_j)

    Returns:
    - {(x indices, y indices): coefficient}, only nonzero entries
    """
    return hermite_expand_real(to_real(p))


def hermite_reconstruct(expansion: Mapping[HermiteKey, GaussianRational], n: int) -> RealPoly:
    result = RealPoly.zero(n)
    for key, coeff in expansion.items():
        if len(key[0]) != n:
            raise DimensionMismatchError(f"Hermite key {key} does not have dimension {n}")
        result = result + hermite_product(key).scale(coeff)
    return result


def hermite_degree(expansion: Mapping[HermiteKey, GaussianRational]) -> int:
    return max((sum(x) + sum(y) for x, y in expansion), default=-1)
