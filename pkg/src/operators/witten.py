"""
Complex Witten complex for phi(z) = |z|^2.

A function h = p * e^{-|z|^2/2} is represented by its polynomial part p
(componentwise for forms); the Gaussian envelope is never materialized.
On this class Z_k acts as d/dzbar_k and Z_k* as -d/dz_k + zbar_k.
"""
from dataclasses import dataclass
from typing import Dict, List, Tuple, Union

from sympy.polys.domains import QQ

from src.algebra.errors import DegreeError, DimensionMismatchError
from src.algebra.forms import MultiIndex, QForm, contract_basis, wedge_basis
from src.algebra.polynomial import Poly

HALF = QQ(1, 2)
QUARTER = QQ(1, 4)


@dataclass(frozen=True)
class WittenRep:
    """Polynomial part of a (0,q)-form h = form * e^{-|z|^2/2}"""
    form: QForm

    @classmethod
    def of(cls, poly: Poly) -> "WittenRep":
        return cls(QForm.function(poly))

    @property
    def n(self) -> int:
        return self.form.n

    @property
    def q(self) -> int:
        return self.form.q

    @property
    def scalar(self) -> Poly:
        return self.form.scalar

    def __add__(self, other: "WittenRep") -> "WittenRep":
        return WittenRep(self.form + other.form)

    def __sub__(self, other: "WittenRep") -> "WittenRep":
        return WittenRep(self.form - other.form)

    def scale(self, factor) -> "WittenRep":
        return WittenRep(self.form.scale(factor))

    def to_text(self) -> str:
        return f"({self.form.to_text()})*exp(-|z|^2/2)"


def _z(p: Poly, k: int) -> Poly:
    return p.d_zbar(k)


def _z_star(p: Poly, k: int) -> Poly:
    return Poly.zbar(p.n, k) * p - p.d_z(k)


def witten_Z(h: WittenRep, k: int) -> WittenRep:
    """Z_k = d/dzbar_k + 1/2 d(phi)/dzbar_k, applied to every component"""
    return WittenRep(h.form.map_coefficients(lambda p: _z(p, k)))


def witten_Zstar(h: WittenRep, k: int) -> WittenRep:
    """Z_k* = -d/dz_k + 1/2 d(phi)/dz_k, applied to every component"""
    return WittenRep(h.form.map_coefficients(lambda p: _z_star(p, k)))


def _add(target: Dict[MultiIndex, Poly], J: MultiIndex, value: Poly) -> None:
    target[J] = target[J] + value if J in target else value


def witten_D(h: WittenRep) -> WittenRep:
    """D_{q+1} h = sum_k sum'_J Z_k(h_J) dzbar_k ^ dzbar_J"""
    n, q = h.n, h.q
    if q >= n:
        raise DegreeError(f"D is not defined on ({n},{q}) forms: degree must be < n")
    result: Dict[MultiIndex, Poly] = {}
    for k in range(1, n + 1):
        for J, poly in h.form.coeffs.items():
            signed = wedge_basis(k, J, n)
            if signed.sign:
                _add(result, signed.index, _z(poly, k).scale(signed.sign))
    return WittenRep(QForm(n, q + 1, result))


def witten_Dstar(h: WittenRep) -> WittenRep:
    """D*_q h = sum_k sum'_J Z_k*(h_J) dzbar_k -| dzbar_J"""
    n, q = h.n, h.q
    if q < 1:
        raise DegreeError("D* is not defined on functions (q = 0)")
    result: Dict[MultiIndex, Poly] = {}
    for k in range(1, n + 1):
        for J, poly in h.form.coeffs.items():
            signed = contract_basis(k, J, n)
            if signed.sign:
                _add(result, signed.index, _z_star(poly, k).scale(signed.sign))
    return WittenRep(QForm(n, q - 1, result))


def witten_laplacian(h: WittenRep) -> WittenRep:
    """D_q D_q* + D*_{q+1} D_{q+1}; the undefined half is dropped at q = 0 and q = n"""
    result = WittenRep(QForm.zero(h.n, h.q))
    if h.q >= 1:
        result = result + witten_D(witten_Dstar(h))
    if h.q < h.n:
        result = result + witten_Dstar(witten_D(h))
    return result


def _envelope_d_z(p: Poly, j: int) -> Poly:
    # d/dz_j (p e^{-|z|^2/2}) = (dp/dz_j - zbar_j p / 2) e^{-|z|^2/2}
    return p.d_z(j) - (Poly.zbar(p.n, j) * p).scale(HALF)


def _envelope_d_zbar(p: Poly, j: int) -> Poly:
    return p.d_zbar(j) - (Poly.z(p.n, j) * p).scale(HALF)


def witten_coord_scalar(p: Poly, q: int = 0) -> Poly:
    """
    Coordinate formula for one component, applied to p * e^{-|z|^2/2}

    -1/4 Lap h + 1/2 sum_j (zbar_j h_zbar_j - z_j h_z_j) + 1/4 |z|^2 h + (q - n/2) h,
    with every derivative of the envelope expanded; returns the polynomial part.
    """
    n = p.n
    laplacian = Poly.zero(n)
    drift = Poly.zero(n)
    for j in range(1, n + 1):
        dzbar = _envelope_d_zbar(p, j)
        laplacian = laplacian + _envelope_d_z(dzbar, j)
        drift = drift + Poly.zbar(n, j) * dzbar - Poly.z(n, j) * _envelope_d_z(p, j)
    potential = (Poly.norm_squared(n) * p).scale(QUARTER)
    return -laplacian + drift.scale(HALF) + potential + p.scale(QQ(2 * q - n, 2))


def witten_coord(h: WittenRep) -> WittenRep:
    return WittenRep(h.form.map_coefficients(lambda p: witten_coord_scalar(p, h.q)))


def levi_matrix(n: int) -> List[List[Poly]]:
    """(d^2 phi / dz_j dzbar_k)_{jk} for phi = |z|^2"""
    phi = Poly.norm_squared(n)
    return [[phi.d_z(j).d_zbar(k) for k in range(1, n + 1)] for j in range(1, n + 1)]


def levi_action(g: WittenRep) -> WittenRep:
    """M_phi g = sum_j (sum_k d^2 phi/dz_k dzbar_j g_k) dzbar_j on (0,1)-forms"""
    if g.q != 1:
        raise DegreeError(f"The Levi action is defined on (0,1)-forms, got q={g.q}")
    matrix = levi_matrix(g.n)
    result = {}
    for j in range(1, g.n + 1):
        total = Poly.zero(g.n)
        for k in range(1, g.n + 1):
            total = total + matrix[k - 1][j - 1] * g.form.coefficient((k,))
        result[(j,)] = total
    return WittenRep(QForm(g.n, 1, result))


def scalar_laplacian_on_components(g: WittenRep) -> WittenRep:
    """(Delta^{(0,0)} (x) I) g: the function Laplacian applied to each component"""
    return WittenRep(g.form.map_coefficients(
        lambda p: witten_laplacian(WittenRep.of(p)).scalar))


def pauli(h: WittenRep, sign: Union[str, int]) -> WittenRep:
    """
    Pauli operators on L^2(C), in the Gaussian-envelope representation

    Parameters:
    - h: scalar representative (n = 1, q = 0)
    - sign: '-' for P_- = D_1* D_1 (conjugated dbar* dbar on functions),
            '+' for P_+ = D_1 D_1* (conjugated dbar dbar* on the dzbar coefficient)

    Returns:
    - scalar representative
    """
    if h.n != 1:
        raise DimensionMismatchError(f"Pauli operators are defined for n = 1, got n = {h.n}")
    if h.q != 0:
        raise DegreeError("Pauli operators act on scalar representatives")
    if sign in ("-", -1):
        return witten_Dstar(witten_D(h))
    if sign in ("+", 1):
        as_form = WittenRep(QForm.basis(1, (1,), h.scalar))
        return WittenRep.of(witten_D(witten_Dstar(as_form)).form.coefficient((1,)))
    raise ValueError(f"Unknown Pauli sign: {sign!r}; expected '+' or '-'")


def dirac_square(p_minus: WittenRep, p_plus: WittenRep) -> Tuple[WittenRep, WittenRep]:
    """Diagonal action of D^2 = diag(P_-, P_+) on a pair of scalar representatives"""
    return pauli(p_minus, "-"), pauli(p_plus, "+")
