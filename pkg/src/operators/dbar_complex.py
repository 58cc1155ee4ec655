"""
Weighted dbar-complex for the weight phi(z) = |z|^2.

All operators act on (0,q)-forms with polynomial coefficients and return
exact results. For phi = |z|^2 we have d(phi)/dz_k = zbar_k.
"""
from typing import Dict

from src.algebra.errors import DegreeError
from src.algebra.forms import MultiIndex, QForm, contract_basis, wedge_basis
from src.algebra.polynomial import Poly
from src.analysis.inner_product import ExactScalar, form_inner


def _accumulate(target: Dict[MultiIndex, Poly], J: MultiIndex, value: Poly) -> None:
    if J in target:
        target[J] = target[J] + value
    else:
        target[J] = value


def delta(p: Poly, k: int) -> Poly:
    """delta_k p = dp/dz_k - (d phi/dz_k) p = dp/dz_k - zbar_k p"""
    return p.d_z(k) - Poly.zbar(p.n, k) * p


def dbar(u: QForm) -> QForm:
    """
    dbar u = sum'_J sum_j (du_J/dzbar_j) dzbar_j ^ dzbar_J

    Parameters:
    - u: (0,q)-form with q < n

    Returns:
    - (0,q+1)-form
    """
    if u.q >= u.n:
        raise DegreeError(f"dbar is not defined on ({u.n},{u.q}) forms: degree must be < n")
    result: Dict[MultiIndex, Poly] = {}
    for J, poly in u.coeffs.items():
        for j in range(1, u.n + 1):
            derivative = poly.d_zbar(j)
            if not derivative:
                continue
            signed = wedge_basis(j, J, u.n)
            if signed.sign:
                _accumulate(result, signed.index, derivative.scale(signed.sign))
    return QForm(u.n, u.q + 1, result)


def dbar_star(u: QForm) -> QForm:
    """
    Weighted adjoint: dbar*_phi u = - sum'_K sum_k delta_k u_{kK} dzbar_K

    Parameters:
    - u: (0,q)-form with q >= 1

    Returns:
    - (0,q-1)-form
    """
    if u.q < 1:
        raise DegreeError("dbar_star is not defined on functions (q = 0)")
    result: Dict[MultiIndex, Poly] = {}
    for J, poly in u.coeffs.items():
        for k in J:
            # u_{kK} = sign * u_J where sign is the contraction sign
            signed = contract_basis(k, J, u.n)
            _accumulate(result, signed.index, delta(poly, k).scale(-signed.sign))
    return QForm(u.n, u.q - 1, result)


def box(u: QForm) -> QForm:
    """dbar-Neumann Laplacian dbar dbar* + dbar* dbar; the undefined half is dropped at q = 0 and q = n"""
    result = QForm.zero(u.n, u.q)
    if u.q >= 1:
        result = result + dbar(dbar_star(u))
    if u.q < u.n:
        result = result + dbar_star(dbar(u))
    return result


def box_scalar(p: Poly, q: int = 0) -> Poly:
    """-1/4 Lap p + sum_j zbar_j dp/dzbar_j + q p"""
    result = -p.laplace_quarter() + p.scale(q)
    for j in range(1, p.n + 1):
        result = result + Poly.zbar(p.n, j) * p.d_zbar(j)
    return result


def box_coord(u: QForm) -> QForm:
    """The diagonal coordinate formula, applied to every component u_J"""
    return u.map_coefficients(lambda p: box_scalar(p, u.q))


def dirichlet_form(f: QForm, g: QForm) -> ExactScalar:
    """Q(f, g) = (dbar f, dbar g) + (dbar* f, dbar* g)"""
    if (f.n, f.q) != (g.n, g.q):
        raise DegreeError(f"Forms of type ({f.n},{f.q}) and ({g.n},{g.q}) cannot be paired")
    total = ExactScalar.zero(f.n)
    if f.q < f.n:
        total = total + form_inner(dbar(f), dbar(g))
    if f.q >= 1:
        total = total + form_inner(dbar_star(f), dbar_star(g))
    return total
