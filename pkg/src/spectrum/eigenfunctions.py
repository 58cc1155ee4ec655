"""
Closed-form eigenfunctions of the dbar-Neumann Laplacian for phi = |z|^2.

For n = 1 the families are

    u_{k,m} = zbar^{k+m} z^m + sum_{j=1}^m a_j zbar^{k+m-j} z^{m-j}   (eigenvalue k+m)
    v_{k,m} = zbar^k z^{k+m} + sum_{j=1}^k b_j zbar^{k-j} z^{k+m-j}   (eigenvalue k)

together with holomorphic monomials z^a (eigenvalue 0) and antiholomorphic
monomials zbar^k (eigenvalue k). Products over the n variables, placed in a
component dzbar_J of a (0,q)-form, are eigenforms with eigenvalue shifted by q.
"""
import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix
from sympy.polys.domains.gaussiandomains import GaussianRational

from src.algebra.errors import DegreeError, DimensionMismatchError, ParameterRangeError
from src.algebra.forms import MultiIndex, QForm, all_multi_indices
from src.algebra.polynomial import ONE, ZERO, Bidegree, Poly, iter_bidegrees
from src.operators.dbar_complex import box_coord

KINDS = ("u", "v", "tensor", "holomorphic")


@dataclass(frozen=True)
class EigenFunction:
    """
    A closed-form eigenfunction.

    Attributes:
    - eigenvalue: eigenvalue of the form (includes the +q shift when a component is set)
    - kind: one of KINDS
    - params: one (k, m) pair per factor
    - poly: the scalar polynomial
    - component: multi-index J when embedded in a (0,q)-form, else None
    - factor_kinds: kind of each factor (tensors only)
    """
    eigenvalue: int
    kind: str
    params: Tuple[Tuple[int, int], ...]
    poly: Poly
    component: Optional[MultiIndex] = None
    factor_kinds: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"Unknown eigenfunction kind: {self.kind}. Available kinds: {KINDS}")

    @property
    def n(self) -> int:
        return self.poly.n

    @property
    def q(self) -> int:
        return 0 if self.component is None else len(self.component)

    @property
    def leading(self) -> Bidegree:
        return self.poly.leading_term()[0]

    def as_form(self) -> QForm:
        if self.component is None:
            return QForm.function(self.poly)
        return QForm.basis(self.n, self.component, self.poly)

    def label(self) -> str:
        if self.kind == "tensor":
            factors = " x ".join(f"{kind}{k},{m}" for kind, (k, m) in zip(self.factor_kinds, self.params))
            where = f" dzb{self.component}" if self.component else ""
            return f"[{factors}]{where}"
        k, m = self.params[0]
        if self.kind == "holomorphic":
            return f"z^{m}"
        return f"{self.kind}{k},{m}"


class EigenCheck(NamedTuple):
    holds: bool
    residual: Poly


# coefficients


def u_coefficients(k: int, m: int) -> List[int]:
    """a_0..a_m with a_j = (-1)^j (k+m)! m! / (j! (k+m-j)! (m-j)!)"""
    return [(-1) ** j * math.factorial(k + m) * math.factorial(m)
            // (math.factorial(j) * math.factorial(k + m - j) * math.factorial(m - j))
            for j in range(m + 1)]


def v_coefficients(k: int, m: int) -> List[int]:
    """b_0..b_k with b_j = (-1)^j (k+m)! k! / (j! (k+m-j)! (k-j)!)"""
    return [(-1) ** j * math.factorial(k + m) * math.factorial(k)
            // (math.factorial(j) * math.factorial(k + m - j) * math.factorial(k - j))
            for j in range(k + 1)]


def u_coefficients_by_recurrence(k: int, m: int) -> List:
    """Same coefficients from comparing exponents: j a_j = -(k+m-j+1)(m-j+1) a_{j-1}"""
    coeffs = [QQ(1)]
    for j in range(1, m + 1):
        coeffs.append(-QQ((k + m - j + 1) * (m - j + 1), j) * coeffs[-1])
    return coeffs


def v_coefficients_by_recurrence(k: int, m: int) -> List:
    """j b_j = -(k+m-j+1)(k-j+1) b_{j-1}"""
    coeffs = [QQ(1)]
    for j in range(1, k + 1):
        coeffs.append(-QQ((k + m - j + 1) * (k - j + 1), j) * coeffs[-1])
    return coeffs


# n = 1 families


def _u_poly(k: int, m: int) -> Poly:
    return Poly(1, {((m - j,), (k + m - j,)): a for j, a in enumerate(u_coefficients(k, m))})


def _v_poly(k: int, m: int) -> Poly:
    return Poly(1, {((k + m - j,), (k - j,)): b for j, b in enumerate(v_coefficients(k, m))})


def u_fn(k: int, m: int) -> EigenFunction:
    if k < 0 or m < 1:
        raise ParameterRangeError(f"u_(k,m) needs k >= 0 and m >= 1, got k={k}, m={m}")
    return EigenFunction(k + m, "u", ((k, m),), _u_poly(k, m), factor_kinds=("u",))


def v_fn(k: int, m: int) -> EigenFunction:
    if k < 1 or m < 0:
        raise ParameterRangeError(f"v_(k,m) needs k >= 1 and m >= 0, got k={k}, m={m}")
    return EigenFunction(k, "v", ((k, m),), _v_poly(k, m), factor_kinds=("v",))


def holomorphic_fn(a: int) -> EigenFunction:
    """z^a, in the kernel; labelled as v_(0,a)"""
    if a < 0:
        raise ParameterRangeError(f"Holomorphic degree must be >= 0, got {a}")
    return EigenFunction(0, "holomorphic", ((0, a),), Poly.monomial((a,), (0,)),
                         factor_kinds=("holomorphic",))


def antiholomorphic_fn(k: int) -> EigenFunction:
    """zbar^k with eigenvalue k; the u-family member with m = 0"""
    if k < 1:
        raise ParameterRangeError(f"Antiholomorphic degree must be >= 1, got {k}")
    return EigenFunction(k, "u", ((k, 0),), _u_poly(k, 0), factor_kinds=("u",))


def canonical_eigenfunction(a: int, b: int) -> EigenFunction:
    """The family member with leading monomial z^a zbar^b (n = 1); its eigenvalue is b"""
    if a < 0 or b < 0:
        raise ParameterRangeError(f"Exponents must be non-negative, got a={a}, b={b}")
    if b == 0:
        return holomorphic_fn(a)
    if a > b:
        return v_fn(b, a - b)
    if a == 0:
        return antiholomorphic_fn(b)
    return u_fn(b - a, a)


# several variables


def tensor_fn(factors: Sequence[EigenFunction], J: Sequence[int] = (), q: Optional[int] = None,
              n: Optional[int] = None) -> EigenFunction:
    """
    Product of one-variable eigenfunctions, factor j in the variable z_j

    Parameters:
    - factors: scalar n = 1 eigenfunctions, one per variable
    - J: component multi-index (increasing, length q); empty selects the smallest one of length q
    - q: form degree, defaults to len(J)
    - n: expected dimension, checked against the factor count when given

    Returns:
    - EigenFunction with eigenvalue sum(factor eigenvalues) + q
    """
    if not factors:
        raise DimensionMismatchError("A tensor eigenfunction needs at least one factor")
    dim = len(factors)
    if n is not None and n != dim:
        raise DimensionMismatchError(f"Expected {n} factors, got {dim}")
    J = tuple(J)
    q = len(J) if q is None else q
    if not J and 0 < q <= dim:
        J = all_multi_indices(dim, q)[0]
    if len(J) != q:
        raise DegreeError(f"Component {J} does not have length q={q}")
    if J not in all_multi_indices(dim, q):
        raise DegreeError(f"Component {J} is not an increasing multi-index in 1..{dim}")
    poly = Poly.constant(dim)
    params, kinds = [], []
    for j, factor in enumerate(factors, start=1):
        if factor.n != 1 or factor.component is not None or factor.kind == "tensor":
            raise DimensionMismatchError(f"Factor {j} must be a scalar one-variable eigenfunction")
        poly = poly * factor.poly.lift(dim, [j])
        params.append(factor.params[0])
        kinds.append(factor.kind)
    eigenvalue = sum(f.eigenvalue for f in factors) + q
    return EigenFunction(eigenvalue, "tensor", tuple(params), poly,
                         component=J if q else None, factor_kinds=tuple(kinds))


def tensor_from_monomial(a: Bidegree, J: Sequence[int] = ()) -> EigenFunction:
    """Tensor of the canonical one-variable eigenfunctions whose product leads with z^alpha zbar^beta"""
    factors = [canonical_eigenfunction(a.alpha[j], a.beta[j]) for j in range(a.n)]
    return tensor_fn(factors, J)


def verify_eigen(f: EigenFunction) -> EigenCheck:
    """box_coord(f) - eigenvalue * f, exactly; holds iff the residual vanishes"""
    form = f.as_form()
    residual = box_coord(form) - form.scale(f.eigenvalue)
    return EigenCheck(residual.is_zero, residual.coefficient(f.component or ()))


# expansion of monomials


@lru_cache(maxsize=None)
def _expand_one_variable(a: int, b: int) -> Tuple[Tuple[Tuple[int, int], GaussianRational], ...]:
    """z^a zbar^b as a combination of canonical eigenfunctions, keyed by their leading exponents"""
    # canonical(a, b) = z^a zbar^b + sum_j c_j z^{a-j} zbar^{b-j}
    result: Dict[Tuple[int, int], GaussianRational] = {(a, b): ONE}
    for key, coeff in canonical_eigenfunction(a, b).poly.terms.items():
        lower = (key.alpha[0], key.beta[0])
        if lower == (a, b):
            continue
        for sub_key, sub_coeff in _expand_one_variable(*lower):
            value = result.get(sub_key, ZERO) - coeff * sub_coeff
            if value:
                result[sub_key] = value
            else:
                result.pop(sub_key, None)
    return tuple(sorted(result.items()))


def expand_monomial(a: Bidegree) -> List[Tuple[EigenFunction, GaussianRational]]:
    """
    Write z^alpha zbar^beta as an exact combination of eigenfunctions

    Within a charge class the eigenfunctions have distinct leading monomials
    and lower terms of the same charge, so back-substitution terminates.

    Returns:
    - (eigenfunction, coefficient) pairs; scalar n = 1 functions for n = 1, tensors otherwise
    """
    per_variable = [_expand_one_variable(a.alpha[j], a.beta[j]) for j in range(a.n)]
    if a.n == 1:
        return [(canonical_eigenfunction(*key), coeff) for key, coeff in per_variable[0]]
    expansion = []
    for combo in product(*per_variable):
        coeff = ONE
        for _, c in combo:
            coeff = coeff * c
        leading = Bidegree(tuple(k[0] for k, _ in combo), tuple(k[1] for k, _ in combo))
        expansion.append((tensor_from_monomial(leading), coeff))
    return expansion


def reconstruct(expansion: Sequence[Tuple[EigenFunction, GaussianRational]]) -> Poly:
    if not expansion:
        raise ValueError("Cannot reconstruct from an empty expansion")
    n = expansion[0][0].n
    total = Poly.zero(n)
    for function, coeff in expansion:
        total = total + function.poly.scale(coeff)
    return total


def eigenbasis_up_to(n: int, max_degree: int) -> List[EigenFunction]:
    """One canonical eigenfunction per monomial of degree <= max_degree (tensors for n > 1)"""
    basis = []
    for key in iter_bidegrees(n, max_degree):
        basis.append(canonical_eigenfunction(key.alpha[0], key.beta[0]) if n == 1
                     else tensor_from_monomial(key))
    return basis


def span_rank(polys: Sequence[Poly]) -> int:
    """Exact rank of the coefficient vectors of a family of polynomials"""
    if not polys:
        return 0
    keys = sorted({key for p in polys for key in p.terms}, key=Bidegree.sort_key)
    index = {key: i for i, key in enumerate(keys)}
    rows = []
    for p in polys:
        row = [QQ_I.zero] * len(keys)
        for key, coeff in p.terms.items():
            row[index[key]] = coeff
        rows.append(row)
    return DomainMatrix(rows, (len(rows), len(keys)), QQ_I).rank()


def count_with_eigenvalue(n: int, max_degree: int, eigenvalue: int) -> int:
    """Number of canonical scalar eigenfunctions of degree <= max_degree with the given eigenvalue"""
    return sum(1 for f in eigenbasis_up_to(n, max_degree) if f.eigenvalue == eigenvalue)
