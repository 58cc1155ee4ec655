"""
Galerkin spectra of the weighted Laplacians on degree-truncated monomial bases.

Every operator here preserves the charge alpha - beta of a monomial and never
raises its degree, so each charge class truncated at degree D is an invariant
subspace: the generalized eigenproblem A x = lambda B x on it has exactly
integer eigenvalues and floats only enter at the final eigensolve.
"""
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
import scipy.linalg
from sympy.polys.domains import QQ_I
from sympy.polys.domains.gaussiandomains import GaussianRational
from sympy.polys.matrices import DomainMatrix

from src.algebra.errors import (ConfigError, DimensionMismatchError, FockSpecError, ParameterRangeError,
                                SingularGramError, SpectrumError)
from src.algebra.forms import QForm, all_multi_indices
from src.algebra.polynomial import Bidegree, Poly, conjugate, to_complex, iter_bidegrees
from src.analysis.inner_product import form_inner
from src.operators.dbar_complex import box
from src.operators.witten import WittenRep, pauli, witten_laplacian

logger = logging.getLogger(__name__)

OPERATORS = ("box", "witten", "pauli")
METHODS = ("ldl", "cholesky")
DEFAULT_TOLERANCE = 1e-6
MAX_DEFAULT_DEGREE = 16
CONDITION_THRESHOLD = 1e10
SPECTRUM_COLUMNS = ["eigenvalue", "estimate", "multiplicity", "max_residual"]


@dataclass(frozen=True)
class ChargeClass:
    """Monomials z^alpha zbar^beta with alpha - beta = charge and total degree <= degree_cap"""
    n: int
    charge: Tuple[int, ...]
    degree_cap: int

    def monomials(self) -> List[Bidegree]:
        return [key for key in iter_bidegrees(self.n, self.degree_cap) if key.charge == self.charge]

    def basis(self, q: int) -> List[QForm]:
        """Monomials placed in every component dzbar_J of degree q, grouped by J"""
        monomials = self.monomials()
        return [QForm.basis(self.n, J, Poly(self.n, {key: 1}))
                for J in all_multi_indices(self.n, q) for key in monomials]


def charge_classes(n: int, degree_cap: int) -> List[ChargeClass]:
    """All nonempty classes at the given cap, sorted by charge"""
    charges = sorted({key.charge for key in iter_bidegrees(n, degree_cap)})
    return [ChargeClass(n, charge, degree_cap) for charge in charges]


def operator_map(operator: str, n: int, q: int) -> Callable[[QForm], QForm]:
    """
    The operator as a map on (0,q)-forms

    'witten' and 'pauli' act on Gaussian-envelope representatives; the weighted inner
    product of representatives equals the L^2 product of the functions they stand for.
    """
    if operator == "box":
        return box
    if operator == "witten":
        return lambda u: witten_laplacian(WittenRep(u)).form
    if operator == "pauli":
        if n != 1 or q not in (0, 1):
            raise ConfigError(f"The Pauli operators need n = 1 and q in (0, 1), got n={n}, q={q}")
        if q == 0:
            return lambda u: pauli(WittenRep(u), "-").form
        return lambda u: QForm.basis(1, (1,), pauli(WittenRep.of(u.coefficient((1,))), "+").scalar)
    raise ConfigError(f"Unknown operator: {operator}. Available operators: {OPERATORS}")


class ClassMatrices(NamedTuple):
    """Operator and Gram matrices of one class; exact entries are coefficients of pi^n"""
    basis: List[QForm]
    exact_a: List[List[GaussianRational]]
    exact_b: List[List[GaussianRational]]
    a: np.ndarray
    b: np.ndarray


def _to_float(matrix: List[List[GaussianRational]]) -> np.ndarray:
    values = np.array([[to_complex(c) for c in row] for row in matrix], dtype=complex)
    return values.real.copy() if not np.any(values.imag) else values


def build_class_matrices(c: ChargeClass, q: int, operator: str = "box") -> ClassMatrices:
    """
    Assemble A_ij = <op e_j, e_i> and B_ij = <e_j, e_i> exactly, then convert to floats

    Parameters:
    - c: charge class
    - q: form degree
    - operator: one of OPERATORS

    Returns:
    - ClassMatrices; the common factor pi^n is divided out before conversion
    """
    basis = c.basis(q)
    if not basis:
        raise FockSpecError(f"Charge class {c.charge} is empty at degree cap {c.degree_cap}")
    apply = operator_map(operator, c.n, q)
    images = [apply(e) for e in basis]
    size = len(basis)
    exact_a = [[form_inner(images[j], basis[i]).coeff for j in range(size)] for i in range(size)]
    exact_b = [[QQ_I.zero] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            value = form_inner(basis[j], basis[i]).coeff
            exact_b[i][j] = value
            exact_b[j][i] = conjugate(value)
    return ClassMatrices(basis, exact_a, exact_b, _to_float(exact_a), _to_float(exact_b))


def equilibrated_condition(b: np.ndarray) -> float:
    """2-norm condition number of B after symmetric diagonal (Jacobi) scaling"""
    scale = 1.0 / np.sqrt(np.real(np.diag(b)))
    return float(np.linalg.cond(scale[:, None] * b * scale[None, :]))


def ldl_decomposition(b: Sequence[Sequence[GaussianRational]]) -> Tuple[List[List[GaussianRational]],
                                                                         List[GaussianRational]]:
    """
    Square-root-free B = L D L^H over the Gaussian rationals

    Returns:
    - (L unit lower triangular, diagonal of D); raises SingularGramError unless every pivot is positive
    """
    size = len(b)
    lower = [[QQ_I.one if i == j else QQ_I.zero for j in range(size)] for i in range(size)]
    pivots: List[GaussianRational] = []
    for j in range(size):
        pivot = b[j][j]
        for k in range(j):
            pivot = pivot - lower[j][k] * conjugate(lower[j][k]) * pivots[k]
        if pivot.y or pivot.x <= 0:
            raise SingularGramError(f"Gram matrix is not positive definite: pivot {j} is {pivot}")
        pivots.append(pivot)
        for i in range(j + 1, size):
            value = b[i][j]
            for k in range(j):
                value = value - lower[i][k] * conjugate(lower[j][k]) * pivots[k]
            lower[i][j] = value * QQ_I.revert(pivot)
    return lower, pivots


def _conjugate_transpose(m: DomainMatrix) -> DomainMatrix:
    rows = m.to_list()
    size = len(rows)
    return DomainMatrix([[conjugate(rows[j][i]) for j in range(size)] for i in range(size)],
                        (size, size), QQ_I)


def _solve_ldl(exact_a, exact_b) -> np.ndarray:
    size = len(exact_b)
    lower, pivots = ldl_decomposition(exact_b)
    l_inv = DomainMatrix(lower, (size, size), QQ_I).inv()
    reduced = (l_inv * DomainMatrix(exact_a, (size, size), QQ_I) * _conjugate_transpose(l_inv)).to_list()
    root = np.sqrt([float(d.x) for d in pivots])
    c = np.array([[to_complex(reduced[i][j]) for j in range(size)] for i in range(size)])
    c = c / root[:, None] / root[None, :]
    c = 0.5 * (c + c.conj().T)
    return np.linalg.eigvalsh(c)


def _solve_cholesky(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    scale = 1.0 / np.sqrt(np.real(np.diag(b)))
    a = scale[:, None] * a * scale[None, :]
    b = scale[:, None] * b * scale[None, :]
    try:
        lower = scipy.linalg.cholesky(b, lower=True)
    except np.linalg.LinAlgError as exc:
        raise SingularGramError(f"Cholesky factorization of the Gram matrix failed: {exc}") from exc
    y = scipy.linalg.solve_triangular(lower, a, lower=True)
    c = scipy.linalg.solve_triangular(lower, y.conj().T, lower=True).conj().T
    c = 0.5 * (c + c.conj().T)
    return scipy.linalg.eigh(c, eigvals_only=True)


def solve_class(matrices: ClassMatrices, method: str = "ldl") -> np.ndarray:
    """
    Generalized eigenvalues of A x = lambda B x, ascending

    Parameters:
    - matrices: output of build_class_matrices
    - method: 'ldl' reduces the pencil exactly and only diagonalizes in floats;
              'cholesky' does the whole reduction in floating point

    Returns:
    - numpy array of eigenvalues
    """
    if method not in METHODS:
        raise ConfigError(f"Unknown method: {method}. Available methods: {METHODS}")
    condition = equilibrated_condition(matrices.b)
    if condition > CONDITION_THRESHOLD:
        if method == "cholesky":
            raise SingularGramError(
                f"Gram matrix condition estimate {condition:.3g} exceeds {CONDITION_THRESHOLD:.0e}; "
                f"lower the degree or use method 'ldl'")
        logger.debug(f"Gram condition estimate {condition:.3g}; reduced exactly")
    if method == "ldl":
        return _solve_ldl(matrices.exact_a, matrices.exact_b)
    return _solve_cholesky(matrices.a, matrices.b)


@dataclass
class Cluster:
    eigenvalue: int
    estimate: float
    multiplicity: int
    max_residual: float


@dataclass
class SpectralReport:
    """
    Clustered spectrum of one operator on (0,q)-forms truncated at degree D.

    Certifies which integers occur and with which multiplicity at this truncation;
    it says nothing about spectrum outside the truncated space.
    """
    n: int
    q: int
    degree: int
    operator: str
    method: str
    tolerance: float
    clusters: List[Cluster] = field(default_factory=list)
    basis_dimension: int = 0
    class_count: int = 0

    def multiplicity_of(self, eigenvalue: int) -> int:
        for cluster in self.clusters:
            if cluster.eigenvalue == eigenvalue:
                return cluster.multiplicity
        return 0

    @property
    def eigenvalues(self) -> List[int]:
        return [cluster.eigenvalue for cluster in self.clusters]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([asdict(c) for c in self.clusters],
                            columns=SPECTRUM_COLUMNS)

    def to_dict(self) -> Dict:
        return asdict(self)


def worker_count(threads: Optional[int] = None) -> int:
    """Explicit value, else FOCKSPEC_THREADS, else min(4, cpu count)"""
    if threads is None:
        env = os.environ.get("FOCKSPEC_THREADS")
        if env:
            try:
                threads = int(env)
            except ValueError as exc:
                raise ConfigError(f"FOCKSPEC_THREADS must be an integer, got {env!r}") from exc
        else:
            threads = min(4, os.cpu_count() or 1)
    if threads < 1:
        raise ConfigError(f"Thread count must be >= 1, got {threads}")
    return threads


def cluster_eigenvalues(eigenvalues: Sequence[float], q: int, tolerance: float) -> List[Cluster]:
    """Group eigenvalues by nearest integer; anything off an integer >= q is a hard failure"""
    groups: Dict[int, List[float]] = {}
    for value in eigenvalues:
        nearest = int(round(value))
        residual = abs(value - nearest)
        if residual > tolerance:
            raise SpectrumError(f"Eigenvalue {value:.12g} is {residual:.3g} away from the nearest integer")
        if nearest < q:
            raise SpectrumError(f"Eigenvalue {value:.12g} lies below the bottom of the spectrum {q}")
        groups.setdefault(nearest, []).append(value)
    return [Cluster(mu, float(np.mean(values)), len(values), float(np.max(np.abs(np.array(values) - mu))))
            for mu, values in sorted(groups.items())]


def _check_degree(degree: int, allow_large_degree: bool) -> None:
    if degree < 1:
        raise ParameterRangeError(f"Degree cap must be >= 1, got {degree}")
    if degree > MAX_DEFAULT_DEGREE and not allow_large_degree:
        raise ConfigError(f"Degree cap {degree} exceeds {MAX_DEFAULT_DEGREE}; "
                          f"Gram matrices grow factorially, pass allow_large_degree to override")


def full_spectrum(n: int, q: int, degree: int, tolerance: float = DEFAULT_TOLERANCE, operator: str = "box",
                  method: str = "ldl", threads: Optional[int] = None,
                  allow_large_degree: bool = False) -> SpectralReport:
    """
    Spectrum of the operator on (0,q)-forms with coefficients of degree <= degree

    Parameters:
    - n, q: dimension and form degree
    - degree: total degree cap D
    - tolerance: maximal distance of an eigenvalue to its integer
    - operator: 'box', 'witten' or 'pauli'
    - method: 'ldl' or 'cholesky'
    - threads: worker threads for the per-class solves

    Returns:
    - SpectralReport with clusters sorted by eigenvalue
    """
    if n < 1:
        raise DimensionMismatchError(f"Dimension must be >= 1, got {n}")
    if not 0 <= q <= n:
        raise ConfigError(f"Form degree {q} outside 0..{n}")
    if tolerance <= 0:
        raise ConfigError(f"Tolerance must be positive, got {tolerance}")
    if method not in METHODS:
        raise ConfigError(f"Unknown method: {method}. Available methods: {METHODS}")
    _check_degree(degree, allow_large_degree)
    operator_map(operator, n, q)

    classes = charge_classes(n, degree)
    logger.info(f"Solving {len(classes)} charge classes for n={n}, q={q}, D={degree} ({operator}, {method})")

    def solve(c: ChargeClass) -> np.ndarray:
        values = solve_class(build_class_matrices(c, q, operator), method)
        logger.debug(f"Class {c.charge}: {len(values)} eigenvalues")
        return values

    with ThreadPoolExecutor(max_workers=worker_count(threads)) as executor:
        results = list(executor.map(solve, classes))

    # executor.map keeps class order, so the merge is deterministic
    eigenvalues = np.concatenate(results)
    return SpectralReport(
        n=n, q=q, degree=degree, operator=operator, method=method, tolerance=tolerance,
        clusters=cluster_eigenvalues(eigenvalues, q, tolerance),
        basis_dimension=int(eigenvalues.size), class_count=len(classes))


def multiplicity_growth(n: int, q: int, mu: int, degrees: Sequence[int], **kwargs) -> List[int]:
    """Multiplicity of mu at each degree cap; increasing caps give nested bases"""
    if mu < q:
        raise ParameterRangeError(f"Eigenvalue {mu} lies below the bottom of the spectrum {q}")
    if not degrees:
        raise ParameterRangeError("At least one degree cap is required")
    return [full_spectrum(n, q, degree, **kwargs).multiplicity_of(mu) for degree in degrees]
