from itertools import combinations
from types import MappingProxyType
from typing import Callable, Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from src.algebra.errors import DegreeError, DimensionMismatchError, IndexRangeError
from src.algebra.polynomial import Poly, gaussian

MultiIndex = Tuple[int, ...]


class SignedIndex(NamedTuple):
    """Result of a basis operation: sign in {-1, 0, +1} and the increasing multi-index (empty when sign is 0)"""
    sign: int
    index: MultiIndex

    @property
    def is_zero(self) -> bool:
        return self.sign == 0


ZERO_INDEX = SignedIndex(0, ())


def normalize_index(indices: Sequence[int]) -> SignedIndex:
    """
    Sort a multi-index into increasing order

    Parameters:
    - indices: any sequence of positive integers

    Returns:
    - The increasing multi-index with the sign of the sorting permutation,
      or the zero index if an entry repeats
    """
    indices = tuple(int(i) for i in indices)
    if len(set(indices)) != len(indices):
        return ZERO_INDEX
    inversions = sum(1 for a in range(len(indices)) for b in range(a + 1, len(indices))
                     if indices[a] > indices[b])
    return SignedIndex(-1 if inversions % 2 else 1, tuple(sorted(indices)))


def all_multi_indices(n: int, q: int) -> List[MultiIndex]:
    """Increasing multi-indices of length q in 1..n, lexicographic order"""
    if not 0 <= q <= n:
        raise DegreeError(f"Form degree {q} outside 0..{n}")
    return list(combinations(range(1, n + 1), q))


def _check_basis_index(k: int, n: Optional[int]) -> None:
    if k < 1 or (n is not None and k > n):
        raise IndexRangeError(f"Basis index {k} outside 1..{n if n is not None else 'n'}")


def wedge_basis(k: int, J: Sequence[int], n: Optional[int] = None) -> SignedIndex:
    """dzbar_k ^ dzbar_J: zero if k is in J, else J + {k} with sign (-1)^{#{j in J: j < k}}"""
    _check_basis_index(k, n)
    J = tuple(J)
    if k in J:
        return ZERO_INDEX
    smaller = sum(1 for j in J if j < k)
    return SignedIndex(-1 if smaller % 2 else 1, tuple(sorted(J + (k,))))


def contract_basis(k: int, J: Sequence[int], n: Optional[int] = None) -> SignedIndex:
    """dzbar_k -| dzbar_J: zero if k is not in J, else J minus k with sign (-1)^{position of k}"""
    _check_basis_index(k, n)
    J = tuple(J)
    if k not in J:
        return ZERO_INDEX
    position = J.index(k)
    return SignedIndex(-1 if position % 2 else 1, J[:position] + J[position + 1:])


class QForm:
    """
    A (0,q)-form sum'_J u_J dzbar_J with polynomial coefficients.

    Keys are increasing multi-indices; coefficients given under a
    non-increasing index are stored with the permutation sign applied.
    """

    __slots__ = ("n", "q", "_coeffs", "_hash")

    def __init__(self, n: int, q: int, coeffs: Optional[Mapping[Sequence[int], Poly]] = None):
        if not 0 <= q <= n:
            raise DegreeError(f"Form degree {q} outside 0..{n}")
        clean: Dict[MultiIndex, Poly] = {}
        for J, poly in (coeffs or {}).items():
            J = tuple(J)
            if len(J) != q:
                raise DegreeError(f"Multi-index {J} does not have length {q}")
            for j in J:
                if not 1 <= j <= n:
                    raise IndexRangeError(f"Multi-index entry {j} outside 1..{n}")
            if poly.n != n:
                raise DimensionMismatchError(f"Coefficient of dimension {poly.n} in a form of dimension {n}")
            signed = normalize_index(J)
            if signed.is_zero:
                continue
            value = clean.get(signed.index, Poly.zero(n)) + poly.scale(signed.sign)
            if value:
                clean[signed.index] = value
            else:
                clean.pop(signed.index, None)
        self.n = n
        self.q = q
        self._coeffs = clean
        self._hash = None

    @classmethod
    def _trusted(cls, n: int, q: int, coeffs: Dict[MultiIndex, Poly]) -> "QForm":
        obj = object.__new__(cls)
        obj.n, obj.q, obj._coeffs, obj._hash = n, q, coeffs, None
        return obj

    @classmethod
    def zero(cls, n: int, q: int) -> "QForm":
        if not 0 <= q <= n:
            raise DegreeError(f"Form degree {q} outside 0..{n}")
        return cls._trusted(n, q, {})

    @classmethod
    def function(cls, poly: Poly) -> "QForm":
        """A polynomial viewed as a (0,0)-form"""
        return cls(poly.n, 0, {(): poly})

    @classmethod
    def basis(cls, n: int, J: Sequence[int], poly: Optional[Poly] = None) -> "QForm":
        """poly * dzbar_J (poly defaults to 1)"""
        poly = Poly.constant(n) if poly is None else poly
        return cls(n, len(tuple(J)), {tuple(J): poly})

    @property
    def coeffs(self) -> Mapping[MultiIndex, Poly]:
        return MappingProxyType(self._coeffs)

    def coefficient(self, J: Sequence[int]) -> Poly:
        """u_J for any ordering of J (sign applied), zero if absent"""
        signed = normalize_index(J)
        if signed.is_zero:
            return Poly.zero(self.n)
        return self._coeffs.get(signed.index, Poly.zero(self.n)).scale(signed.sign)

    def components(self) -> List[Tuple[MultiIndex, Poly]]:
        return sorted(self._coeffs.items())

    @property
    def scalar(self) -> Poly:
        """The coefficient of a (0,0)-form"""
        if self.q != 0:
            raise DegreeError(f"Only (0,0)-forms have a scalar part, got q={self.q}")
        return self._coeffs.get((), Poly.zero(self.n))

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def degree(self) -> int:
        """Largest total polynomial degree among the coefficients; -1 for the zero form"""
        return max((p.degree for p in self._coeffs.values()), default=-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QForm):
            return NotImplemented
        return (self.n, self.q) == (other.n, other.q) and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.q, frozenset(self._coeffs.items())))
        return self._hash

    def _check(self, other: "QForm") -> None:
        if other.n != self.n:
            raise DimensionMismatchError(f"Dimension mismatch: {self.n} vs {other.n}")
        if other.q != self.q:
            raise DegreeError(f"Degree mismatch: {self.q} vs {other.q}")

    def __add__(self, other: "QForm") -> "QForm":
        if not isinstance(other, QForm):
            return NotImplemented
        self._check(other)
        result = dict(self._coeffs)
        for J, poly in other._coeffs.items():
            value = result[J] + poly if J in result else poly
            if value:
                result[J] = value
            else:
                result.pop(J, None)
        return self._trusted(self.n, self.q, result)

    def __neg__(self) -> "QForm":
        return self._trusted(self.n, self.q, {J: -p for J, p in self._coeffs.items()})

    def __sub__(self, other: "QForm") -> "QForm":
        if not isinstance(other, QForm):
            return NotImplemented
        return self + (-other)

    def scale(self, factor) -> "QForm":
        factor = gaussian(factor)
        if not factor:
            return self.zero(self.n, self.q)
        return self._trusted(self.n, self.q, {J: p.scale(factor) for J, p in self._coeffs.items()})

    def map_coefficients(self, fn: Callable[[Poly], Poly]) -> "QForm":
        """Apply fn to every coefficient (componentwise action)"""
        result = {}
        for J, poly in self._coeffs.items():
            value = fn(poly)
            if value:
                result[J] = value
        return self._trusted(self.n, self.q, result)

    def to_text(self) -> str:
        if not self._coeffs:
            return "0"
        if self.q == 0:
            return self._coeffs[()].to_text()
        parts = []
        for J, poly in self.components():
            basis = "^".join(f"dzb{j}" for j in J)
            parts.append(f"({poly.to_text()})*{basis}")
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"QForm(n={self.n}, q={self.q}, '{self.to_text()}')"


def form_add(f: QForm, g: QForm) -> QForm:
    return f + g


def form_scale(f: QForm, factor) -> QForm:
    return f.scale(factor)
