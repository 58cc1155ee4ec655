from types import MappingProxyType
from typing import Dict, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Type, TypeVar

import numpy as np
import sympy
from sympy.parsing.sympy_parser import (convert_xor, implicit_multiplication, parse_expr,
                                        standard_transformations)
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.domains.gaussiandomains import GaussianRational

from src.algebra.errors import DimensionMismatchError, IndexRangeError, ParseError


def to_rational(value):
    """Convert an int or any numerator/denominator pair (Fraction, QQ element) to a QQ element"""
    if isinstance(value, bool):
        raise TypeError(f"Cannot convert {value!r} to an exact rational")
    if isinstance(value, int):
        return QQ(value)
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return QQ(int(value.numerator), int(value.denominator))
    raise TypeError(f"Cannot convert {value!r} to an exact rational")


def gaussian(real=0, imag=0) -> GaussianRational:
    """
    Build an exact Gaussian rational real + imag*i

    Parameters:
    - real: real part (int, Fraction, QQ element) or an existing Gaussian rational
    - imag: imaginary part

    Returns:
    - GaussianRational in lowest terms
    """
    if isinstance(real, GaussianRational):
        if imag == 0:
            return real
        return real + gaussian(0, imag)
    return GaussianRational.new(to_rational(real), to_rational(imag))


ZERO = gaussian(0)
ONE = gaussian(1)
I_UNIT = gaussian(0, 1)


def conjugate(c: GaussianRational) -> GaussianRational:
    return GaussianRational.new(c.x, -c.y)


def to_complex(c: GaussianRational) -> complex:
    return complex(float(c.x), float(c.y))


def is_real(c: GaussianRational) -> bool:
    return not c.y


def format_rational(q) -> str:
    num, den = int(q.numerator), int(q.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def format_gaussian(c: GaussianRational) -> str:
    """Render as `p/q+r/s*i` (parts equal to zero are omitted, a unit imaginary part is `i`)"""
    if not c.y:
        return format_rational(c.x)
    if abs(c.y) == 1:
        imag = "i" if c.y > 0 else "-i"
    else:
        imag = f"{format_rational(c.y)}*i"
    if not c.x:
        return imag
    sign = "+" if c.y > 0 else ""
    return f"{format_rational(c.x)}{sign}{imag}"


class Bidegree(NamedTuple):
    """Exponents (alpha, beta) of the monomial z^alpha zbar^beta"""
    alpha: Tuple[int, ...]
    beta: Tuple[int, ...]

    @classmethod
    def of(cls, alpha: Sequence[int], beta: Sequence[int]) -> "Bidegree":
        alpha, beta = tuple(int(a) for a in alpha), tuple(int(b) for b in beta)
        if len(alpha) != len(beta) or not alpha:
            raise DimensionMismatchError(
                f"Exponent vectors must have equal length n >= 1, got {alpha} and {beta}")
        if min(alpha + beta) < 0:
            raise ValueError(f"Exponents must be non-negative, got {alpha}, {beta}")
        return cls(alpha, beta)

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def degree(self) -> int:
        return sum(self.alpha) + sum(self.beta)

    @property
    def charge(self) -> Tuple[int, ...]:
        return tuple(a - b for a, b in zip(self.alpha, self.beta))

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        # graded lexicographic on the concatenated exponents
        return (self.degree, self.alpha + self.beta)

    def conjugate(self) -> "Bidegree":
        return Bidegree(self.beta, self.alpha)


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def iter_bidegrees(n: int, max_degree: int) -> Iterator[Bidegree]:
    """All bidegrees in dimension n with total degree <= max_degree, lowest degree first"""
    for total in range(max_degree + 1):
        for exps in _compositions(total, 2 * n):
            yield Bidegree(exps[:n], exps[n:])


P = TypeVar("P", bound="SparsePolynomial")


class SparsePolynomial:
    """
    Immutable finitely supported map from exponent pairs to Gaussian rationals.

    The two exponent vectors of a key belong to the two variable families
    named in VARIABLE_NAMES; subclasses fix the names.
    """

    VARIABLE_NAMES: Tuple[str, str] = ("u", "v")

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Optional[Mapping] = None):
        if n < 1:
            raise DimensionMismatchError(f"Dimension must be >= 1, got {n}")
        clean: Dict[Bidegree, GaussianRational] = {}
        for key, coeff in (terms or {}).items():
            key = Bidegree.of(*key)
            if key.n != n:
                raise DimensionMismatchError(f"Term {key} does not have dimension {n}")
            value = clean.get(key, ZERO) + gaussian(coeff)
            if value:
                clean[key] = value
            else:
                clean.pop(key, None)
        self.n = n
        self._terms = clean
        self._hash = None

    @classmethod
    def _trusted(cls: Type[P], n: int, terms: Dict[Bidegree, GaussianRational]) -> P:
        obj = object.__new__(cls)
        obj.n = n
        obj._terms = terms
        obj._hash = None
        return obj

    # construction helpers

    @classmethod
    def zero(cls: Type[P], n: int) -> P:
        return cls._trusted(n, {})

    @classmethod
    def constant(cls: Type[P], n: int, value=1) -> P:
        return cls(n, {Bidegree((0,) * n, (0,) * n): value})

    @classmethod
    def monomial(cls: Type[P], alpha: Sequence[int], beta: Sequence[int], coeff=1) -> P:
        key = Bidegree.of(alpha, beta)
        return cls(key.n, {key: coeff})

    # container protocol

    @property
    def terms(self) -> Mapping[Bidegree, GaussianRational]:
        return MappingProxyType(self._terms)

    def sorted_terms(self) -> List[Tuple[Bidegree, GaussianRational]]:
        """Terms in canonical order (graded lexicographic, highest first)"""
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key(), reverse=True)

    def coefficient(self, key) -> GaussianRational:
        return self._terms.get(Bidegree.of(*key), ZERO)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial"""
        return max((key.degree for key in self._terms), default=-1)

    def leading_term(self) -> Tuple[Bidegree, GaussianRational]:
        if not self._terms:
            raise ValueError("The zero polynomial has no leading term")
        return self.sorted_terms()[0]

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.n, frozenset(self._terms.items())))
        return self._hash

    # arithmetic

    def _check(self, other: "SparsePolynomial") -> None:
        if type(other) is not type(self):
            raise TypeError(f"Cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.n != self.n:
            raise DimensionMismatchError(f"Dimension mismatch: {self.n} vs {other.n}")

    def __add__(self: P, other: P) -> P:
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        self._check(other)
        result = dict(self._terms)
        for key, coeff in other._terms.items():
            value = result.get(key, ZERO) + coeff
            if value:
                result[key] = value
            else:
                del result[key]
        return self._trusted(self.n, result)

    def __neg__(self: P) -> P:
        return self._trusted(self.n, {key: -coeff for key, coeff in self._terms.items()})

    def __sub__(self: P, other: P) -> P:
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self + (-other)

    def scale(self: P, factor) -> P:
        factor = gaussian(factor)
        if not factor:
            return self.zero(self.n)
        return self._trusted(self.n, {key: coeff * factor for key, coeff in self._terms.items()})

    def __mul__(self: P, other) -> P:
        if not isinstance(other, SparsePolynomial):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        result: Dict[Bidegree, GaussianRational] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                key = Bidegree(tuple(a + b for a, b in zip(k1.alpha, k2.alpha)),
                               tuple(a + b for a, b in zip(k1.beta, k2.beta)))
                result[key] = result.get(key, ZERO) + c1 * c2
        return self._trusted(self.n, {k: c for k, c in result.items() if c})

    def __rmul__(self: P, other) -> P:
        return self.__mul__(other)

    def lift(self: P, n: int, positions: Sequence[int]) -> P:
        """
        Embed into dimension n, sending variable i (1-based) to variable positions[i-1]

        Parameters:
        - n: target dimension
        - positions: target indices, one per source variable, all distinct

        Returns:
        - Polynomial of dimension n
        """
        if len(positions) != self.n or len(set(positions)) != len(positions):
            raise DimensionMismatchError(f"Need {self.n} distinct positions, got {positions}")
        for pos in positions:
            if not 1 <= pos <= n:
                raise IndexRangeError(f"Position {pos} outside 1..{n}")
        result = {}
        for key, coeff in self._terms.items():
            alpha, beta = [0] * n, [0] * n
            for src, pos in enumerate(positions):
                alpha[pos - 1] = key.alpha[src]
                beta[pos - 1] = key.beta[src]
            result[Bidegree(tuple(alpha), tuple(beta))] = coeff
        return self._trusted(n, result)

    # text

    def _monomial_text(self, key: Bidegree) -> str:
        first, second = self.VARIABLE_NAMES
        parts = []
        for name, exps in ((first, key.alpha), (second, key.beta)):
            for j, e in enumerate(exps, start=1):
                if e == 1:
                    parts.append(f"{name}{j}")
                elif e > 1:
                    parts.append(f"{name}{j}^{e}")
        return " ".join(parts)

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for key, coeff in self.sorted_terms():
            mono = self._monomial_text(key)
            coeff_text = format_gaussian(coeff)
            if coeff.x and coeff.y:
                coeff_text = f"({coeff_text})"
            if not mono:
                body = coeff_text
            elif coeff == ONE:
                body = mono
            elif coeff == -ONE:
                body = f"-{mono}"
            else:
                body = f"{coeff_text}*{mono}"
            if not pieces:
                pieces.append(body)
            elif body.startswith("-"):
                pieces.append(f" - {body[1:]}")
            else:
                pieces.append(f" + {body}")
        return "".join(pieces)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, '{self.to_text()}')"

    @classmethod
    def parse(cls: Type[P], text: str, n: int) -> P:
        """
        Read the text grammar produced by to_text()

        Parameters:
        - text: sum of products of rationals, i, variables with ^ powers and parenthesized sums;
          juxtaposition multiplies
        - n: dimension, fixing the admissible variable indices 1..n

        Returns:
        - Polynomial of dimension n
        """
        if n < 1:
            raise DimensionMismatchError(f"Dimension must be >= 1, got {n}")
        if not text or not text.strip():
            raise ParseError("Empty polynomial text")
        first, second = cls.VARIABLE_NAMES
        gens = ([sympy.Symbol(f"{first}{j}") for j in range(1, n + 1)]
                + [sympy.Symbol(f"{second}{j}") for j in range(1, n + 1)])
        local_dict = {str(g): g for g in gens}
        local_dict["i"] = sympy.I
        try:
            expr = parse_expr(text, local_dict=local_dict, global_dict=dict(_PARSE_GLOBALS),
                              transformations=_PARSE_TRANSFORMATIONS)
        except Exception as exc:
            raise ParseError(f"Cannot read {text!r}: {exc}") from exc
        if not isinstance(expr, sympy.Expr):
            raise ParseError(f"{text!r} is not an expression")
        unknown = sorted(str(s) for s in expr.free_symbols - set(gens))
        if unknown:
            raise ParseError(f"Unknown variables {unknown} in {text!r}; "
                             f"expected {first}1..{first}{n} and {second}1..{second}{n}")
        if expr.atoms(sympy.Float) or expr.has(sympy.zoo, sympy.nan, sympy.oo, -sympy.oo):
            raise ParseError(f"{text!r} has a non-exact or infinite coefficient")
        try:
            poly = sympy.Poly(expr, *gens, domain=QQ_I)
        except Exception as exc:
            raise ParseError(f"{text!r} is not a polynomial in {first} and {second}: {exc}") from exc
        terms = {Bidegree(monom[:n], monom[n:]): QQ_I.from_sympy(coeff) for monom, coeff in poly.terms()}
        return cls(n, terms)


_PARSE_TRANSFORMATIONS = standard_transformations + (implicit_multiplication, convert_xor)

# names the generated code may call; anything else becomes a Symbol and is rejected
_PARSE_GLOBALS = {"Symbol": sympy.Symbol, "Function": sympy.Function, "Integer": sympy.Integer,
                  "Rational": sympy.Rational, "Float": sympy.Float}


class Poly(SparsePolynomial):
    """Polynomial in z_1..z_n and zbar_1..zbar_n over the Gaussian rationals"""

    VARIABLE_NAMES = ("z", "zb")

    __slots__ = ()

    @classmethod
    def z(cls, n: int, j: int) -> "Poly":
        _check_index(n, j)
        exps = [0] * n
        exps[j - 1] = 1
        return cls.monomial(exps, [0] * n)

    @classmethod
    def zbar(cls, n: int, j: int) -> "Poly":
        _check_index(n, j)
        exps = [0] * n
        exps[j - 1] = 1
        return cls.monomial([0] * n, exps)

    @classmethod
    def norm_squared(cls, n: int) -> "Poly":
        """|z|^2 = sum_j z_j zbar_j"""
        return sum((cls.z(n, j) * cls.zbar(n, j) for j in range(2, n + 1)),
                   cls.z(n, 1) * cls.zbar(n, 1))

    def charges(self) -> List[Tuple[int, ...]]:
        return sorted({key.charge for key in self._terms})

    def conjugate(self) -> "Poly":
        """Complex conjugate function: swaps z and zbar exponents and conjugates coefficients"""
        return self._trusted(self.n, {key.conjugate(): conjugate(c) for key, c in self._terms.items()})

    def d_z(self, j: int) -> "Poly":
        _check_index(self.n, j)
        result = {}
        for key, coeff in self._terms.items():
            a = key.alpha[j - 1]
            if a:
                alpha = key.alpha[:j - 1] + (a - 1,) + key.alpha[j:]
                result[Bidegree(alpha, key.beta)] = coeff * a
        return self._trusted(self.n, result)

    def d_zbar(self, j: int) -> "Poly":
        _check_index(self.n, j)
        result = {}
        for key, coeff in self._terms.items():
            b = key.beta[j - 1]
            if b:
                beta = key.beta[:j - 1] + (b - 1,) + key.beta[j:]
                result[Bidegree(key.alpha, beta)] = coeff * b
        return self._trusted(self.n, result)

    def laplace_quarter(self) -> "Poly":
        """sum_j d^2/dz_j dzbar_j, i.e. a quarter of the Laplacian"""
        result = self.zero(self.n)
        for j in range(1, self.n + 1):
            result = result + self.d_zbar(j).d_z(j)
        return result

    def evaluate(self, point: Sequence[complex]) -> complex:
        """Evaluate with zbar_j set to the conjugate of the j-th coordinate"""
        w = np.asarray(point, dtype=complex).reshape(-1)
        if w.shape != (self.n,):
            raise DimensionMismatchError(f"Point has {w.shape[0]} coordinates, expected {self.n}")
        w_bar = np.conj(w)
        total = 0j
        for key, coeff in self._terms.items():
            total += (to_complex(coeff)
                      * np.prod(w ** np.array(key.alpha))
                      * np.prod(w_bar ** np.array(key.beta)))
        return complex(total)


def _check_index(n: int, j: int) -> None:
    if not 1 <= j <= n:
        raise IndexRangeError(f"Variable index {j} outside 1..{n}")


def add(p: Poly, q: Poly) -> Poly:
    return p + q


def mul(p: Poly, q: Poly) -> Poly:
    return p * q


def d_z(p: Poly, j: int) -> Poly:
    return p.d_z(j)


def d_zbar(p: Poly, j: int) -> Poly:
    return p.d_zbar(j)


def laplace_quarter(p: Poly) -> Poly:
    return p.laplace_quarter()


def evaluate(p: Poly, point: Sequence[complex]) -> complex:
    return p.evaluate(point)


def parse_poly(text: str, n: int) -> Poly:
    return Poly.parse(text, n)
