import logging
from typing import Dict, List, Optional

import numpy as np
from sympy.polys.domains import QQ

from src.algebra.errors import ConfigError
from src.algebra.forms import QForm, all_multi_indices
from src.algebra.polynomial import Poly, gaussian, iter_bidegrees
from src.spectrum.eigenfunctions import EigenFunction, canonical_eigenfunction, tensor_fn

logger = logging.getLogger(__name__)


class RandomFormGenerator:
    """
    Seeded source of random polynomials, (0,q)-forms and tensor eigenfunctions.

    Coefficients are small Gaussian rationals so exact arithmetic stays cheap;
    the same seed always yields the same sequence.
    """

    def __init__(self,
                 n: int = 1,
                 max_degree: int = 4,
                 max_terms: int = 4,
                 coefficient_range: int = 3,
                 complex_coefficients: bool = True,
                 seed: Optional[int] = 0):
        if n < 1:
            raise ConfigError(f"Dimension must be >= 1, got {n}")
        if max_degree < 0 or max_terms < 1 or coefficient_range < 1:
            raise ConfigError(f"Invalid generator bounds: max_degree={max_degree}, "
                              f"max_terms={max_terms}, coefficient_range={coefficient_range}")
        self.n = n
        self.max_degree = max_degree
        self.max_terms = max_terms
        self.coefficient_range = coefficient_range
        self.complex_coefficients = complex_coefficients
        self.seed = seed
        self.rng = np.random.default_rng(seed)
        self.monomials = list(iter_bidegrees(n, max_degree))

    def random_coefficient(self):
        """Nonzero p/q + r/s i with |p|, |r| <= coefficient_range and q, s in 1..coefficient_range"""
        bound = self.coefficient_range
        while True:
            real = QQ(int(self.rng.integers(-bound, bound + 1)), int(self.rng.integers(1, bound + 1)))
            imag = QQ(0)
            if self.complex_coefficients:
                imag = QQ(int(self.rng.integers(-bound, bound + 1)), int(self.rng.integers(1, bound + 1)))
            value = gaussian(real, imag)
            if value:
                return value

    def random_poly(self) -> Poly:
        count = int(self.rng.integers(1, self.max_terms + 1))
        picks = self.rng.choice(len(self.monomials), size=min(count, len(self.monomials)), replace=False)
        return Poly(self.n, {self.monomials[int(i)]: self.random_coefficient() for i in picks})

    def random_form(self, q: int) -> QForm:
        """Random coefficients on a random nonempty subset of the components"""
        indices = all_multi_indices(self.n, q)
        count = int(self.rng.integers(1, len(indices) + 1))
        picks = self.rng.choice(len(indices), size=count, replace=False)
        return QForm(self.n, q, {indices[int(i)]: self.random_poly() for i in sorted(picks)})

    def random_tensor(self, q: int) -> EigenFunction:
        """Tensor of random canonical one-variable eigenfunctions in a random component of degree q"""
        factors = []
        for _ in range(self.n):
            a, b = (int(e) for e in self.rng.integers(0, self.max_degree // 2 + 1, size=2))
            factors.append(canonical_eigenfunction(a, b))
        indices = all_multi_indices(self.n, q)
        J = indices[int(self.rng.integers(0, len(indices)))]
        return tensor_fn(factors, J, q)

    def generate_forms(self, count: int, q: int) -> List[QForm]:
        return [self.random_form(q) for _ in range(count)]

    def generate_all_degrees(self, count: int) -> Dict[int, List[QForm]]:
        """count random forms for every degree q = 0..n"""
        logger.debug(f"Generating {count} forms per degree for n={self.n} (seed {self.seed})")
        return {q: self.generate_forms(count, q) for q in range(self.n + 1)}
