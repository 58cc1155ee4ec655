import argparse
from dataclasses import asdict, dataclass, fields
from typing import Any, Dict, Optional, Tuple

from src.algebra.errors import ConfigError, ParseError
from src.algebra.polynomial import Bidegree, ONE, parse_poly
from src.spectrum.galerkin import METHODS, OPERATORS

COMMANDS = ("verify-eigen", "spectrum", "multiplicity", "operator-check", "witten-check", "hermite-check", "expand")
FORMATS = ("json", "csv", "text")


@dataclass
class RunConfig:
    """Everything one CLI invocation needs; validate() before use"""
    command: str
    n: int = 1
    q: int = 0
    degree: int = 6
    kmax: int = 8
    mmax: int = 8
    tolerance: float = 1e-6
    format: str = "json"
    seed: int = 0
    samples: int = 200
    operator: str = "box"
    method: str = "ldl"
    degrees: Tuple[int, ...] = (4, 8, 12)
    mu: Optional[int] = None
    monomial: Optional[str] = None
    allow_large_degree: bool = False
    threads: Optional[int] = None
    progress: bool = False

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise ConfigError(f"Unknown command: {self.command}. Available commands: {COMMANDS}")
        if self.n < 1:
            raise ConfigError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.q <= self.n:
            raise ConfigError(f"q must satisfy 0 <= q <= n, got q={self.q}, n={self.n}")
        if self.degree < 1:
            raise ConfigError(f"degree must be >= 1, got {self.degree}")
        if self.kmax < 0 or self.mmax < 0:
            raise ConfigError(f"kmax and mmax must be >= 0, got {self.kmax}, {self.mmax}")
        if self.tolerance <= 0:
            raise ConfigError(f"tolerance must be positive, got {self.tolerance}")
        if self.samples < 1:
            raise ConfigError(f"samples must be >= 1, got {self.samples}")
        if self.format not in FORMATS:
            raise ConfigError(f"Unknown format: {self.format}. Available formats: {FORMATS}")
        if self.operator not in OPERATORS:
            raise ConfigError(f"Unknown operator: {self.operator}. Available operators: {OPERATORS}")
        if self.method not in METHODS:
            raise ConfigError(f"Unknown method: {self.method}. Available methods: {METHODS}")
        if self.operator == "pauli" and (self.n != 1 or self.q > 1):
            raise ConfigError("The pauli operator needs n = 1 and q in (0, 1)")
        if not self.degrees or min(self.degrees) < 1:
            raise ConfigError(f"degrees must be a nonempty list of caps >= 1, got {self.degrees}")
        if self.mu is not None and self.mu < self.q:
            raise ConfigError(f"mu must be >= q, got mu={self.mu}, q={self.q}")
        if self.threads is not None and self.threads < 1:
            raise ConfigError(f"threads must be >= 1, got {self.threads}")
        if self.monomial is not None:
            self.monomial_bidegree()
        return self

    def monomial_bidegree(self) -> Optional[Bidegree]:
        """The --monomial text as an exponent pair; it must be a single monomial with coefficient 1"""
        if self.monomial is None:
            return None
        try:
            poly = parse_poly(self.monomial, self.n)
        except ParseError as exc:
            raise ConfigError(f"Cannot read monomial {self.monomial!r}: {exc}") from exc
        if len(poly) != 1 or poly.leading_term()[1] != ONE:
            raise ConfigError(f"--monomial must be a single monomial with coefficient 1, got {self.monomial!r}")
        return poly.leading_term()[0]

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["degrees"] = list(self.degrees)
        return data

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        values = {f.name: getattr(args, f.name) for f in fields(cls) if getattr(args, f.name, None) is not None}
        if "degrees" in values:
            values["degrees"] = tuple(values["degrees"])
        return cls(**values)
