class FockSpecError(ValueError):
    """Base class for all errors raised by the library"""


class DimensionMismatchError(FockSpecError):
    """Operands live in different dimensions n"""


class IndexRangeError(FockSpecError):
    """A variable or basis index lies outside 1..n"""


class DegreeError(FockSpecError):
    """A form degree is out of range or two forms have different degrees"""


class ParameterRangeError(FockSpecError):
    """Eigenfunction parameters outside their admissible range"""


class SingularGramError(FockSpecError):
    """A Gram matrix is not positive definite or too ill-conditioned to use"""


class SpectrumError(FockSpecError):
    """A computed eigenvalue could not be matched to an integer cluster"""


class ConfigError(FockSpecError):
    """Invalid run configuration"""


class ParseError(FockSpecError):
    """Text could not be read as a polynomial"""
