"""Exception hierarchy shared by all modules."""


class SelbergLabError(Exception):
    """Base class for every error raised by the package."""


class PoleError(SelbergLabError, ValueError):
    """A Gamma factor (or the Gamma function itself) was evaluated at a pole."""

    def __init__(self, message, factor_index=None):
        super().__init__(message)
        self.factor_index = factor_index


class DomainError(SelbergLabError, ValueError):
    """Input is outside the domain an operation is defined on."""


class DataError(SelbergLabError, ValueError):
    """Coefficient data is unusable (e.g. an all-zero prefix)."""


class SchemaError(SelbergLabError, ValueError):
    """A JSON document does not match the expected schema."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path


class SpectrumError(SelbergLabError, ValueError):
    """A twist parameter alpha does not belong to Spec(F)."""


class InsufficientCoefficientsError(SelbergLabError, ValueError):
    """A truncated q-expansion is too short for the requested accuracy."""

    def __init__(self, required):
        super().__init__(f"need at least {required} coefficients")
        self.required = required


class RangeError(SelbergLabError, ValueError):
    """Evaluation point is outside the double-precision safe range."""


class IllConditionedError(SelbergLabError, ArithmeticError):
    """A numerical fit could not reach a trustworthy accuracy."""


class SingularPointError(SelbergLabError, ZeroDivisionError):
    """Evaluation hit a zero of a denominator (e.g. of S_gamma)."""
