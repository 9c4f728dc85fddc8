"""Exception hierarchy shared by all momenta modules."""


class MomentaError(Exception):
    """Base class for all errors raised by this package."""


class ExprSyntaxError(MomentaError):
    """Malformed expression text.  Carries the 0-based offset of the offending token."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class UnknownVariableError(MomentaError):
    """An identifier that is not among the declared variables."""


class PoleError(MomentaError, ZeroDivisionError):
    """Evaluation of a rational function at a zero of its denominator."""


class VariableMismatchError(MomentaError):
    """Operands declared over different variable lists."""


class NotInvertibleError(MomentaError):
    """Series whose order-0 coefficient is the zero function."""


class NotDivisibleError(MomentaError):
    """Series with a nonzero constant term cannot be divided by h."""


class PresentationMismatchError(MomentaError):
    """Enveloping-algebra elements built over different presentations."""


class DimensionMismatchError(MomentaError):
    """Lie-algebra elements of different dimension."""


class NonTerminatingError(MomentaError):
    """Presentation rejected: straightening is not guaranteed to terminate."""


class JacobiFailureError(MomentaError):
    """A construction that requires the Jacobi identity got an algebra violating it."""


class LengthMismatchError(MomentaError):
    """Tensor word length differs from the argument-list length."""


class InsufficientOrderError(MomentaError):
    """The requested operation would consume more h-orders than are tracked."""


class ScenarioError(MomentaError):
    """Bad scenario input (unreadable file, missing section, unknown check).

    Mapped to exit code 2 by the command line interface.
    """

    def __init__(self, message: str, section: str | None = None):
        self.section = section
        if section is not None:
            message = f"[section: {section}] {message}"
        super().__init__(message)
