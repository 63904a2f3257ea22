class BridgeError(Exception):
    """
    Base class for every failure raised by the apps. Carries a machine
    readable `code` used by the CLI error JSON and the API response schema.
    """

    code = "bridge_error"

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.code)
        self.message = message or self.code
        self.details = details

    def as_dict(self) -> dict:
        """Serializable form, used on stderr and in API responses."""

        return {"error": self.code, "detail": self.message, **self.details}


class DomainError(BridgeError, ValueError):
    """An argument is outside the domain of the operation (time ordering, α < 0, ...)."""

    code = "domain_error"


class QuadratureFailure(BridgeError, ArithmeticError):
    """The requested tolerance could not be met within the evaluation budget."""

    code = "quadrature_failure"


class BracketFailure(BridgeError, ArithmeticError):
    """A monotone bracket for the inversion of the expectation could not be established."""

    code = "bracket_failure"


class DegeneratePath(BridgeError):
    """The weighted energy of the path is zero, the estimators are undefined."""

    code = "degenerate_path"


class TailMassTooLarge(BridgeError):
    """The posterior mass beyond the support bound exceeds the tolerance."""

    code = "tail_mass_too_large"


class DegenerateFractionExceeded(BridgeError):
    """Too many degenerate paths in a Monte Carlo run."""

    code = "degenerate_fraction_exceeded"
