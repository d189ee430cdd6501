class PmnnError(Exception):
    def __init__(self, message: str, code: str = "INTERNAL_ERROR"):
        self.message = message
        self.code = code
        super().__init__(message)


class InvalidArgumentError(PmnnError):
    def __init__(self, message: str, code: str = "INVALID_ARGUMENT"):
        super().__init__(message, code=code)


class DomainError(InvalidArgumentError):
    def __init__(self, message: str):
        super().__init__(message, code="DOMAIN_ERROR")


class ConvergenceError(PmnnError):
    def __init__(self, message: str, best_estimate: float | None = None):
        self.best_estimate = best_estimate
        super().__init__(message, code="CONVERGENCE_ERROR")


class NumericalError(PmnnError):
    def __init__(self, message: str, term: str | None = None, code: str = "NUMERICAL_ERROR"):
        self.term = term
        super().__init__(message, code=code)


class ZeroNormError(NumericalError):
    def __init__(self, message: str = "Reference norm is zero"):
        super().__init__(message, term="reference_norm", code="ZERO_NORM")


class OutputError(PmnnError):
    def __init__(self, message: str):
        super().__init__(message, code="IO_ERROR")
