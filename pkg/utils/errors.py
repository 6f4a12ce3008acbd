from typing import Optional


class AngulonError(Exception):
    code = 'error'
    exit_code = 2

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def reason(self) -> str:
        return f"{self.code}: {self.message}"


class InvalidArgument(AngulonError):
    code = 'invalid-argument'


class DegenerateNodes(AngulonError):
    code = 'degenerate-nodes'


class SingularCoefficient(AngulonError):
    code = 'singular-coefficient'


class EvaluationError(AngulonError):
    code = 'evaluation-error'


class DegenerateSample(AngulonError):
    code = 'degenerate-sample'


class ConvergenceFailure(AngulonError):
    code = 'convergence-failure'
    exit_code = 1

    def __init__(self, message: str, best_residual: float = float('nan'),
                 iterations: int = 0, index: Optional[int] = None):
        super().__init__(message)
        self.best_residual = best_residual
        self.iterations = iterations
        self.index = index

    def reason(self) -> str:
        details = f"best_residual={self.best_residual:.3e} iterations={self.iterations}"
        if self.index is not None:
            details += f" index={self.index}"
        return f"{self.code}: {self.message} ({details})"


class VerificationFailure(AngulonError):
    code = 'verification-failure'
    exit_code = 1
