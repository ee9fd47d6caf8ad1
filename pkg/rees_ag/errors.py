from __future__ import annotations


class ReesAGError(Exception):
    pass


class InputError(ReesAGError, ValueError):
    pass


class ExpressionSyntaxError(InputError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariableError(InputError):
    pass


class RingMismatchError(InputError):
    pass


class NotInvertibleError(InputError):
    pass


class HypothesisError(ReesAGError, ValueError):
    pass


class NotPrimaryError(HypothesisError):
    pass


class ContainmentError(HypothesisError):
    def __init__(self, message: str, generator: object | None = None) -> None:
        super().__init__(message)
        self.generator = generator


class InternalInconsistencyError(ReesAGError, RuntimeError):
    pass
