from __future__ import annotations


class GwreconError(RuntimeError):
    pass


class DomainError(GwreconError, ValueError):
    """Mathematically invalid input (empty moduli space, bad partition, ...)."""


class ResourceLimitError(GwreconError):
    def __init__(self, message: str, *, bound: str) -> None:
        super().__init__(f"{message} (bound: {bound})")
        self.bound = bound


class UnsupportedError(GwreconError):
    pass


class IntegrityError(GwreconError):
    pass


class AlgorithmError(GwreconError):
    def __init__(self, message: str, *, chain: list[str] | None = None) -> None:
        self.chain = list(chain or [])
        if self.chain:
            message = message + ": " + " -> ".join(self.chain)
        super().__init__(message)
