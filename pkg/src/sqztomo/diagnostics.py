"""Structured warnings and errors raised across the package."""

import warnings


class TruncationWarning(UserWarning):
    """Probability weight is leaking past the Fock cutoff."""

    def __init__(self, source: str, tail_mass: float, threshold: float):
        self.source = source
        self.tail_mass = float(tail_mass)
        self.threshold = float(threshold)
        super().__init__(
            f"source={source} tail_mass={self.tail_mass:.3e} threshold={self.threshold:.1e}"
        )


class QuadratureWarning(UserWarning):
    """A quadrature budget did not reach its target residual."""

    def __init__(self, source: str, residual: float, target: float):
        self.source = source
        self.residual = float(residual)
        self.target = float(target)
        super().__init__(f"source={source} residual={self.residual:.3e} target={self.target:.1e}")


class CutoffError(ValueError):
    """The Fock cutoff is too small for the requested state or operation."""

    def __init__(self, message: str, tail_mass: float | None = None):
        self.tail_mass = tail_mass
        super().__init__(message)


class SingularParameterError(ValueError):
    """A kernel was evaluated where one of its printed denominators vanishes."""

    def __init__(self, kernel: str, denominator: str):
        self.kernel = kernel
        self.denominator = denominator
        super().__init__(f"{kernel}: denominator '{denominator}' vanishes at these parameters")


class FrameDomainError(ValueError):
    """(mu, nu) is outside the image of the scaling/rotation parametrization."""

    def __init__(self, constraint: str, mu: float, nu: float):
        self.constraint = constraint
        super().__init__(f"(mu={mu!r}, nu={nu!r}) violates: {constraint}")


def warn_tail(source: str, tail_mass: float, threshold: float, stacklevel: int = 3) -> None:
    if tail_mass > threshold:
        warnings.warn(TruncationWarning(source, tail_mass, threshold), stacklevel=stacklevel)
