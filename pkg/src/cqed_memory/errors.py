"""Exception types raised by the simulator."""


class InvalidParameterError(ValueError):
    """A physical or numerical parameter is outside its allowed range."""


class NumericDomainError(ArithmeticError):
    """An integrand produced a non-finite value."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class DegenerateOperatingPointError(ArithmeticError):
    """The resonant swap amplitude T_LR(k_c) vanishes, so ratios are undefined."""


class ResolutionError(RuntimeError):
    """An oracle grid is too coarse for the requested tolerance."""

    def __init__(self, message: str, suggested_n: int):
        super().__init__(f"{message} (try N={suggested_n})")
        self.suggested_n = suggested_n
