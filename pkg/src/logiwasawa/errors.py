"""Exception hierarchy shared by all modules."""


class IwasawaError(Exception):
    """Base class for every error raised by this package."""


class PrecisionExhausted(IwasawaError):
    """The requested quantity cannot be certified at the working precision."""


class NotAUnit(IwasawaError):
    pass


class TruncationTooSmall(IwasawaError):
    """No unit coefficient shows up below the T-truncation degree."""


class NotDistinguished(IwasawaError, ValueError):
    pass


class InfiniteQuotient(IwasawaError):
    """E / omega_n E is infinite (a distinguished part shares a factor with omega_n)."""


class FitInconclusive(IwasawaError):
    pass


class NoEventualFit(IwasawaError):
    pass


class TooShort(NoEventualFit):
    pass


class NotAPowerOfEll(IwasawaError, ValueError):
    pass


class NotTorsion(IwasawaError):
    pass


class NotIsolated(IwasawaError):
    def __init__(self, n_max):
        super().__init__(f"cyclotomic point not isolated below precision {n_max}")
        self.n_max = n_max


class InconsistentStep(IwasawaError, ValueError):
    pass


class TowerMismatch(IwasawaError):
    pass


class InvalidConfig(IwasawaError, ValueError):
    pass
