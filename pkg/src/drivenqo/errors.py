"""Exception hierarchy shared by all drivenqo modules."""


class DrivenQOError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(DrivenQOError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConfigError(DrivenQOError):
    """A scenario configuration is inconsistent or incomplete."""


class SmallDenominatorError(DrivenQOError):
    """A retained perturbative term has a near-vanishing energy denominator.

    Signals an unhandled near-degeneracy; carries the (p, P) pair of the
    offending term so the caller can identify the resonance.
    """

    def __init__(self, p, P, denom):
        self.p = p
        self.P = P
        self.denom = denom
        super().__init__(
            f"near-zero denominator {denom:.3e} at (p={p}, P={P}); "
            "an additional resonance intrudes on the perturbative sum"
        )


class TruncationError(DrivenQOError):
    """A basis cutoff is too small for the requested computation."""

    def __init__(self, cutoff, message):
        self.cutoff = cutoff
        super().__init__(f"{message} (deficient cutoff: {cutoff})")


class NumericalError(DrivenQOError):
    """An eigensolver, propagator or other numerical routine failed its contract."""


class StepSizeError(NumericalError):
    """Time propagation violated the norm-conservation tolerance."""
