"""Exception types raised across the package."""


class PosetError(Exception):
    """Base class for errors raised by posetlin."""


class CycleError(PosetError, ValueError):
    """The closure of a relation is not antisymmetric."""


class SizeError(PosetError, ValueError):
    """Input exceeds a documented size bound."""


class LengthError(PosetError, ValueError):
    """A listing does not have one entry per element."""


class WeightError(PosetError, ValueError):
    """Compositions or indices of mismatched weight."""


class DegreeError(PosetError, ValueError):
    """Symmetric functions of different degree were combined."""


class NotMember(PosetError, ValueError):
    """A set is not a member of the plucking it was evaluated on."""


class EmptyError(PosetError, ValueError):
    """Operation undefined on the empty poset."""


class UnknownSuite(PosetError, KeyError):
    """No verification suite with that name."""


class NotSymmetric(PosetError, ValueError):
    """A quasisymmetric element is not symmetric.

    ``witness`` holds two rearrangements of one partition whose
    coefficients differ.
    """

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"coefficients differ on {witness[0]} and {witness[1]}")


class NotApplicable(PosetError, ValueError):
    """A freeness precondition fails; ``witness`` is the offending subset."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message if witness is None else f"{message}: {witness}")
