"""Exception hierarchy shared by all modules.

Every domain failure raises a subclass of :class:`NjacError` so the CLI can
render structured errors without catching arbitrary exceptions.
"""


class NjacError(Exception):
    """Base class for all domain errors."""


class ParseError(NjacError):
    """Malformed polynomial expression; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NegativeExponent(ParseError):
    pass


class ZeroPolynomial(NjacError):
    pass


class SingularMatrix(NjacError):
    pass


class NotVanishingAtOrigin(NjacError):
    pass


class PrecisionExhausted(NjacError):
    pass


class Disagreement(NjacError):
    pass


class NonGenericFailure(NjacError):
    pass


class DegenerateJacobian(NjacError):
    pass


class CertificateMismatch(NjacError):
    pass


class CommonComponent(NjacError):
    pass


class NonReducedInput(NjacError):
    pass


class InconsistentOracle(NjacError):
    pass


class NoConsensus(NjacError):
    def __init__(self, message, fingerprints=()):
        super().__init__(message)
        self.fingerprints = list(fingerprints)


class RouteMismatch(NjacError):
    """The two jacobian-Newton-diagram routes disagree; carries both diagrams."""

    def __init__(self, message, branches_diagram, support_diagram):
        super().__init__(message)
        self.branches_diagram = branches_diagram
        self.support_diagram = support_diagram
