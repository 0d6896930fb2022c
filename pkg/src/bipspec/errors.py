"""Exception hierarchy shared by all modules."""


class BipspecError(Exception):
    pass


# graph ingestion / structure

class GraphFormatError(BipspecError):
    """Raised for any input that cannot be turned into a simple graph."""


class MalformedGraph6(GraphFormatError):
    pass


class UnsupportedSize(GraphFormatError):
    pass


class SelfLoop(GraphFormatError):
    pass


class BadToken(GraphFormatError):
    pass


class Disconnected(BipspecError):
    pass


class NotBipartite(BipspecError):
    def __init__(self, witness):
        self.witness = list(witness)
        super().__init__(f"odd closed walk {self.witness}")


class UnknownName(BipspecError):
    pass


class BadParams(BipspecError):
    pass


class TooLarge(BipspecError):
    pass


# numerics

class NotSymmetric(BipspecError):
    pass


class NoConvergence(BipspecError):
    def __init__(self, residual, sweeps):
        self.residual = residual
        self.sweeps = sweeps
        super().__init__(f"Jacobi did not converge after {sweeps} sweeps (off-diagonal norm {residual:.3e})")


class AmbiguousGrouping(BipspecError):
    pass


class BadPartition(BipspecError):
    pass


class SizeMismatch(BipspecError):
    pass


class ZeroVector(BipspecError):
    pass


class DegenerateSpectrum(BipspecError):
    pass


class NormalizationFailure(BipspecError):
    pass


class RouteMismatch(BipspecError):
    pass


class RouteDisagreement(BipspecError):
    pass


class InternalDisagreement(BipspecError):
    pass


class EmptyDistanceClass(BipspecError):
    pass


class LengthCapExceeded(BipspecError):
    pass
