"""Exception hierarchy.

Input problems derive from :class:`InputError` (CLI exit code 2), everything
raised while analysing a valid group derives from :class:`AnalysisError`
(exit code 3).
"""


class FlatModuliError(Exception):
    """Base class for all package errors."""


class InputError(FlatModuliError):
    pass


class ParseError(InputError):
    pass


class DimensionMismatch(ParseError):
    pass


class CatalogNotFound(InputError):
    pass


class AnalysisError(FlatModuliError):
    pass


class RankMismatch(AnalysisError):
    pass


class OrderExceeded(AnalysisError):
    pass


class NotCocompact(AnalysisError):
    pass


class PrimeSearchFailed(AnalysisError):
    pass


class OddQuaternionMultiplicity(AnalysisError):
    pass


class InternalInconsistency(AnalysisError):
    pass


class NotNormalizing(AnalysisError):
    pass


class LemmaViolation(AnalysisError):
    pass


class NotSPD(AnalysisError):
    pass


class NotInNormalizer(AnalysisError):
    pass


class NotAField(AnalysisError):
    pass


class ZeroDivisorFound(AnalysisError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotQuaternion(AnalysisError):
    pass
