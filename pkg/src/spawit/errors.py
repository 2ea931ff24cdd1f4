"""Exception hierarchy shared by every module."""


class SpawitError(Exception):
    """Base class for all library errors."""


class NotHermitian(SpawitError):
    pass


class NotNormalized(SpawitError):
    pass


class NotAState(SpawitError):
    pass


class NotAWitness(SpawitError):
    pass


class NotBlockPositive(SpawitError):
    pass


class DidNotConverge(SpawitError):
    """Raised when the product-vector optimizer is asked to be strict and fails.

    The best result found so far is attached as ``result``.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class ExceedsWeakOptimal(SpawitError):
    pass


class PtPositive(SpawitError):
    pass


class DimensionTooLarge(SpawitError):
    pass


class NotCP(SpawitError):
    pass


class BadParameter(SpawitError):
    pass


class RetryExhausted(SpawitError):
    pass


class OperatorFileError(SpawitError):
    pass
