"""Exception hierarchy shared by every module of the package."""


class PmqhurError(Exception):
    """Base class for all domain errors raised by pmqhur."""


class MalformedSpec(PmqhurError):
    """A table refers to a symbol that is not an element, or a required entry is missing."""


class NormUnavailable(PmqhurError):
    """The PMQ is not locally finite, so decomposition lengths are unbounded."""


class CompletionNotConservative(PmqhurError):
    """Two distinct elements of Q ended up in the same completion class."""


class TruncationOverflow(PmqhurError):
    """A product would leave the norm-truncated completion."""


class ClosureViolation(PmqhurError):
    """A face of a listed cell is missing from the cell set."""


class SizeGuardExceeded(PmqhurError):
    pass


class CoarsePointPresent(PmqhurError):
    pass


class DegenerateCell(PmqhurError):
    pass


class MonotonicityViolation(PmqhurError):
    pass


class NoBasePoint(PmqhurError):
    """No unique extreme coarse point to carry a left or right multiplication."""


class CoveringNotAdapted(PmqhurError):
    pass


class CoveringNotStripSeparated(PmqhurError):
    pass


class InvalidConfiguration(PmqhurError):
    pass
