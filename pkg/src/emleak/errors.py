"""Exception hierarchy shared by all emleak modules."""


class EmleakError(Exception):
    """Base class for all domain errors raised by this package."""


class UnknownMode(EmleakError):
    pass


class InvalidArgument(EmleakError):
    pass


class DimensionMismatch(EmleakError):
    pass


class EmptyFrame(EmleakError):
    pass


class EmptySequence(EmleakError):
    pass


class FormatError(EmleakError):
    pass


class IoError(EmleakError):
    pass


class MissingMeta(EmleakError):
    pass


class TooShort(EmleakError):
    pass


class NoVisibleHarmonics(EmleakError):
    pass


class NumericalOverflow(EmleakError):
    pass
