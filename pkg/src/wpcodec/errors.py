"""Exception hierarchy shared by all codec stages."""


class WPBError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(WPBError, ValueError):
    pass


class UnsupportedWaveletError(InvalidInputError):
    pass


class PNMError(WPBError, ValueError):
    """Raised when a PGM/PPM byte string cannot be parsed."""


class PNMMagicError(PNMError):
    pass


class PNMMaxvalError(PNMError):
    pass


class PNMHeaderError(PNMError):
    pass


class PNMTruncatedError(PNMError):
    pass


class CorruptTreeError(WPBError):
    pass


class CorruptDataError(WPBError):
    """A coded bit stream or run list does not decode consistently."""


class TruncatedDataError(CorruptDataError):
    """The input ended before decoding finished."""


class ContainerError(WPBError):
    pass


class BadMagicError(ContainerError):
    pass


class UnsupportedVersionError(ContainerError):
    pass


class TruncatedContainerError(ContainerError):
    pass


class CorruptContainerError(ContainerError):
    pass
