"""Exception types raised by colordipole."""


class ColorDipoleError(Exception):
    """Base class for all library errors."""


class UnsupportedFormatError(ColorDipoleError, ValueError):
    pass


class CorruptImageError(ColorDipoleError, ValueError):
    pass


class InvalidChannelError(ColorDipoleError, ValueError):
    pass


class OutsideInteriorError(ColorDipoleError, ValueError):
    """A window does not fit inside the frame under the interior border policy."""


class InvalidRectError(ColorDipoleError, ValueError):
    pass


class CorruptDumpError(ColorDipoleError, ValueError):
    pass


class UsageError(ColorDipoleError):
    """Bad command-line arguments; the message names the offending flag."""
