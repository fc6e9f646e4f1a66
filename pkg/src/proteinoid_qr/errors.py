"""Exception hierarchy.

Every error raised by the toolkit derives from :class:`CodecError`, which is a
``ValueError`` so callers that only care about "bad input" can catch that.
Each family carries the stable CLI exit code in ``exit_code``.
"""


class CodecError(ValueError):
    exit_code = 2


class TraceError(CodecError):
    """Invalid trace, schedule or synthesis arguments."""


class TraceFormatError(TraceError):
    """Malformed CSV trace file."""


class InsufficientDataError(CodecError):
    """Not enough signal to analyze (too few samples, no full window)."""

    exit_code = 3


class GrammarError(CodecError):
    """Digit string or message violates the symbol grammar."""

    exit_code = 6


class PayloadError(CodecError):
    """Payload cannot be placed in a QR symbol."""

    exit_code = 4


class CapacityError(PayloadError):
    pass


class DecodeError(CodecError):
    """A module matrix could not be turned back into a payload."""

    exit_code = 5


class FormatInfoError(DecodeError):
    pass


class UncorrectableError(DecodeError):
    pass


class UnsupportedModeError(DecodeError):
    pass
