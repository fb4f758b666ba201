"""Exception types raised across the package.

Everything derives from :class:`CoapIdsError` so callers (notably the CLI)
can distinguish data/model problems from genuine bugs.
"""


class CoapIdsError(Exception):
    """Base class for all errors raised by this package."""


# --- wire codec ---

class CoapDecodeError(CoapIdsError):
    """A byte sequence could not be decoded as a CoAP message.

    Carries the byte offset at which decoding failed.
    """

    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


class TruncatedMessage(CoapDecodeError):
    pass


class InvalidTokenLength(CoapDecodeError):
    pass


class ReservedOptionNibble(CoapDecodeError):
    pass


class UnsupportedVersion(CoapDecodeError):
    pass


class InvariantViolation(CoapIdsError):
    """A message handed to the encoder breaks a structural invariant.

    Signals a caller bug, not corrupt input data.
    """


# --- traffic synthesis ---

class InvalidConfig(CoapIdsError):
    pass


# --- ingest ---

class RaggedRow(CoapIdsError):
    def __init__(self, path, line_number, expected, got):
        super().__init__(
            f"{path}: line {line_number} has {got} cells, header has {expected}"
        )
        self.line_number = line_number


class MissingTypeColumn(CoapIdsError):
    pass


class OverlappingWindows(CoapIdsError):
    pass


# --- preprocessing ---

class EmptyTable(CoapIdsError):
    pass


class NonNumericResidue(CoapIdsError):
    def __init__(self, column, value):
        super().__init__(f"column {column!r} holds unparseable value {value!r}")
        self.column = column


class UnknownClassLabel(CoapIdsError):
    pass


# --- models ---

class DimensionMismatch(CoapIdsError):
    pass


class NonFiniteLoss(CoapIdsError):
    def __init__(self, epoch):
        super().__init__(f"training loss became non-finite during epoch {epoch}")
        self.epoch = epoch


class EmptyData(CoapIdsError):
    pass


class SingleClass(CoapIdsError):
    pass


# --- evaluation ---

class LengthMismatch(CoapIdsError):
    pass


class TooFewSamplesPerClass(CoapIdsError):
    pass
