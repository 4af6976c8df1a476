"""Exception types shared across the package.

File-system level failures (missing files, short reads) surface as the
builtin OSError family; everything domain-specific derives from
DisambigError so callers can catch one base class.
"""


class DisambigError(Exception):
    """Base class for all errors raised by this package."""


# --- ingest ---------------------------------------------------------------

class EmptyLastName(DisambigError):
    """Record has no last name left after normalization."""


class ParseError(DisambigError):
    """Input file could not be parsed; carries the offending row number."""

    def __init__(self, message, row=None):
        super().__init__(message if row is None else f"row {row}: {message}")
        self.row = row


class DuplicateRecordId(DisambigError):
    """The same record_id appears more than once in one corpus."""


class InvalidConfig(DisambigError):
    """A configuration value is out of its documented domain."""


# --- dedup / cluster ------------------------------------------------------

class MissingSurvivorId(DisambigError):
    """UID propagation found a survivor without an assigned UID."""


class PartitionViolation(DisambigError):
    """Cluster groups do not partition the records they claim to cover."""


# --- render ---------------------------------------------------------------

class OffsetOutOfBounds(DisambigError):
    """A string-map placed at this offset would leave the canvas."""


# --- classifier -----------------------------------------------------------

class ShapeMismatch(DisambigError):
    """Input tensor dimensions do not match the network architecture."""


class EmptyTrainingSet(DisambigError):
    """Training was invoked with no labeled pairs."""


class NonBinaryLabel(DisambigError):
    """A training label is neither 0 (non-match) nor 1 (match)."""


class LayoutMismatch(DisambigError):
    """Model was trained on a different render layout than the input stream."""


class VersionMismatch(DisambigError):
    """Serialized file has an unknown magic/version or incompatible schema."""


class ChecksumMismatch(DisambigError):
    """Serialized file is corrupt (stored checksum does not match)."""


# --- metrics --------------------------------------------------------------

class MissingPrediction(DisambigError):
    """A record in the evaluation universe has no predicted UID."""


# --- pipeline -------------------------------------------------------------

class StageInputMissing(DisambigError):
    """A pipeline stage's input artifact does not exist."""

    def __init__(self, stage, path):
        super().__init__(f"stage '{stage}': missing input {path}")
        self.stage = stage
        self.path = path


class ConfigDigestMismatch(DisambigError):
    """An artifact was produced under a different configuration."""
