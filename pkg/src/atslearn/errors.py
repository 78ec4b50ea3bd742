"""Exception types shared across the package."""


class AtsError(Exception):
    """Base class for all package errors."""


class DimensionError(AtsError):
    """Operand shapes do not agree."""


class ArgumentError(AtsError):
    """An argument value violates a precondition."""


class ContractError(AtsError):
    """An internal contract was violated (stale cache, non-parallel data, ...)."""


class SpecError(AtsError):
    """A network/corpus/run specification is invalid or mismatched."""


class FileFormatError(AtsError):
    """Base class for serialized-container problems."""


class MagicError(FileFormatError):
    """File does not start with the expected magic bytes."""


class VersionError(FileFormatError):
    """Container format version is not supported."""


class TruncatedFileError(FileFormatError):
    """File is shorter than its own bookkeeping claims."""


class ChecksumError(FileFormatError):
    """Trailing CRC-32 does not match the file contents."""
