"""Exception types shared across the toolkit."""


class VidsourceError(Exception):
    """Base class for all toolkit errors."""


class InvalidInputError(VidsourceError):
    """An operation received data violating its preconditions."""


class InvalidParameterError(VidsourceError):
    """A configuration or call parameter is out of its valid range."""


class IngestError(VidsourceError):
    """A clip directory is missing, mis-numbered or otherwise unreadable."""


class FormatError(VidsourceError):
    """A frame file is not lossless 8-bit RGB."""


class SelectionError(VidsourceError):
    """Feature selection produced an empty intersection."""


class SchemaVersionError(VidsourceError):
    """A model or report file carries an unsupported schema version."""
