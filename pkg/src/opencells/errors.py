"""Exception hierarchy shared by all modules."""


class OpenCellsError(Exception):
    """Base class for library errors."""


class DimensionError(OpenCellsError, ValueError):
    """Arity or ambient-dimension mismatch."""


class PreconditionError(OpenCellsError, ValueError):
    """An operation was called outside its domain."""


class InputError(OpenCellsError, ValueError):
    """Malformed or inconsistent user input."""


class ResourceError(OpenCellsError, RuntimeError):
    """A configured size limit was exceeded."""
