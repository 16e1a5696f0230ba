"""Exception hierarchy shared by the whole package."""


class PyramidError(Exception):
    """Base class for every error raised by sympyramid."""


class DataError(PyramidError, ValueError):
    """Input data does not conform to its schema or to a cell invariant."""


class UsageError(PyramidError, ValueError):
    """An operation was called with arguments outside its contract."""


class StructureError(PyramidError):
    """A pyramid under construction is in a state the relations cannot handle."""


class ConstructionError(PyramidError):
    """The CAPS/CAPSO run stopped without producing a pyramid."""
