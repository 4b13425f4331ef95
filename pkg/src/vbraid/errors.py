"""Exception hierarchy shared across the package."""


class VbraidError(Exception):
    """Base class for all domain errors raised by this package."""


class ParseError(VbraidError):
    """Malformed word, term, or structure input."""


class DimensionError(VbraidError):
    """Matrix or tuple dimensions do not line up."""


class AxiomError(VbraidError):
    """A structure failed the axioms required by the requested construction."""


class InversionError(VbraidError):
    """A matrix or map that was required to be invertible is not."""
