"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: validation problems exit 2, lookup and
category failures exit 3, store/file problems exit 4, and non-convergence
(under --strict) exits 5.
"""


class HyperspaceError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(HyperspaceError):
    """Invalid argument, parameter, or configuration value."""


class DimensionMismatchError(ValidationError):
    """Operands have different hypervector dimensions."""


class OrthogonalityError(ValidationError):
    """Freshly sampled domain bases failed the quasi-orthogonality check."""


class NotFoundError(HyperspaceError):
    """A label, domain, or file referenced by name does not exist."""


class CategoryMismatchError(HyperspaceError):
    """Analogy operands do not share a common domain."""


class MissingProjectionError(NotFoundError):
    """A concept has no stored prototype in the required domain."""


class ConvergenceError(HyperspaceError):
    """Resonator failed to converge and strict mode was requested."""


class StoreError(HyperspaceError):
    """Problem reading or writing a concept store file."""


class StoreFormatError(StoreError):
    """Store file is malformed; message names the offending field or line."""


class StoreVersionError(StoreError):
    """Store file was written by an incompatible format version."""


class StoreExistsError(StoreError):
    """Refusing to overwrite an existing store without --force."""


class DuplicateLabelError(ValidationError):
    """Concept label already present in the domain and overwrite not set."""
