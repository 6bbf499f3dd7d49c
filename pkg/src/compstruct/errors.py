"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: format/usage problems exit 2, resource
guards exit 3.
"""


class CompStructError(Exception):
    pass


class StructuralError(CompStructError, ValueError):
    """A value violates the shape invariants of its type (e.g. entry >= order)."""


class DomainError(CompStructError, ValueError):
    """An operation was called outside its precondition."""


class ExtractionError(CompStructError, ValueError):
    """Piggyback extraction is not single-valued under the given masks."""


class FormatError(CompStructError, ValueError):
    """A text file does not follow its documented format."""


class ResourceError(CompStructError, RuntimeError):
    """A size guard or search limit was hit; the result would be incomplete."""
