"""Exception types shared across the toolkit.

``ValueError`` (and argparse failures) signal caller mistakes; ``DataError``
and its subclasses signal problems with the data itself. The CLI maps the
former to exit code 1 and the latter to exit code 2.
"""


class DataError(ValueError):
    """The input data violates a precondition (bad values, missing class, ...)."""


class ParseError(DataError):
    """A KEEL/CSV stream could not be parsed."""
