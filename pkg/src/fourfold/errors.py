"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`FourfoldError`; the CLI maps these to exit code 2.
"""


class FourfoldError(Exception):
    pass


class InvalidParameters(FourfoldError, ValueError):
    pass


class InconsistentDescriptor(FourfoldError, ValueError):
    pass


class EmptyList(FourfoldError, ValueError):
    pass


class InsufficientHomology(FourfoldError, ValueError):
    pass


class PreconditionFailed(FourfoldError, ValueError):
    pass


class NonNegativeLambda(FourfoldError, ValueError):
    pass


class UnknownFormulaId(FourfoldError, KeyError):
    pass


class InvalidLatticePoint(FourfoldError, ValueError):
    pass


class SchemaError(FourfoldError, ValueError):
    """Malformed descriptor JSON."""
