"""Exception hierarchy shared by the engines and mapped to CLI exit codes."""


class MuCertError(Exception):
    """Base class for all toolkit errors."""


class InputError(MuCertError, ValueError):
    """Malformed or out-of-contract input."""


class PrecisionError(InputError):
    """The requested quantity is not determined at the working precision."""


class UnsupportedError(InputError):
    """Input is well formed but outside what an explicit criterion covers."""


class BudgetError(MuCertError):
    """A desk-scale enumeration budget would be exceeded."""
