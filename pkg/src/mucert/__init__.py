"""mucert: effective checks for the vanishing of fine Selmer mu-invariants."""

__version__ = "0.1.0"

from .errors import BudgetError, InputError, MuCertError, PrecisionError, UnsupportedError  # noqa: E402,F401
