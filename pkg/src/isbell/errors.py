"""Exception types shared across the package."""


class IsbellError(Exception):
    """Base class for all errors raised by this package."""


class InputError(IsbellError, ValueError):
    """Malformed or inconsistent input (wrong side, unknown label, bad file)."""


class NondegeneracyError(IsbellError):
    """An Isbell transform produced a potential with no finite value."""


class UnsupportedError(IsbellError):
    """The operation requires finite data it was not given."""


class CapExceededError(IsbellError):
    """An exponential enumeration was refused because the input is too large."""
