"""Exception hierarchy shared by every fglforge module."""


class FGLForgeError(Exception):
    """Base class for all errors raised by fglforge."""


class AlphabetMismatch(FGLForgeError, ValueError):
    pass


class TruncationError(FGLForgeError):
    """A dimension or degree bound is too small for the requested result.

    The message always contains the phrase ``truncation insufficient`` so
    that batch reports can be grepped for it.
    """

    def __init__(self, detail):
        super().__init__(f"truncation insufficient: {detail}")


class WindowOverflowError(FGLForgeError):
    """Nonzero mass would fall below the lower end of a t-window."""


class NotInvertibleError(FGLForgeError, ZeroDivisionError):
    pass


class PLocalityError(FGLForgeError, ValueError):
    """A coefficient has a denominator divisible by the working prime."""


class DivisibilityFailure(FGLForgeError):
    """Division by the [p]-series produced a non p-local coefficient."""


class ConfigError(FGLForgeError, ValueError):
    """Bad user configuration (prime, bounds, plan file)."""
