"""Exception hierarchy shared by every module.

Each error carries the exit code the command line front end uses when it
surfaces: 2 for malformed input or an unsupported request, 1 when the
mathematics itself fails.
"""

from typing import Optional


class TTGError(Exception):
    exit_code = 2

    @property
    def name(self) -> str:
        return type(self).__name__


# ordinal arithmetic


class OrdinalSyntaxError(TTGError, ValueError):
    def __init__(self, message: str, text: Optional[str] = None, position: int = 0):
        self.text = text
        self.position = position
        if text is not None:
            message = f"{message} at position {position} in {text!r}"
        super().__init__(message)


class OrdinalOverflow(TTGError, ArithmeticError):
    pass


class NotLimit(TTGError, ArithmeticError):
    pass


# spaces and subsets


class SpaceFormatError(TTGError, ValueError):
    pass


class CyclicSpecialisation(SpaceFormatError):
    pass


class SubsetSyntaxError(TTGError, ValueError):
    pass


class Unrepresentable(TTGError):
    pass


class Unsupported(TTGError):
    pass


class NotProconstructible(TTGError):
    pass


class NotVisible(TTGError):
    exit_code = 1


# dimension functions


class NotSupported(TTGError):
    pass


class NotConstructible(TTGError):
    exit_code = 1


class RankUndefined(TTGError):
    exit_code = 1


class CompatibilityViolation(TTGError):
    exit_code = 1


class DualRouteMismatch(TTGError):
    """Two independent computations of the same quantity disagreed."""

    exit_code = 1


# support lattice


class NotThomason(TTGError):
    pass


class SizeGuard(TTGError):
    pass


# stone duality


class PresentationError(TTGError, ValueError):
    pass


class InvalidSubset(TTGError, ValueError):
    pass
