"""Exception hierarchy shared by every torcells module."""


class TorcellsError(Exception):
    """Base class for all library errors."""


class InputError(TorcellsError, ValueError):
    """Invalid user input. The CLI maps these to exit code 2."""


class DimensionError(InputError):
    """Vectors of mismatched length."""


class PreconditionError(InputError):
    """An operation was called outside its domain (e.g. non-simplicial cone)."""


class UnsupportedError(PreconditionError):
    """The requested construction does not exist for this input."""


class PoleError(InputError, ZeroDivisionError):
    """A denominator character vanishes at the evaluation point."""

    def __init__(self, character, point):
        self.character = tuple(character)
        self.point = tuple(point)
        super().__init__(
            f"pole: character {list(self.character)} pairs to 0 with {list(self.point)}")


class NotGenericError(InputError):
    """The one-parameter subgroup pairs to zero with some tangent weight."""

    def __init__(self, weight, fixed_point, lam):
        self.weight = tuple(weight)
        self.fixed_point = fixed_point
        self.lam = tuple(lam)
        super().__init__(
            f"λ not generic: weight {_fmt(self.weight)} at fixed point "
            f"{fixed_point} pairs to 0")


class NoCertificateError(PreconditionError):
    """No finite cover by a representation with isolated zero fiber exists."""


class HypothesisError(PreconditionError):
    """A theorem's hypothesis is not met, so its conclusion cannot be used."""


class PropertyViolation(TorcellsError, AssertionError):
    """An internal consistency check failed. The CLI maps these to exit code 3."""


def _fmt(v):
    return "(" + ",".join(str(c) for c in v) + ")"
