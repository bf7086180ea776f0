"""Exception hierarchy shared by all pipeline stages.

Input errors (bad PD text, non-generic weight functions) are recoverable and
carry enough detail for the CLI to report them; internal-geometry errors
signal implementation bugs and are never expected on validated input.
"""


class TreefloerError(Exception):
    """Base class for all package errors."""


class InputError(TreefloerError):
    """Invalid user input (exit code 1 in the CLI)."""


class MalformedInput(InputError):
    """PD text or override files that do not parse."""


class ArcMultiplicity(InputError):
    """An arc label is not used exactly twice."""


class Disconnected(InputError):
    """The underlying 4-valent projection is not connected."""


class EmptyDiagram(InputError):
    """A diagram with no crossings."""


class NotGeneric(InputError):
    """A weight function with a vanishing {-1,0,1}-combination (exit code 2)."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class WeightConflict(TreefloerError):
    """Two nonzero weight assignments target one marked point (marking too sparse)."""


class InternalGeometry(TreefloerError):
    """Inconsistent quadrant/role bookkeeping; indicates a bug, not bad input."""


class NotSingleCircle(InternalGeometry):
    """A tree resolution traced to more than one circle."""


class InterleavingViolation(InternalGeometry):
    """Special indices of a double-successor pair fail to interleave."""


class NonGenericWeights(TreefloerError):
    """A component weight B+C or C+D vanished; the supplied Omega is not generic."""


class NotDivisible(InternalGeometry):
    """Homology rank not divisible by the stabilization factor 2^(m-|L|)."""


class CheckFailed(TreefloerError):
    """A self-check (d squared, well-definedness, oracle) failed (exit code 3)."""
