"""Exception hierarchy, shared across modules and mapped to CLI exit codes.

Parameter problems (bad shapes, out-of-range values, malformed files) raise
:class:`ParameterError` and exit the CLI with code 1.  Failures of a
mathematical precondition -- the input is valid but the requested object
does not exist -- raise a :class:`PreconditionError` subclass and exit
with code 2.
"""


class AtomfiltError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(AtomfiltError, ValueError):
    """Invalid argument values, shapes, or file contents."""


class PreconditionError(AtomfiltError):
    """A mathematical precondition of the requested operation failed."""


class GraphStructureError(PreconditionError):
    """Matrix is not the Laplacian of a connected graph."""


class GenerationError(PreconditionError):
    """Randomized generation exhausted its attempt budget."""


class NoNormalBasisError(PreconditionError):
    """The spectrum does not admit a conjugate-paired eigenbasis.

    Raised when more than one nonzero eigenvalue group has odd multiplicity,
    so no unit-modulus frequency response with distinct components can yield
    a real operator.  The offending groups are listed in ``groups`` as
    ``(eigenvalue, multiplicity)`` pairs.
    """

    def __init__(self, message, groups=()):
        super().__init__(message)
        self.groups = tuple(groups)


class NotAtomicError(PreconditionError):
    """Frequency response has (numerically) repeated components."""


class FrameConditionError(PreconditionError):
    """Response matrix rows are not orthonormal; no exact reconstruction."""


class DegenerateWindowError(PreconditionError):
    """Some per-vertex frame weight is zero; reconstruction would divide by it.

    ``vertices`` lists the offending (0-based) vertex indices.
    """

    def __init__(self, message, vertices=()):
        super().__init__(message)
        self.vertices = tuple(vertices)
