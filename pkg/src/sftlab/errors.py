"""Exception types shared across the library.

Error classes carry the name of the violated contract; messages add the
offending data.  Anything raised by the library derives from SftError so
the CLI can map library failures to exit code 2.
"""


class SftError(Exception):
    """Base class for all library errors."""


# ---------------------------------------------------------------- matrices

class NegativeEntry(SftError):
    pass


class NotZeroOne(SftError):
    pass


class PermutationMatrix(SftError):
    pass


class NotIrreducible(SftError):
    pass


class EnvelopeExceeded(SftError):
    """Input outside the supported size envelope (vertex count or word count)."""


class NotVertexKind(SftError):
    pass


# ------------------------------------------------------------ words/points

class Inadmissible(SftError):
    pass


class NotCyclicallyAdmissible(SftError):
    pass


# ---------------------------------------------------------------- functions

class PresentationMismatch(SftError):
    pass


class MismatchedInput(SftError):
    pass


class RationalNotSupported(SftError):
    """Positivity decisions are defined over integer-valued functions only."""


# --------------------------------------------------------------- transducers

class IncompleteTransducer(SftError):
    """Missing transition for a reachable state and admissible input symbol."""


class Starvation(SftError):
    """A reachable cycle of the transition graph emits no output."""


class InadmissibleOutput(SftError):
    pass


class InsufficientLookahead(SftError):
    """Configured depth/delay bounds too small to settle the question."""


# ------------------------------------------------------------- moves/verdicts

class InvalidResult(SftError):
    """A constructed matrix fails presentation validation."""


class ContradictionDetected(SftError):
    """Tripwire: a verified witness contradicts an invariant verdict."""


class FormatError(SftError):
    """Malformed input file or token."""
