"""
Error Types

All domain errors raised by the toolkit. Two roots:
- ValidationFailure: the input is wrong (CLI exit code 2)
- ConsistencyError: a computation contradicted itself (CLI exit code 3)
"""


class ValidationFailure(ValueError):
    """Input data violates a documented precondition."""


class ConsistencyError(RuntimeError):
    """An internal identity that must hold exactly did not hold."""


class TruncationExceeded(ValidationFailure):
    """A degree beyond the truncation bound of the data was requested."""


class UnknownGroup(ValidationFailure):
    """A group spec string names no catalog group."""


class NonSimplicial(ValidationFailure):
    """A fan contains a cone whose rays are linearly dependent."""


class NonSimplyConnectedBase(ValidationFailure):
    """The base algebra has classes in degree 1."""


class ImpureInput(ValidationFailure):
    """A purity-dependent operation received impure data."""


class InvalidFiltration(ValidationFailure):
    """A filtration is not nested or not closed under the differential."""


class SeriesModuleMismatch(ValidationFailure):
    """A supplied module does not realize the expected Poincaré series."""


class RingMismatch(ValidationFailure):
    """Two modules (or a module and an algebra) live over different rings."""


class InvalidModule(ValidationFailure):
    """A graded module failed shape or commutativity validation."""


class CompositionNotZero(ConsistencyError):
    """Two consecutive differentials do not compose to zero."""


class VanishingViolation(ConsistencyError):
    """A Tor entry below the line q = 2p is nonzero."""


class MethodDisagreement(ConsistencyError):
    """Independent Tor constructions returned different tables."""


class WeightMixing(ConsistencyError):
    """A spectral differential connects spots of different weight."""


class PageIncoherence(ConsistencyError):
    """A page does not equal the homology of the previous page."""
