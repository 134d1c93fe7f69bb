"""Exception hierarchy shared by all nsatoms modules.

The CLI maps these onto exit codes: usage/limit/parse problems exit 2,
semantic input problems (well-formed but meaningless, e.g. a set that is
not a monoid where one is required) exit 3, verification mismatches exit 1.
"""


class NsatomsError(Exception):
    """Base class for all package errors."""


class DomainError(NsatomsError):
    """Argument outside the mathematical domain of the operation."""


class LimitExceeded(NsatomsError):
    """Requested enumeration exceeds the configured desk-scale limit."""


class NotAMonoid(NsatomsError):
    """A numerical set required to be closed under addition is not."""


class NotInG(NsatomsError):
    """Set has a small atom where membership in G(g) is required."""


class WindowMismatch(NsatomsError):
    """Two subset masks with different windows were combined."""


class NotAdmissible(NsatomsError):
    """Pair (L, M) fails the admissibility conditions."""


class NotSigmaAdmissible(NsatomsError):
    """Set M fails the symmetric admissibility conditions."""


class WindowViolation(NsatomsError):
    """A padding set P leaves its allowed open interval."""


class BadSymmetricP(NsatomsError):
    """P is not carried onto its complement by x -> g - x."""


class NoSmallAtom(NsatomsError):
    """Decomposition requires at least one small atom."""


class HasSmallAtom(NsatomsError):
    """Operation requires a set without small atoms."""


class EvenInput(NsatomsError):
    """Parity of the Frobenius number is wrong for this map."""


class WrongParity(NsatomsError):
    """Alias parity error for tree-growing maps (odd Frobenius required)."""


class MissingSequenceData(NsatomsError):
    """A sequence table lacks entries needed by the requested computation."""


class ParseError(NsatomsError):
    """Malformed textual encoding of a set or mask."""


class CorruptCache(NsatomsError):
    """Cache body failed checksum or cross-recursion validation."""


class VersionMismatch(NsatomsError):
    """Cache header does not announce a supported format version."""
