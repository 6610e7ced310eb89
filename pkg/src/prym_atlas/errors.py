"""Exception types shared across the package."""


class PrymAtlasError(Exception):
    """Base class for package-specific failures."""


class MembershipError(PrymAtlasError, ValueError):
    """An element was used outside the group it must belong to."""


class TrivialSubgroupError(PrymAtlasError, ValueError):
    """H = {0} requested without the explicit opt-in flag."""


class ReducibleMatrixError(PrymAtlasError, ValueError):
    """An operation that needs an irreducible matrix got a reducible one."""


class ConsistencyError(PrymAtlasError, RuntimeError):
    """An internal identity failed; signals a bug or an invalid datum."""


class CapExceededError(PrymAtlasError, RuntimeError):
    """A resource cap (group size, enumeration count, term count) was hit."""


class DomainError(PrymAtlasError, ValueError):
    """Bad mathematical input: wrong prime class, repeated coordinates, ..."""


class IncomparableSectionsError(PrymAtlasError, TypeError):
    """Two section products live in different character spaces."""
