"""Exception hierarchy.

Every domain failure raised by the library derives from :class:`LatticeError`,
so callers (and the command line front end) can separate domain errors from
programming errors with a single ``except``.
"""


class LatticeError(Exception):
    """Base class for all domain errors."""


class ResourceLimit(LatticeError):
    """A configured size cap would be exceeded."""


# posets and lattices

class CycleDetected(LatticeError):
    pass


class UnknownId(LatticeError):
    pass


class DuplicateId(LatticeError):
    pass


class NotAPoset(LatticeError):
    pass


class NotALattice(LatticeError):
    """Raised with the offending pair of element ids in ``witness``."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotComparable(LatticeError):
    pass


class NotAtomic(LatticeError):
    pass


class TrivialLattice(LatticeError):
    pass


class LabelMismatch(LatticeError):
    pass


# monomials

class MonomialSyntaxError(LatticeError, ValueError):
    pass


class NegativeExponent(LatticeError, ValueError):
    pass


class EmptyGeneratorSet(LatticeError):
    pass


class UnitIdeal(LatticeError):
    pass


class NotSquarefree(LatticeError):
    pass


class NotALatticeElement(LatticeError):
    pass


# constructions

class TooManyAtoms(ResourceLimit):
    pass


class NotAChain(LatticeError):
    def __init__(self, message, block=None):
        super().__init__(message)
        self.block = block


class NotAPartition(LatticeError):
    pass


class EmptyA(LatticeError):
    """A meet-irreducible with no matching variable filter; indicates a bug."""


# simplicial complexes

class UnknownVertex(LatticeError):
    pass


class FullSimplex(LatticeError):
    pass


class DegenerateComplex(LatticeError):
    pass


class NotAFace(LatticeError):
    pass


# resolutions

class NoLinearResolution(LatticeError):
    pass
