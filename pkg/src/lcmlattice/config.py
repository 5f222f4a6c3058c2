"""Size caps shared by the whole library.

The caps turn runaway inputs into a :class:`~lcmlattice.errors.ResourceLimit`
instead of an apparently hung process. They are plain module attributes;
tests and the command line adjust them with :func:`limits`.
"""

from contextlib import contextmanager
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Limits:
    max_elements: int = 4096      # lattice / poset size
    max_degree: int = 10**6       # any single exponent
    max_faces: int = 200_000      # faces of a complex fed to homology
    max_atoms_specialize: int = 12
    max_taylor_generators: int = 20
    max_quotient_generators: int = 12
    max_iso_nodes: int = 200_000
    max_filters: int = 4096


LIMITS = Limits()


def current():
    return LIMITS


@contextmanager
def limits(**overrides):
    """Temporarily override caps: ``with limits(max_elements=64): ...``"""
    global LIMITS
    saved = LIMITS
    LIMITS = replace(LIMITS, **overrides)
    try:
        yield LIMITS
    finally:
        LIMITS = saved
