"""A short tour of the library on small examples.

    python demos/walkthrough.py
"""

from lcmlattice import (
    MonomialIdeal,
    betti_gpw,
    boolean_lattice,
    covering_primes,
    face_lattice,
    is_minimal_ideal,
    lattice_linear_characterization,
    lcm_lattice,
    minimal_ideal,
    nonminimal_ideal,
    polarize,
    scarf_supports,
    SimplicialComplex,
)
from lcmlattice.checks import bound_checks


def section(title):
    print(f"\n== {title}")


I = MonomialIdeal.parse("bd,cd,ac", compact=True)

section("lcm-lattice")
X = lcm_lattice(I)
lat = X.lattice
for i in range(lat.n):
    mark = " (meet-irreducible)" if i in lat.meet_irreducible_indices else ""
    print(f"  {X.label(i)}{mark}")

section("minimal ideal of the same lattice")
bare = lat.with_labels(None)
M = minimal_ideal(bare)
print(" ", M)
print("  I is minimal itself:", bool(is_minimal_ideal(I)))

section("Betti numbers of S/I")
print(betti_gpw(I).staircase())

section("Scarf complex")
s = scarf_supports(I)
print("  supports the minimal resolution:", s.supports)

section("bounds")
rep = bound_checks(I)
for c in rep.tight:
    print(f"  tight: {c.id} ({c.lhs} = {c.rhs})")

section("primes")
print(" ", covering_primes(MonomialIdeal.parse("bde,cde,ace,acd", compact=True)).format(compact=True))

section("polarization")
pol, _ = polarize(MonomialIdeal.parse("x^2, x*y, y^2"))
print(" ", pol)

section("nonminimal ideal of the boolean lattice on three atoms")
print(" ", nonminimal_ideal(boolean_lattice(3)))

section("a path as a Scarf complex")
K = SimplicialComplex([1, 2, 3, 4], [[1, 2], [2, 3], [3, 4]])
MK = minimal_ideal(face_lattice(K))
print(" ", MK, "->", "supported" if scarf_supports(MK) else "not supported")
print("  linear resolution by the lattice criterion:",
      lattice_linear_characterization(face_lattice(K)).verdict)
