import pytest
from hypothesis import given, settings, strategies as st

from lcmlattice.errors import EmptyGeneratorSet, MonomialSyntaxError, NegativeExponent, UnitIdeal
from lcmlattice.monomial import (
    Monomial,
    MonomialIdeal,
    depolarization_map,
    parse_monomial,
    polarize,
    substitute_variables,
)

from conftest import ideal

FIG2 = "c*d*e^2, b*d*e^2, a*e^2, a^2*b*c*e, a^2*b*c*d"
FIG2_POLARIZED = "cdef,bdef,aef,abceg,abcdg"


def test_parse():
    assert parse_monomial("b*d").exponents == {"b": 1, "d": 1}
    assert parse_monomial("c*d*e^2").exponents == {"c": 1, "d": 1, "e": 2}
    assert parse_monomial("bd", compact=True) == parse_monomial("b*d")
    assert parse_monomial("a^2b", compact=True) == parse_monomial("a^2*b")
    assert parse_monomial("1").is_one()


@pytest.mark.parametrize("bad", ["b**d", "x^", "^2", "x^-1", "3x"])
def test_parse_errors(bad):
    with pytest.raises((MonomialSyntaxError, NegativeExponent)):
        parse_monomial(bad)


def test_arithmetic():
    bd, cd = parse_monomial("b*d"), parse_monomial("c*d")
    assert bd.lcm(cd) == parse_monomial("b*c*d")
    assert parse_monomial("a*b").gcd(parse_monomial("c*d")).is_one()
    assert parse_monomial("a").divides(parse_monomial("a^2*b*c*e"))
    assert not parse_monomial("a^3").divides(parse_monomial("a^2*b"))


def test_canonical_text():
    m = parse_monomial("e^2*c * d")
    assert str(m) == "c*d*e^2"
    assert m.compact() == "cde^2"
    assert str(parse_monomial("x10*x2")) == "x2*x10"


def test_minimal_generators():
    assert ideal("bd,cd,ac,abcd").same_generators(ideal("bd,cd,ac"))
    assert MonomialIdeal.parse("x, x^2").same_generators(MonomialIdeal.parse("x"))
    fig4 = ideal("bde,cde,ace,acd")
    assert len(fig4) == 4 and [g.compact() for g in fig4.generators] == ["bde", "cde", "ace", "acd"]


def test_ideal_errors():
    with pytest.raises(EmptyGeneratorSet):
        MonomialIdeal([])
    with pytest.raises(UnitIdeal):
        MonomialIdeal.parse("1, x")


def test_ideal_text_formats():
    a = MonomialIdeal.parse("b*d\nc*d\n# comment\na*c")
    assert a == ideal("bd,cd,ac")
    assert a.compact() == "(bd,cd,ac)"


def test_polarize_golden():
    pol, vm = polarize(MonomialIdeal.parse(FIG2), names={"e'": "f", "a'": "g"})
    assert pol == ideal(FIG2_POLARIZED)
    assert vm == {"f": ("e", 2), "g": ("a", 2)}


def test_depolarize_golden():
    pol = ideal(FIG2_POLARIZED)
    back = substitute_variables(pol, {"f": "e", "g": "a"})
    assert back == MonomialIdeal.parse(FIG2)
    assert substitute_variables(pol, {}) == pol


def test_polarize_trivial():
    sq = ideal("ab,bc")
    pol, vm = polarize(sq)
    assert pol == sq and vm == {}
    pol, vm = polarize(MonomialIdeal.parse("x^3"))
    assert len(pol) == 1 and pol.generators[0].degree == 3 and pol.is_squarefree()
    assert len(vm) == 2


def test_substitute_to_one():
    assert substitute_variables(ideal("xy,yz"), {"y": 1}) == ideal("x,z")


# properties

VARS = "abcd"
monomials = st.dictionaries(st.sampled_from(VARS), st.integers(1, 3), min_size=1).map(Monomial)


@given(st.lists(monomials, min_size=1, max_size=5))
@settings(max_examples=200, deadline=None)
def test_polarization_roundtrip(gens):
    I = MonomialIdeal(gens)
    pol, vm = polarize(I)
    assert pol.is_squarefree()
    assert len(pol) == len(I)
    assert substitute_variables(pol, depolarization_map(vm)) == I
    assert [g.degree for g in pol.generators] == [g.degree for g in I.generators]


@given(monomials, monomials, monomials)
def test_lcm_gcd_laws(a, b, c):
    assert a.lcm(b) == b.lcm(a)
    assert a.lcm(b).lcm(c) == a.lcm(b.lcm(c))
    assert a.divides(a.lcm(b)) and a.gcd(b).divides(a)
    assert a.lcm(b).degree + a.gcd(b).degree == a.degree + b.degree
    assert parse_monomial(str(a)) == a


@given(st.lists(monomials, min_size=1, max_size=6))
def test_generators_pairwise_nondividing(gens):
    I = MonomialIdeal(gens)
    for g in I.generators:
        assert sum(h.divides(g) for h in I.generators) == 1
    # every input is a multiple of some minimal generator
    for g in gens:
        assert I.contains(g)
