"""Monomials and monomial ideals over named variables.

Text formats: ``a^2*b*c`` (identifiers joined by ``*``, powers by ``^``)
or, in compact mode, single-letter juxtaposition ``aabc`` / ``a^2bc``.
Variable names may carry trailing primes (``e'``), which is how
polarization names its fresh variables.
"""

import re
from itertools import combinations

from . import config
from .errors import (
    EmptyGeneratorSet,
    MonomialSyntaxError,
    NegativeExponent,
    NotSquarefree,
    UnitIdeal,
    LatticeError,
)

_NAME = r"[A-Za-z_][A-Za-z0-9_]*'*"
_FACTOR = re.compile(rf"\s*({_NAME})\s*(?:\^\s*(-?\d+))?\s*$")
_COMPACT = re.compile(r"([A-Za-z]'*)(?:\^(-?\d+))?")
_IDENT = re.compile(rf"^{_NAME}$")


def natural_key(name):
    """Sort key treating digit runs numerically: x2 < x10."""
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


def is_variable_name(name):
    return bool(_IDENT.match(name))


class Monomial:
    """An immutable monomial, stored as sorted ``(variable, exponent)`` pairs."""

    __slots__ = ("_items", "_map", "_hash")

    def __init__(self, exponents=None):
        exps = dict(exponents or {})
        cap = config.current().max_degree
        for v, e in exps.items():
            if not isinstance(e, int) or isinstance(e, bool):
                raise TypeError(f"exponent of {v!r} must be an int")
            if e < 0:
                raise NegativeExponent(f"negative exponent {e} on {v!r}")
            if e > cap:
                raise LatticeError(f"exponent {e} on {v!r} exceeds the cap {cap}")
        items = tuple(sorted(((v, e) for v, e in exps.items() if e), key=lambda t: natural_key(t[0])))
        self._items = items
        self._map = dict(items)
        self._hash = hash(items)

    @classmethod
    def from_support(cls, variables):
        return cls({v: 1 for v in variables})

    @property
    def exponents(self):
        return dict(self._map)

    def exponent(self, v):
        return self._map.get(v, 0)

    def items(self):
        return self._items

    @property
    def support(self):
        return frozenset(self._map)

    @property
    def degree(self):
        return sum(self._map.values())

    def is_one(self):
        return not self._items

    def is_squarefree(self):
        return all(e == 1 for _, e in self._items)

    def divides(self, other):
        om = other._map
        return all(om.get(v, 0) >= e for v, e in self._items)

    def lcm(self, other):
        out = dict(self._map)
        for v, e in other._items:
            if e > out.get(v, 0):
                out[v] = e
        return Monomial(out)

    def gcd(self, other):
        om = other._map
        return Monomial({v: min(e, om[v]) for v, e in self._items if v in om})

    def __mul__(self, other):
        out = dict(self._map)
        for v, e in other._items:
            out[v] = out.get(v, 0) + e
        return Monomial(out)

    def __truediv__(self, other):
        if not other.divides(self):
            raise LatticeError(f"{other} does not divide {self}")
        out = dict(self._map)
        for v, e in other._items:
            out[v] -= e
        return Monomial(out)

    def substitute(self, sigma):
        """Apply a variable map; ``None``, ``1`` or ``"1"`` sends a variable to 1."""
        out = {}
        for v, e in self._items:
            w = sigma.get(v, v)
            if w is None or w == 1 or w == "1":
                continue
            out[w] = out.get(w, 0) + e
        return Monomial(out)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self._items == other._items

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (self.degree, self.sort_key()) < (other.degree, other.sort_key())

    def sort_key(self):
        return [(natural_key(v), -e) for v, e in self._items]

    def __str__(self):
        if not self._items:
            return "1"
        return "*".join(v if e == 1 else f"{v}^{e}" for v, e in self._items)

    def compact(self):
        """Juxtaposed form, e.g. ``a^2bc``; only sensible for short names."""
        if not self._items:
            return "1"
        return "".join(v if e == 1 else f"{v}^{e}" for v, e in self._items)

    def __repr__(self):
        return f"Monomial({str(self)!r})"


ONE = Monomial()


def parse_monomial(text, compact=False):
    """Parse one monomial; ``"1"`` is the empty monomial."""
    s = text.strip()
    if not s:
        raise MonomialSyntaxError("empty monomial")
    if s == "1":
        return ONE
    exps = {}
    if compact and "*" not in s:
        s2 = s.replace(" ", "")
        pos = 0
        while pos < len(s2):
            m = _COMPACT.match(s2, pos)
            if not m:
                raise MonomialSyntaxError(f"cannot parse {text!r} at position {pos}")
            _add(exps, m.group(1), m.group(2), text)
            pos = m.end()
        return Monomial(exps)
    for factor in s.split("*"):
        if factor.strip() == "1":
            continue
        m = _FACTOR.match(factor)
        if not m:
            raise MonomialSyntaxError(f"cannot parse factor {factor!r} in {text!r}")
        _add(exps, m.group(1), m.group(2), text)
    return Monomial(exps)


def _add(exps, name, power, text):
    e = 1 if power is None else int(power)
    if e < 0:
        raise NegativeExponent(f"negative exponent in {text!r}")
    exps[name] = exps.get(name, 0) + e


def split_monomials(text):
    """Split ideal text on commas/newlines, dropping surrounding parentheses."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    parts = re.split(r"[,\n;]", s)
    return [p.strip() for p in parts if p.strip() and not p.strip().startswith("#")]


class MonomialIdeal:
    """A proper nonzero monomial ideal, always stored minimally generated.

    ``generators`` keeps first-occurrence order after discarding
    generators divisible by others; ``variables`` is the ambient variable
    list (default: the union of supports, naturally sorted).
    """

    def __init__(self, generators, variables=None):
        gens = []
        seen = set()
        for g in generators:
            if not isinstance(g, Monomial):
                raise TypeError("generators must be Monomial instances")
            if g not in seen:
                seen.add(g)
                gens.append(g)
        if not gens:
            raise EmptyGeneratorSet("the zero ideal is not supported")
        if any(g.is_one() for g in gens):
            raise UnitIdeal("the unit ideal is not supported")
        minimal = [
            g for g in gens if not any(h is not g and h.divides(g) for h in gens)
        ]
        self.generators = tuple(minimal)
        support = set()
        for g in self.generators:
            support |= g.support
        if variables is None:
            self.variables = tuple(sorted(support, key=natural_key))
        else:
            variables = tuple(variables)
            if len(set(variables)) != len(variables):
                raise LatticeError("duplicate variable names")
            missing = support - set(variables)
            if missing:
                raise LatticeError(f"generators use undeclared variables {sorted(missing)}")
            self.variables = variables

    @classmethod
    def parse(cls, text, compact=False, variables=None):
        return cls([parse_monomial(t, compact) for t in split_monomials(text)], variables)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    @property
    def used_variables(self):
        """Variables dividing some generator, in ambient order."""
        used = set()
        for g in self.generators:
            used |= g.support
        return tuple(v for v in self.variables if v in used)

    def is_squarefree(self):
        return all(g.is_squarefree() for g in self.generators)

    def require_squarefree(self):
        if not self.is_squarefree():
            raise NotSquarefree(f"{self} is not squarefree")

    def contains(self, m):
        return any(g.divides(m) for g in self.generators)

    def gcd(self):
        g = self.generators[0]
        for h in self.generators[1:]:
            g = g.gcd(h)
        return g

    def lcm(self):
        g = self.generators[0]
        for h in self.generators[1:]:
            g = g.lcm(h)
        return g

    def degrees(self):
        return sorted({g.degree for g in self.generators})

    def is_uniformly_generated(self):
        return len(self.degrees()) == 1

    def divide_by(self, m):
        return MonomialIdeal([g / m for g in self.generators], self.variables)

    def rename(self, mapping):
        """Injective renaming of variables (unmapped names are kept)."""
        new_vars = [mapping.get(v, v) for v in self.variables]
        if len(set(new_vars)) != len(new_vars):
            raise LatticeError("renaming is not injective")
        gens = [Monomial({mapping.get(v, v): e for v, e in g.items()}) for g in self.generators]
        return MonomialIdeal(gens, new_vars)

    def generator_set(self):
        return frozenset(self.generators)

    def same_generators(self, other):
        return self.generator_set() == other.generator_set()

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.generator_set() == other.generator_set()

    def __hash__(self):
        return hash(self.generator_set())

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def compact(self):
        return "(" + ",".join(g.compact() for g in self.generators) + ")"

    def __repr__(self):
        return f"MonomialIdeal({str(self)!r})"


def monomial_arith(m1, m2):
    """lcm, gcd, divisibility, degrees and supports of a pair."""
    return {
        "lcm": m1.lcm(m2),
        "gcd": m1.gcd(m2),
        "divides": m1.divides(m2),
        "degrees": (m1.degree, m2.degree),
        "supports": (m1.support, m2.support),
    }


def minimalize_generators(gens, variables=None):
    return MonomialIdeal(list(gens), variables)


def _fresh(base, taken):
    k = 1
    while base + "'" * k in taken:
        k += 1
    return base + "'" * k


def polarize(ideal, names=None):
    """Iterated simple polarization.

    Variables are handled in ambient order. For each, the highest power
    ``y^e`` present is replaced by ``y^(e-1) * y'`` in every generator it
    divides, repeating with a fresh name until every exponent of ``y`` is
    at most one. Returns ``(squarefree ideal, var_map)`` with
    ``var_map[new] = (old, e)``, ``e`` being the power that was split.
    ``names`` optionally renames the fresh variables afterwards.
    """
    gens = [dict(g.exponents) for g in ideal.generators]
    variables = list(ideal.variables)
    taken = set(variables)
    var_map = {}
    for v in ideal.variables:
        while True:
            e = max(g.get(v, 0) for g in gens)
            if e <= 1:
                break
            new = _fresh(v, taken)
            taken.add(new)
            variables.append(new)
            var_map[new] = (v, e)
            for g in gens:
                if g.get(v, 0) >= e:
                    g[v] = e - 1
                    g[new] = 1
    pol = MonomialIdeal([Monomial(g) for g in gens], variables)
    if names:
        pol = pol.rename(names)
        var_map = {names.get(k, k): val for k, val in var_map.items()}
    return pol, var_map


def depolarization_map(var_map):
    """Substitution sending each polarization variable back to its source."""
    return {new: old for new, (old, _) in var_map.items()}


def substitute_variables(ideal, sigma, variables=None):
    """Identify / erase variables and minimalize.

    ``sigma`` maps variable -> variable (or ``None`` for 1); variables not
    mentioned are fixed.
    """
    gens = [g.substitute(sigma) for g in ideal.generators]
    if variables is None:
        out = []
        for v in ideal.variables:
            w = sigma.get(v, v)
            if w is None or w == "1" or w in out:
                continue
            out.append(w)
        variables = out
    return MonomialIdeal(gens, variables)


def squarefree_monomials(variables):
    """All squarefree monomials in ``variables`` (including 1)."""
    for k in range(len(variables) + 1):
        for combo in combinations(variables, k):
            yield Monomial.from_support(combo)
