"""Per-ideal report of the inequalities and implications tied to lcm-lattices.

Every clause ends up as ``pass``, ``fail`` or ``skipped`` (with the reason,
typically an unmet hypothesis such as "no linear resolution"). A ``fail``
means a proven implication failed, so there is a bug somewhere in this package.
Clauses that need a squarefree ideal are evaluated on the polarization,
which has an isomorphic lcm-lattice and the same graded Betti numbers.
"""

from dataclasses import dataclass, field

from . import config
from .construct import (
    essential_pairs_and_filters,
    is_minimal_ideal,
    lcm_lattice,
    minimal_ideal,
    minimal_labels,
)
from .distributive import covering_primes
from .errors import LatticeError, ResourceLimit, TrivialLattice
from .fields import QQ
from .monomial import MonomialIdeal, polarize
from .poset import chain_stats, meet_irreducibles, open_interval
from .resolutions import (
    betti_gpw,
    betti_hochster_oracle,
    first_syzygy_ideal,
    has_linear_resolution,
    is_matroidal,
    lattice_linear_characterization,
    linear_quotients,
    restriction_ideal,
    restriction_matches_interval,
)
from .simplicial import alexander_dual, alexander_dual_ideal, is_cohen_macaulay, reduced_homology, sr_complex


PASS, FAIL, SKIP = "pass", "fail", "skipped"
HOCHSTER_MAX_VARIABLES = 12


@dataclass
class Clause:
    id: str
    status: str
    lhs: object = None
    rhs: object = None
    detail: str = ""
    tight: bool = False

    def to_json(self):
        return {"id": self.id, "status": self.status, "lhs": _plain(self.lhs),
                "rhs": _plain(self.rhs), "detail": self.detail, "tight": self.tight}


def _plain(v):
    if v is None or isinstance(v, (bool, int, float, str)):
        return v
    return str(v)


@dataclass
class BoundReport:
    ideal: MonomialIdeal
    clauses: list = field(default_factory=list)

    def add(self, cid, ok, lhs=None, rhs=None, detail="", tight=False):
        self.clauses.append(Clause(cid, PASS if ok else FAIL, lhs, rhs, detail, tight))

    def skip(self, cid, reason):
        self.clauses.append(Clause(cid, SKIP, detail=reason))

    def __getitem__(self, cid):
        for c in self.clauses:
            if c.id == cid:
                return c
        raise KeyError(cid)

    @property
    def violations(self):
        return [c for c in self.clauses if c.status == FAIL]

    @property
    def tight(self):
        return [c for c in self.clauses if c.tight and c.status == PASS]

    def to_json(self):
        return {"ideal": str(self.ideal), "clauses": [c.to_json() for c in self.clauses]}

    def format(self):
        lines = [f"ideal {self.ideal}"]
        for c in self.clauses:
            extra = ""
            if c.status != SKIP:
                extra = f"  lhs={_plain(c.lhs)} rhs={_plain(c.rhs)}"
                if c.tight:
                    extra += " (tight)"
            if c.detail:
                extra += f"  [{c.detail}]"
            lines.append(f"  {c.status:7} {c.id}{extra}")
        return "\n".join(lines)


def codim(ideal):
    """Height of a squarefree ideal: smallest associated prime."""
    return min(len(p) for p in covering_primes(ideal, enumerate_all=False, verify=False).associated)


def is_unmixed(ideal):
    sizes = {len(p) for p in covering_primes(ideal, enumerate_all=False, verify=False).associated}
    return len(sizes) == 1


def _restrict_to_used(ideal):
    return MonomialIdeal(ideal.generators, ideal.used_variables)


def bound_checks(ideal, field=QQ):
    """Evaluate every clause for ``ideal``; see the module docstring."""
    rep = BoundReport(ideal)
    pol, _ = polarize(ideal)
    X = lcm_lattice(ideal)
    lat = X.lattice
    table = betti_gpw(ideal, field, lcm=X)
    pd = table.pd
    reg = table.reg
    stats = chain_stats(meet_irreducibles(lat))
    width, height = stats.width, lat.height
    n_mi = len(lat.meet_irreducible_indices)

    bound = min(width, height)
    single = len(ideal) == 1
    trivial = "single generator: the lattice has no meet-irreducibles"
    if single:
        rep.skip("pd_bound_width_height", trivial)
    else:
        rep.add("pd_bound_width_height", pd <= bound, pd, bound,
                f"width {width}, height {height}", tight=pd == bound)

    # Alexander dual of the (polarized) ideal. Its lcm-lattice is often far
    # larger than the ideal's own, so its table comes from Hochster's formula
    # on few variables; pd on one side and reg on the other then use
    # independent routes.
    try:
        dual = alexander_dual_ideal(pol)
        if len(dual.variables) <= HOCHSTER_MAX_VARIABLES:
            dual_table = betti_hochster_oracle(dual, field)
        else:
            dual_table = betti_gpw(dual, field)
    except ResourceLimit as exc:
        dual_table = None
        rep.skip("terai_duality", f"dual ideal too large: {exc}")
        rep.skip("reg_dual_bound", f"dual ideal too large: {exc}")
    if dual_table is not None:
        reg_dual = dual_table.reg
        rep.add("terai_duality", pd == reg_dual, pd, reg_dual)
        if single:
            rep.skip("reg_dual_bound", trivial)
        else:
            rep.add("reg_dual_bound", reg_dual <= bound, reg_dual, bound, tight=reg_dual == bound)

    K = sr_complex(pol)
    h = reduced_homology(K, field)
    n_vars = len(pol.variables)
    limit = n_vars - n_mi - 1
    low = [j for j, v in sorted(h.dims.items()) if v]
    lowest = low[0] if low else None
    if single:
        rep.skip("sr_homology_vanishing", trivial)
    else:
        rep.add("sr_homology_vanishing", all(j >= limit for j in low), lowest, limit,
                "lowest nonzero reduced homology degree vs bound",
                tight=lowest is not None and lowest == limit)

    # comparisons with the minimal ideal of the same lattice
    try:
        M = minimal_ideal(lat)
    except TrivialLattice:
        rep.skip("codim_le_minimal", "single generator: minimal ideal is the unit ideal")
        for cid in ("unmixed_inherited", "cm_iff_minimal_cm", "linear_quotients_inherited",
                    "matroidal_inherited", "reg_minimal_le_reg", "linear_inherited"):
            rep.skip(cid, "single generator")
        M = None
    if M is not None:
        M_table = betti_gpw(M, field)
        c_i, c_m = codim(pol), codim(M)
        rep.add("codim_le_minimal", c_i <= c_m, c_i, c_m, tight=c_i == c_m)
        if is_unmixed(pol):
            rep.add("unmixed_inherited", is_unmixed(M), True, is_unmixed(M))
        else:
            rep.skip("unmixed_inherited", "ideal is not unmixed")
        cm_i = is_cohen_macaulay(K, field).is_cm
        cm_m = is_cohen_macaulay(sr_complex(M), field).is_cm
        rhs = c_i == c_m and cm_m
        rep.add("cm_iff_minimal_cm", cm_i == rhs, cm_i, rhs)
        if len(pol) <= config.current().max_quotient_generators:
            if linear_quotients(pol):
                lq = bool(linear_quotients(M))
                rep.add("linear_quotients_inherited", lq, True, lq)
            else:
                rep.skip("linear_quotients_inherited", "ideal has no linear quotients")
        else:
            rep.skip("linear_quotients_inherited", "too many generators for the ordering search")
        if is_matroidal(pol):
            mat = bool(is_matroidal(M))
            rep.add("matroidal_inherited", mat, True, mat)
        else:
            rep.skip("matroidal_inherited", "ideal is not matroidal")
        rep.add("reg_minimal_le_reg", M_table.reg <= reg, M_table.reg, reg, tight=M_table.reg == reg)

    linear = has_linear_resolution(ideal, field, table)
    lin_clauses = ("linear_inherited", "graded_lattice", "cover_degree_jump", "betti_rank",
                   "interval_length_link_dim", "minimal_uniform", "minimal_cover_jump",
                   "first_syzygy_linear", "restriction_linear", "linear_structure")
    if not linear:
        for cid in lin_clauses:
            if M is None and cid == "linear_inherited":
                continue
            rep.skip(cid, "no linear resolution")
    else:
        _linear_clauses(rep, ideal, pol, X, table, M, field)

    # restriction to a lattice element always reproduces the lower interval
    ok = all(restriction_matches_interval(ideal, X.label(b)) for b in range(lat.n) if b != lat.bottom)
    rep.add("restriction_interval", ok, ok, True)

    if M is not None:
        char = lattice_linear_characterization(lat, field)
        lin_m = has_linear_resolution(M, field)
        rep.add("linear_characterization", char.verdict == lin_m, char.verdict, lin_m,
                ",".join(char.failed))
    else:
        rep.skip("linear_characterization", "single generator")
    return rep


def _linear_clauses(rep, ideal, pol, X, table, M, field):
    lat = X.lattice
    p = lat.poset
    if M is not None:
        rep.add("linear_inherited", has_linear_resolution(M, field), True,
                has_linear_resolution(M, field))
    rep.add("graded_lattice", lat.is_graded, True, lat.is_graded)

    bad = [(p.ids[a], p.ids[b]) for a, b in p.covers
           if a != lat.bottom and X.label(b).degree != X.label(a).degree + 1]
    rep.add("cover_degree_jump", not bad, len(bad), 0, f"first offender {bad[0]}" if bad else "")

    index_of = {m: i for i, m in X.labels.items()}
    bad = [(i, str(b)) for (i, b) in table.entries if lat.rank(index_of[b]) != i]
    rep.add("betti_rank", not bad, len(bad), 0, f"first offender {bad[0]}" if bad else "")

    # interval lengths against links in the dual of SR, on the polarization
    Ipol = _restrict_to_used(pol)
    Xp = lcm_lattice(Ipol)
    Kd = alexander_dual(sr_complex(Ipol))
    vs = Ipol.variables
    bad = []
    for b in range(Xp.lattice.n):
        if b == Xp.lattice.bottom:
            continue
        inner = open_interval(Xp.lattice.poset, Xp.lattice.bottom, b)
        length = inner.height
        F = [v for v in vs if not Xp.label(b).exponent(v)]
        lk = Kd.link(F)
        dim = lk.dim if lk.dim is not None else None
        if length != dim:
            bad.append((str(Xp.label(b)), length, dim))
    rep.add("interval_length_link_dim", not bad, len(bad), 0, f"first offender {bad[0]}" if bad else "")

    if M is not None:
        rep.add("minimal_uniform", M.is_uniformly_generated(), True, M.is_uniformly_generated())
        labels, _ = minimal_labels(lat)
        bad = [(p.ids[a], p.ids[b]) for a, b in p.covers
               if a != lat.bottom and labels[b].degree != labels[a].degree + 1]
        rep.add("minimal_cover_jump", not bad, len(bad), 0, f"first offender {bad[0]}" if bad else "")
    else:
        rep.skip("minimal_uniform", "single generator")
        rep.skip("minimal_cover_jump", "single generator")

    I1 = first_syzygy_ideal(ideal, field, table)
    if I1 is None:
        rep.skip("first_syzygy_linear", "no first syzygies")
    else:
        ok = has_linear_resolution(I1, field)
        rep.add("first_syzygy_linear", ok, True, ok, f"I1 = {I1}")

    bad = []
    for b in range(lat.n):
        if b == lat.bottom:
            continue
        sub = restriction_ideal(ideal, X.label(b))
        if not has_linear_resolution(sub, field):
            bad.append(str(X.label(b)))
    rep.add("restriction_linear", not bad, len(bad), 0, f"first offender {bad[0]}" if bad else "")

    if M is None:
        rep.skip("linear_structure", "single generator")
        return
    Iu = _restrict_to_used(pol)
    g = Iu.gcd()
    q = Iu.divide_by(g) if not g.is_one() else Iu
    q = MonomialIdeal(q.generators, q.used_variables)
    try:
        res = is_minimal_ideal(q)
        rep.add("linear_structure", res.is_minimal, True, res.is_minimal,
                f"gcd {g}" + ("" if res.is_minimal else f"; {res.reason}"))
    except ResourceLimit as exc:
        rep.skip("linear_structure", str(exc))


def embedding_checks(ideal):
    """Clauses about the embedding of the minimal ideal into a squarefree ideal."""
    from .construct import minimal_embedding

    rep = BoundReport(ideal)
    pol, _ = polarize(ideal)
    X = lcm_lattice(pol)
    lat = X.lattice
    n_used = len(pol.used_variables)
    n_mi = len(lat.meet_irreducible_indices)
    rep.add("variables_ge_mi", n_used >= n_mi, n_used, n_mi, tight=n_used == n_mi)
    if len(pol) == 1:
        rep.skip("filter_construction", "single generator: the lattice has no meet-irreducibles")
        return rep
    try:
        data = essential_pairs_and_filters(X)
        for k, v in data.checks.items():
            rep.add("filter_" + k, v, v, True)
        emb = minimal_embedding(pol)
        rep.add("embedding_containment", emb.containment_check, emb.containment_check, True)
        rep.add("embedding_image", emb.image_check, emb.image_check, True)
        if n_used == n_mi:
            iso = len(set(emb.phi.values())) == n_mi
            rep.add("embedding_isomorphism", iso, iso, True)
        else:
            rep.skip("embedding_isomorphism", "more variables than meet-irreducibles")
    except LatticeError as exc:
        rep.add("filter_construction", False, detail=str(exc))
    return rep
