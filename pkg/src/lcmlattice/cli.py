"""Command line front end: ``lcmlattice <subcommand> [flags]``.

Exit status is 0 on success, 1 when the library rejects the input
(a domain error, message printed verbatim) and 2 on usage errors.
"""

import argparse
import json
import sys

from . import config, io
from ._bits import bits
from .construct import (
    depolarize_by_chains,
    is_minimal_ideal,
    lcm_lattice,
    minimal_ideal,
    nonminimal_ideal,
    parse_chain_spec,
)
from .distributive import covering_primes, filter_lattice_j, mask_label, phi_xc_embedding, series_parallel_check
from .errors import LatticeError
from .fields import FieldSpec
from .poset import chain_stats, meet_irreducibles
from .resolutions import betti_gpw, scarf_supports, taylor_scarf
from .simplicial import alexander_dual, alexander_dual_ideal, is_cohen_macaulay, reduced_homology, sr_complex

DEFAULT_SEED = 0


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p, ideal=False, lattice=False, complex_=False, field=False):
    if ideal:
        p.add_argument("--ideal", help="generators, comma- or newline-separated")
        p.add_argument("--ideal-file", help="file with one generator per line")
        p.add_argument("--compact", action="store_true", help="single-letter variables written side by side")
    if lattice:
        p.add_argument("--lattice", help="lattice JSON file")
        p.add_argument("--id-names", action="store_true",
                       help="use element ids as variable names instead of x_<id>")
    if complex_:
        p.add_argument("--complex", help="simplicial complex JSON file")
    if field:
        p.add_argument("--field", default="q", help="q, f2 or f<p> (default q)")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--dot", help="also write a DOT Hasse diagram to this path")
    p.add_argument("--max-elements", type=int, help="cap on lattice size")


def build_parser():
    parser = _Parser(prog="lcmlattice", description="lcm-lattices, minimal ideals and their resolutions")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    _common(sub.add_parser("lcm", help="lcm-lattice of an ideal"), ideal=True)
    _common(sub.add_parser("minimal", help="minimal ideal M(L) of an atomic lattice"), lattice=True, ideal=True)
    _common(sub.add_parser("nlattice", help="ideal N(L) over the whole proper part"), lattice=True, ideal=True)
    _common(sub.add_parser("betti", help="multigraded Betti numbers via lattice intervals"),
            ideal=True, lattice=True, field=True)
    _common(sub.add_parser("scarf", help="Scarf complex and whether it supports the resolution"),
            ideal=True, field=True)
    _common(sub.add_parser("primes", help="associated primes of a squarefree ideal"), ideal=True)
    _common(sub.add_parser("dual", help="Alexander dual of an ideal or a complex"), ideal=True, complex_=True)
    _common(sub.add_parser("cm", help="Cohen-Macaulay test by Reisner's criterion"),
            ideal=True, complex_=True, field=True)
    p = sub.add_parser("depolarize", help="identify variables of M(L) along chains of meet-irreducibles")
    _common(p, lattice=True, ideal=True)
    p.add_argument("--chains", help="chain partition like 'a<b<c; d'; default: a minimum one")
    _common(sub.add_parser("distributive", help="distributive completion of the meet-irreducibles"),
            lattice=True, ideal=True)
    _common(sub.add_parser("check-minimal", help="is a squarefree ideal the minimal ideal of its lattice?"),
            ideal=True)
    p = sub.add_parser("verify", help="run the structural check suite")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--max-atoms", type=int, default=4)
    p.add_argument("--ideals", type=int, default=200, help="random squarefree ideals")
    p.add_argument("--complex-vertices", type=int, default=4)
    p.add_argument("--field", default="q")
    p.add_argument("--json", action="store_true")
    p.add_argument("--max-elements", type=int)
    p = sub.add_parser("dot", help="DOT Hasse diagram of a lattice")
    _common(p, lattice=True, ideal=True)
    p.add_argument("--name", default="L")
    return parser


# input helpers


def _ideal(args, required=True):
    text = getattr(args, "ideal", None)
    path = getattr(args, "ideal_file", None)
    if text is not None and path is not None:
        raise UsageError("give only one of --ideal and --ideal-file")
    if text is not None:
        return io.read_ideal(text, args.compact)
    if path is not None:
        return io.read_ideal_file(path, args.compact)
    if required:
        raise UsageError("an ideal is required (--ideal or --ideal-file)")
    return None


def _lattice(args):
    """The ``--lattice`` file, or the lcm-lattice of the given ideal."""
    if getattr(args, "lattice", None):
        return io.lattice_from_json(args.lattice, getattr(args, "compact", False))
    ideal = _ideal(args, required=False)
    if ideal is None:
        raise UsageError("a lattice is required (--lattice, or --ideal for its lcm-lattice)")
    return lcm_lattice(ideal).lattice


def _complex(args):
    if getattr(args, "complex", None):
        if getattr(args, "ideal", None) or getattr(args, "ideal_file", None):
            raise UsageError("give either a complex or an ideal")
        return io.complex_from_json(args.complex)
    return None


def _field(args):
    return FieldSpec.parse(args.field)


def _write_dot(args, obj):
    if getattr(args, "dot", None):
        with open(args.dot, "w") as fh:
            fh.write(io.export_dot(obj))


def _ideal_out(ideal, compact):
    return ideal.compact() if compact and _single_letters(ideal) else str(ideal)


def _single_letters(ideal):
    return all(len(v) == 1 for v in ideal.used_variables)


# subcommands


def cmd_lcm(args, out):
    X = lcm_lattice(_ideal(args))
    lat = X.lattice
    _write_dot(args, lat)
    if args.json:
        return io.dumps(io.lattice_to_json(lat))
    mi = set(lat.meet_irreducible_indices)
    lines = [f"{lat.n} elements, {len(lat.atoms)} atoms, {len(mi)} meet-irreducible"]
    for i, e in enumerate(lat.ids):
        tag = "  mi" if i in mi else ""
        ups = ", ".join(lat.ids[j] for j in bits(lat.poset.upper_covers(i)))
        lines.append(f"  {e}{tag}  < {ups}" if ups else f"  {e}{tag}")
    return "\n".join(lines)


def _ideal_report(ideal, args):
    if args.json:
        return io.dumps({"generators": [str(g) for g in ideal.generators], "variables": list(ideal.used_variables)})
    return _ideal_out(ideal, False)


def _names(args):
    return "ids" if getattr(args, "id_names", False) else None


def cmd_minimal(args, out):
    lat = _lattice(args)
    _write_dot(args, lat)
    return _ideal_report(minimal_ideal(lat, _names(args)), args)


def cmd_nlattice(args, out):
    lat = _lattice(args)
    return _ideal_report(nonminimal_ideal(lat, _names(args)), args)


def cmd_betti(args, out):
    fld = _field(args)
    if getattr(args, "lattice", None):
        ideal = minimal_ideal(_lattice(args), _names(args))
    else:
        ideal = _ideal(args)
    table = betti_gpw(ideal, fld)
    if args.json:
        return table.dumps()
    lines = [f"Betti numbers of S/I over {fld}, I = {_ideal_out(ideal, args.compact)}", "",
             table.staircase(), "", "ideal-indexed (beta_i of I):", table.staircase(ideal_indexed=True), "",
             "multigraded:"]
    for (i, b), v in table.sorted_entries():
        lines.append(f"  beta_{i},{_mono(b, args.compact)} = {v}")
    lines.append(f"pd = {table.pd}, reg = {table.reg}")
    return "\n".join(lines)


def _mono(m, compact):
    return m.compact() if compact and all(len(v) == 1 for v in m.support) else str(m)


def cmd_scarf(args, out):
    ideal = _ideal(args)
    fld = _field(args)
    ts = taylor_scarf(ideal)
    sup = scarf_supports(ideal, fld)
    if args.json:
        return io.dumps({
            "facets": [list(f) for f in ts.scarf.sorted_facets()],
            "supports_minimal_resolution": sup.supports,
            "interval_criterion": sup.interval_criterion,
            "diagnosis": {str(k): v for k, v in sorted(sup.diagnosis.items(), key=lambda kv: kv[0].sort_key())},
            "missing": [str(m) for m in sup.missing],
        })
    lines = ["vertices: " + ", ".join(f"{i}={_mono(g, args.compact)}" for i, g in
                                      zip(ts.scarf.vertices, ideal.generators))]
    lines.append("Scarf facets: " + " ".join("{" + ",".join(map(str, f)) + "}" for f in ts.scarf.sorted_facets()))
    lines.append(f"supports the minimal resolution: {'yes' if sup.supports else 'no'}")
    for b, why in sorted(sup.diagnosis.items(), key=lambda kv: kv[0].sort_key()):
        lines.append(f"  {_mono(b, args.compact)}: {why}")
    if sup.missing:
        lines.append("Betti degrees without a Scarf face: " + ", ".join(_mono(m, args.compact) for m in sup.missing))
    return "\n".join(lines)


def cmd_primes(args, out):
    ideal = _ideal(args)
    data = covering_primes(ideal)
    if args.json:
        return io.dumps({"associated": [sorted(p) for p in data.associated]})
    return data.format(compact=args.compact)


def cmd_dual(args, out):
    K = _complex(args)
    if K is not None:
        D = alexander_dual(K)
        return io.dumps(io.complex_to_json(D)) if args.json else _complex_text(D)
    return _ideal_report(alexander_dual_ideal(_ideal(args)), args)


def _complex_text(K):
    if K.is_void:
        return "void complex"
    return "facets: " + " ".join("{" + ",".join(map(str, f)) + "}" for f in K.sorted_facets())


def cmd_cm(args, out):
    fld = _field(args)
    K = _complex(args)
    if K is None:
        K = sr_complex(_ideal(args))
    res = is_cohen_macaulay(K, fld)
    h = reduced_homology(K, fld)
    if args.json:
        return io.dumps({"cohen_macaulay": res.is_cm,
                         "witness": None if res.witness is None else [list(res.witness[0]), res.witness[1]],
                         "reduced_homology": {str(k): v for k, v in sorted(h.nonzero().items())}})
    lines = [_complex_text(K), f"Cohen-Macaulay over {fld}: {'yes' if res.is_cm else 'no'}"]
    if res.witness is not None:
        face, deg = res.witness
        lines.append(f"  link of {{{','.join(map(str, face))}}} has homology in degree {deg}")
    return "\n".join(lines)


def cmd_depolarize(args, out):
    lat = _lattice(args)
    if args.chains:
        blocks = parse_chain_spec(args.chains)
    else:
        P = meet_irreducibles(lat)
        blocks = [list(c) for c in chain_stats(P).chains]
    D = depolarize_by_chains(lat, blocks, names=_names(args))
    if args.json:
        return io.dumps({"chains": blocks, "generators": [str(g) for g in D.generators]})
    spec = "; ".join("<".join(b) for b in blocks)
    return f"chains: {spec}\n{_ideal_out(D, False)}"


def cmd_distributive(args, out):
    lat = _lattice(args)
    emb = phi_xc_embedding(lat, require_atomic=False)
    J = filter_lattice_j(emb.mi_poset)
    P = emb.mi_poset
    if args.json:
        return io.dumps({
            "J": [mask_label(P, f) for f in J.filters],
            "image": {lat.ids[i]: mask_label(P, emb.phi(emb.xc[i])) for i in sorted(emb.xc)},
            "checks": emb.checks,
        })
    lines = [f"J(mi L) has {J.lattice.n} elements; distributive: {J.distributive}",
             "embedding of L minus its bottom:"]
    for i in sorted(emb.xc):
        lines.append(f"  {lat.ids[i]} -> {mask_label(P, emb.phi(emb.xc[i]))}")
    sp = series_parallel_check(P)
    lines.append(f"mi poset N-free: {sp.n_free}")
    lines.append("checks: " + ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in emb.checks.items()))
    return "\n".join(lines)


def cmd_check_minimal(args, out):
    ideal = _ideal(args)
    res = is_minimal_ideal(ideal)
    if args.json:
        return io.dumps({"is_minimal": res.is_minimal, "reason": res.reason,
                         "bijection": res.bijection and dict(sorted(res.bijection.items()))})
    if res.is_minimal:
        pairs = ", ".join(f"{k} -> {v}" for k, v in sorted(res.bijection.items()))
        return f"minimal: yes\n  {pairs}"
    return f"minimal: no ({res.reason})"


def cmd_verify(args, out):
    from .verify import CorpusSpec, verify_suite

    spec = CorpusSpec(max_atoms=args.max_atoms, random_ideals=args.ideals, seed=args.seed,
                      complex_vertices=args.complex_vertices)
    rep = verify_suite(spec, _field(args))
    text = io.dumps(rep.to_json()) if args.json else rep.format()
    return text, (0 if rep.ok else 1)


def cmd_dot(args, out):
    lat = _lattice(args)
    text = io.export_dot(lat, args.name)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(text)
        return None
    return text.rstrip("\n")


COMMANDS = {
    "lcm": cmd_lcm,
    "minimal": cmd_minimal,
    "nlattice": cmd_nlattice,
    "betti": cmd_betti,
    "scarf": cmd_scarf,
    "primes": cmd_primes,
    "dual": cmd_dual,
    "cm": cmd_cm,
    "depolarize": cmd_depolarize,
    "distributive": cmd_distributive,
    "check-minimal": cmd_check_minimal,
    "verify": cmd_verify,
    "dot": cmd_dot,
}


def run_command(argv, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if not args.command:
            raise UsageError("a subcommand is required: " + ", ".join(COMMANDS))
        overrides = {}
        if getattr(args, "max_elements", None):
            overrides["max_elements"] = args.max_elements
        with config.limits(**overrides):
            result = COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return 2
    except (LatticeError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    status = 0
    if isinstance(result, tuple):
        result, status = result
    if result:
        print(result, file=out)
    return status


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
