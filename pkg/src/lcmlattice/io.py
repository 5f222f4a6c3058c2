"""Reading and writing lattices, complexes, ideals and Betti tables.

Lattice JSON::

    {"elements": ["0", "a", "b", "1"],
     "covers": [["0", "a"], ["0", "b"], ["a", "1"], ["b", "1"]],
     "labels": {"a": "x", ...}}          # optional

Complex JSON::

    {"vertices": [1, 2, 3], "facets": [[1, 2], [2, 3]], "empty_face": true}

A ``description`` key is allowed in both and ignored.
"""

import json

from .errors import LatticeError
from .monomial import MonomialIdeal, parse_monomial
from .poset import FiniteLattice, build_from_covers, lattice_structure
from .simplicial import SimplicialComplex

_LATTICE_KEYS = {"elements", "covers", "labels", "description"}
_COMPLEX_KEYS = {"vertices", "facets", "empty_face", "description"}


class FormatError(LatticeError, ValueError):
    pass


def _load(source):
    if isinstance(source, dict):
        return source
    if hasattr(source, "read"):
        return json.load(source)
    with open(source) as fh:
        return json.load(fh)


def poset_from_json(data):
    data = _load(data)
    extra = set(data) - _LATTICE_KEYS
    if extra:
        raise FormatError(f"unknown keys {sorted(extra)}")
    if "elements" not in data:
        raise FormatError("missing 'elements'")
    ids = [str(e) for e in data["elements"]]
    covers = [(str(a), str(b)) for a, b in data.get("covers", [])]
    return build_from_covers(ids, covers)


def lattice_from_json(data, compact=False):
    data = _load(data)
    p = poset_from_json(data)
    labels = None
    if data.get("labels"):
        raw = data["labels"]
        missing = [e for e in p.ids if e not in raw]
        if missing:
            raise FormatError(f"labels missing for {missing}")
        labels = {p.index(e): parse_monomial(str(raw[e]), compact) for e in p.ids}
    return lattice_structure(p, labels)


def lattice_to_json(lat, description=None):
    p = lat.poset if isinstance(lat, FiniteLattice) else lat
    out = {}
    if description:
        out["description"] = description
    out["elements"] = list(p.ids)
    out["covers"] = [list(c) for c in p.cover_ids()]
    if isinstance(lat, FiniteLattice) and lat.labels:
        out["labels"] = {p.ids[i]: str(m) for i, m in sorted(lat.labels.items())}
    return out


def complex_from_json(data):
    data = _load(data)
    extra = set(data) - _COMPLEX_KEYS
    if extra:
        raise FormatError(f"unknown keys {sorted(extra)}")
    verts = data.get("vertices")
    if verts is None:
        raise FormatError("missing 'vertices'")
    facets = data.get("facets", [])
    return SimplicialComplex(verts, facets, empty_face=bool(data.get("empty_face", bool(facets))))


def complex_to_json(K, description=None):
    out = {}
    if description:
        out["description"] = description
    out["vertices"] = list(K.vertices)
    out["facets"] = [list(f) for f in K.sorted_facets()]
    out["empty_face"] = not K.is_void
    return out


def read_ideal(text, compact=False):
    return MonomialIdeal.parse(text, compact=compact)


def read_ideal_file(path, compact=False):
    with open(path) as fh:
        return read_ideal(fh.read(), compact)


def format_ideal(ideal, compact=False):
    return ideal.compact() if compact else str(ideal)


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=False)


def export_dot(obj, name="L", grey_mi=True):
    """Hasse diagram in DOT, drawn bottom-up.

    Nodes show the id and, for labelled lattices, the monomial label;
    meet-irreducible elements of a lattice are filled light grey.
    """
    lat = obj if isinstance(obj, FiniteLattice) else None
    p = lat.poset if lat is not None else obj
    mi = set(lat.meet_irreducible_indices) if (lat is not None and grey_mi) else set()
    lines = [f"digraph {json.dumps(name)} {{", "  rankdir=BT;", "  node [shape=box];"]
    for i, e in enumerate(p.ids):
        text = str(e)
        if lat is not None and lat.labels is not None:
            lab = str(lat.labels[i])
            if lab != text:
                text = f"{text}\\n{lab}"
        attrs = [f"label={json.dumps(text).replace(chr(92) * 2, chr(92))}"]
        if i in mi:
            attrs.append('style=filled, fillcolor="lightgrey"')
        lines.append(f"  {json.dumps(str(e))} [{', '.join(attrs)}];")
    for lo, hi in p.covers:
        lines.append(f"  {json.dumps(str(p.ids[lo]))} -> {json.dumps(str(p.ids[hi]))};")
    lines.append("}")
    return "\n".join(lines) + "\n"
