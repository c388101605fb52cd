"""Interchange documents for lattices, spaces, maps, polarities,
proximity structures, and extension bundles.

The concrete syntax is JSON, one object per document, each carrying a
"format" tag and a "version". Grammars are documented in the README
and are normative for the CLI. Parsing reports syntax errors with line
and column; semantic validation is delegated to the module
constructors, whose errors pass through untouched.
"""

import json

from .errors import FormatError
from .filters import ScottOpenFilterPoset
from .lattice import FiniteLattice, build_lattice
from .polarity import Polarity
from .proximity import ProximityLattice
from .spaces import FiniteSpace, make_space

VERSION = 1


def loads(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise FormatError(
            f"syntax error at line {err.lineno}, column {err.colno}: {err.msg}"
        ) from err
    if not isinstance(doc, dict) or "format" not in doc:
        raise FormatError("document must be an object with a 'format' field")
    return doc


def parse(text):
    """Parse any interchange document into its typed object."""
    doc = loads(text)
    kind = doc["format"]
    if kind == "lattice":
        return lattice_from_doc(doc)
    if kind == "space":
        return space_from_doc(doc)
    if kind == "map":
        return doc  # map documents reference lattices by name; see cli
    if kind == "polarity":
        return polarity_from_doc(doc)
    if kind == "proximity":
        return proximity_from_doc(doc)
    if kind == "bundle":
        return bundle_from_doc(doc)
    raise FormatError(f"unknown format {kind!r}")


def _field(doc, name, types):
    if name not in doc:
        raise FormatError(f"missing field {name!r}")
    v = doc[name]
    if not isinstance(v, types):
        raise FormatError(f"field {name!r} has the wrong type")
    return v


def _pair_list(doc, name, bound_a, bound_b):
    pairs = _field(doc, name, list)
    out = []
    for p in pairs:
        if (
            not isinstance(p, list)
            or len(p) != 2
            or not all(isinstance(v, int) for v in p)
        ):
            raise FormatError(f"{name} entries must be [i, j] index pairs, got {p!r}")
        if not (0 <= p[0] < bound_a and 0 <= p[1] < bound_b):
            raise FormatError(f"{name} pair {p!r} is out of range")
        out.append((p[0], p[1]))
    return out


# -- lattice ------------------------------------------------------------


def lattice_from_doc(doc):
    elements = _field(doc, "elements", list)
    n = len(elements)
    names = tuple(str(e) for e in elements)
    if "cover" in doc:
        pairs = _pair_list(doc, "cover", n, n)
        return build_lattice(n, pairs, mode="cover", names=names)
    if "leq" in doc:
        pairs = _pair_list(doc, "leq", n, n)
        return build_lattice(n, pairs, mode="leq", names=names)
    raise FormatError("lattice document needs 'cover' or 'leq'")


def lattice_to_doc(L, name=None):
    doc = {
        "format": "lattice",
        "version": VERSION,
    }
    if name is not None:
        doc["name"] = name
    doc["elements"] = [L.name_of(i) for i in range(L.n)]
    doc["cover"] = [[i, j] for i, j in L.cover_pairs()]
    return doc


# -- space ---------------------------------------------------------------


def space_from_doc(doc):
    pts = _field(doc, "points", list)
    names = tuple(str(p) for p in pts)
    opens = _field(doc, "opens", list)
    masks = []
    for o in opens:
        if not isinstance(o, list) or not all(
            isinstance(v, int) and 0 <= v < len(pts) for v in o
        ):
            raise FormatError(f"open {o!r} must list point indices")
        m = 0
        for v in o:
            m |= 1 << v
        masks.append(m)
    return FiniteSpace(len(pts), tuple(sorted(set(masks))), names)


def space_to_doc(X, name=None):
    doc = {"format": "space", "version": VERSION}
    if name is not None:
        doc["name"] = name
    doc["points"] = [X.name_of(p) for p in range(X.point_count)]
    doc["opens"] = [
        [p for p in range(X.point_count) if (m >> p) & 1] for m in X.opens
    ]
    return doc


# -- map -----------------------------------------------------------------


def map_to_doc(f, source_name, target_name):
    return {
        "format": "map",
        "version": VERSION,
        "source": source_name,
        "target": target_name,
        "table": list(f.table),
    }


def map_from_doc(doc, source, target):
    from .maps import LatticeMap

    table = _field(doc, "table", list)
    if not all(isinstance(v, int) for v in table):
        raise FormatError("map table entries must be integers")
    return LatticeMap(source, target, tuple(table))


# -- polarity --------------------------------------------------------------


def polarity_from_doc(doc):
    x = _field(doc, "x", int)
    y = _field(doc, "y", int)
    pairs = _pair_list(doc, "z", x, y)
    return Polarity.from_pairs(x, y, pairs)


def polarity_to_doc(P, name=None):
    doc = {"format": "polarity", "version": VERSION}
    if name is not None:
        doc["name"] = name
    doc["x"] = P.x_size
    doc["y"] = P.y_size
    doc["z"] = [[x, y] for x in range(P.x_size) for y in range(P.y_size) if P.holds(x, y)]
    return doc


# -- proximity --------------------------------------------------------------


def proximity_from_doc(doc):
    base = lattice_from_doc(_field(doc, "lattice", dict))
    pairs = _pair_list(doc, "r", base.n, base.n)
    return ProximityLattice.from_pairs(base, pairs)


def proximity_to_doc(P, name=None):
    doc = {"format": "proximity", "version": VERSION}
    if name is not None:
        doc["name"] = name
    doc["lattice"] = lattice_to_doc(P.base)
    doc["r"] = [
        [a, b] for a in range(P.base.n) for b in range(P.base.n) if P.holds(a, b)
    ]
    return doc


# -- bundle ------------------------------------------------------------------


def bundle_to_doc(b, name=None):
    doc = {"format": "bundle", "version": VERSION}
    if name is not None:
        doc["name"] = name
    doc["provenance"] = b.provenance
    doc["source"] = lattice_to_doc(b.source)
    doc["extension"] = lattice_to_doc(b.extension)
    doc["maps"] = {
        "e": list(b.e_table),
        "e_so": list(b.e_so_table),
        "so_filters": [
            [a for a in range(b.source.n) if (f >> a) & 1]
            for f in b.so_poset.filters
        ],
    }
    return doc


def bundle_from_doc(doc):
    from .canext import CanExtBundle

    source = lattice_from_doc(_field(doc, "source", dict))
    extension = lattice_from_doc(_field(doc, "extension", dict))
    maps = _field(doc, "maps", dict)
    e_table = tuple(maps["e"])
    e_so_table = tuple(maps["e_so"])
    fmasks = []
    for members in maps["so_filters"]:
        m = 0
        for a in members:
            if not isinstance(a, int) or not 0 <= a < source.n:
                raise FormatError(f"so_filters member {a!r} out of range")
            m |= 1 << a
        fmasks.append(m)
    fmasks = tuple(fmasks)
    k = len(fmasks)
    up = []
    for i in range(k):
        row = 0
        for j in range(k):
            if fmasks[j] & ~fmasks[i] == 0:
                row |= 1 << j
        up.append(row)
    so = ScottOpenFilterPoset(source, fmasks, FiniteLattice(tuple(up)))
    return CanExtBundle(
        source=source,
        extension=extension,
        e_table=e_table,
        so_poset=so,
        e_so_table=e_so_table,
        provenance=str(_field(doc, "provenance", str)),
    )


def dumps(doc):
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
