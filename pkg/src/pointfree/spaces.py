"""Finite topological spaces, spectra, and the space-side oracle.

The two directions of the open-sets/points correspondence: O sends a
space to its frame of opens, pt sends a frame to its space of
completely prime filters. Saturated sets, sobriety and spatiality are
checked by running the definitions, and the inclusion of the opens into
the saturated sets is packaged as an independently verified bundle that
the canonical-extension tests compare against.
"""

from dataclasses import dataclass
from functools import lru_cache

from .bits import bits
from .errors import NotATopology, NotSober, NotAFrame
from .lattice import (
    exhaustion_bound,
    _subset_joins,
    is_frame,
    lattice_from_inclusion,
)
from .filters import all_filters, scott_open_poset
from .report import Report


@dataclass(frozen=True)
class FiniteSpace:
    point_count: int
    opens: tuple  # masks over points, ascending, validated
    point_names: tuple | None = None

    def __post_init__(self):
        w = topology_violation(self.point_count, self.opens)
        if w is not None:
            raise NotATopology(w)

    def name_of(self, p):
        return self.point_names[p] if self.point_names else f"p{p}"


def topology_violation(point_count, opens):
    """None for a valid finite topology, else a witness naming the
    offending open or pair of opens."""
    full = (1 << point_count) - 1
    if len(set(opens)) != len(opens):
        return ("duplicate-open", None)
    if 0 not in opens:
        return ("missing-empty", None)
    if full not in opens:
        return ("missing-full", None)
    have = set(opens)
    for u in opens:
        if u & ~full:
            return ("open-out-of-range", u)
        for v in opens:
            if u | v not in have:
                return ("union-missing", (u, v))
            if u & v not in have:
                return ("intersection-missing", (u, v))
    return None


def make_space(point_count, open_masks, point_names=None):
    return FiniteSpace(point_count, tuple(sorted(set(open_masks))), point_names)


def open_set_frame(X):
    """The opens of X ordered by inclusion, with the mask list aligned
    to element indices."""
    lat = lattice_from_inclusion(X.opens)
    if not is_frame(lat):
        raise NotAFrame("open-set lattice fails the frame law")
    return lat, X.opens


def specialization_order(X):
    """up[p] = mask of points q with p <= q (every open at p contains q)."""
    full = (1 << X.point_count) - 1
    up = [full] * X.point_count
    for u in X.opens:
        for p in bits(u):
            up[p] &= u
    return tuple(up)


def is_t0(X):
    up = specialization_order(X)
    for p in range(X.point_count):
        for q in range(X.point_count):
            if p != q and (up[p] >> q) & 1 and (up[q] >> p) & 1:
                return False
    return True


def saturated_sets(X):
    """Up(X) under inclusion, verified against the intersection-of-opens
    definition, with tau subseteq Up asserted."""
    up = specialization_order(X)
    masks = []
    full = (1 << X.point_count) - 1
    for m in range(full + 1):
        sat = True
        for p in bits(m):
            if up[p] & ~m:
                sat = False
                break
        if sat:
            masks.append(m)
    have = set(masks)
    for u in X.opens:
        if u not in have:
            raise NotATopology(("open-not-saturated", u))
    for m in masks:
        inter = full
        for u in X.opens:
            if m & ~u == 0:
                inter &= u
        if inter != m:
            raise NotATopology(("saturated-not-intersection-of-opens", m))
    return lattice_from_inclusion(masks), tuple(masks)


@lru_cache(maxsize=None)
def completely_prime_filter_masks(L):
    """Filters F with \\/S in F implying S meets F, for every subset S.

    These are exactly the preimages of {1} under frame maps into the
    two-element frame. Exhaustive over subsets up to the bound; the
    binary join-prime reduction (equivalent for finite carriers) is
    used above it.
    """
    out = []
    for fmask in all_filters(L):
        if _is_completely_prime(L, fmask):
            out.append(fmask)
    return tuple(out)


def _is_completely_prime(L, fmask):
    if L.n <= exhaustion_bound():
        joins = _subset_joins(L)
        for S in range(1 << L.n):
            if (fmask >> joins[S]) & 1 and not S & fmask:
                return False
        return True
    if (fmask >> L.bottom) & 1:
        return False
    for a in range(L.n):
        for b in range(L.n):
            if (fmask >> L.join[a][b]) & 1 and not (fmask >> a) & 1 and not (fmask >> b) & 1:
                return False
    return True


@lru_cache(maxsize=None)
def points(L):
    """pt(L): the space of completely prime filters of L.

    Point k is the k-th completely prime filter (masks ascending); the
    open indexed by a is {k : a in F_k}. The result is sober and T0,
    which is verified rather than assumed.
    """
    if not is_frame(L):
        raise NotAFrame("pt is defined for frames")
    cps = completely_prime_filter_masks(L)
    k = len(cps)
    open_masks = []
    for a in range(L.n):
        m = 0
        for i, f in enumerate(cps):
            if (f >> a) & 1:
                m |= 1 << i
        open_masks.append(m)
    X = make_space(k, open_masks)
    if not is_t0(X):
        raise NotSober("pt produced a non-T0 space")
    return X, cps, tuple(open_masks)


def frame_of_points_iso(L):
    """The canonical map a -> {p : a in p} from L onto O(pt(L)).

    Returns (space, open_frame, open_masks, table); table[a] is the
    element of the open frame carrying that open. For finite frames the
    map is an isomorphism (finite distributive lattices are spatial);
    is_spatial re-checks this by search.
    """
    X, cps, per_element = points(L)
    olat, omasks = open_set_frame(X)
    index = {m: i for i, m in enumerate(omasks)}
    table = tuple(index[per_element[a]] for a in range(L.n))
    return X, olat, omasks, table


def is_spatial(L):
    """L isomorphic to the opens of its own spectrum, found by search."""
    from .lattice import find_isomorphism

    olat, _ = open_set_frame(points(L)[0])
    return find_isomorphism(L, olat) is not None


def is_sober(X):
    """X homeomorphic to pt(O(X)) through the canonical point map."""
    olat, omasks = open_set_frame(X)
    Y, cps, per_element = points(olat)
    if X.point_count != Y.point_count:
        return False
    # x maps to its open-neighbourhood filter; bijectivity plus matching
    # opens is exactly the canonical-homeomorphism condition.
    images = []
    for x in range(X.point_count):
        f = 0
        for i, m in enumerate(omasks):
            if (m >> x) & 1:
                f |= 1 << i
        if f not in cps:
            return False
        images.append(cps.index(f))
    if len(set(images)) != X.point_count:
        return False
    for i, m in enumerate(omasks):
        mapped = 0
        for x in bits(m):
            mapped |= 1 << images[x]
        if mapped != per_element[i]:
            return False
    return True


def compact_in_space(X, satmask):
    """Every directed open cover of the set contains a covering member.

    Directedness of open families is exhausted for small topologies and
    generated from <=3 opens above the bound; the second component
    reports the mode.
    """
    k = len(X.opens)
    note = None
    if k <= exhaustion_bound():
        fams = []
        for S in range(1, 1 << k):
            members = [X.opens[i] for i in bits(S)]
            if all(
                any((u | v) & ~w == 0 for w in members)
                for u in members
                for v in members
            ):
                fams.append(members)
    else:
        from itertools import combinations

        note = f"directed open families from <=3 generators ({k} opens)"
        fams = []
        for size in range(1, 4):
            for gen in combinations(X.opens, size):
                fam = set(gen)
                changed = True
                while changed:
                    changed = False
                    for u in list(fam):
                        for v in list(fam):
                            if u | v not in fam:
                                fam.add(u | v)
                                changed = True
                fams.append(sorted(fam))
    for members in fams:
        cover = 0
        for u in members:
            cover |= u
        if satmask & ~cover == 0 and not any(satmask & ~u == 0 for u in members):
            return False, note
    return True, note


def hofmann_mislove_report(X):
    """The bijection between Scott-open filters of the opens and compact
    saturated subsets, each direction computed and composed explicitly."""
    if not is_sober(X):
        raise NotSober("Hofmann-Mislove check needs a sober space")
    olat, omasks = open_set_frame(X)
    so = scott_open_poset(olat)
    _, satmasks = saturated_sets(X)
    rep = Report(subject=f"hofmann-mislove(points={X.point_count})")

    full = (1 << X.point_count) - 1
    compact_sat = []
    notes = set()
    for m in satmasks:
        ok, note = compact_in_space(X, m)
        if note:
            notes.add(note)
        if ok:
            compact_sat.append(m)
    note = sorted(notes)[0] if notes else None

    to_sat = []
    for fmask in so.filters:
        inter = full
        for i in bits(fmask):
            inter &= omasks[i]
        to_sat.append(inter)
    rep.check(
        "filter-to-compact-saturated",
        all(m in compact_sat for m in to_sat),
        witness=[m for m in to_sat if m not in compact_sat][:1] or None,
        bound_note=note,
    )
    rep.check(
        "bijection-counts",
        len(set(to_sat)) == len(so.filters) == len(compact_sat),
        witness=(len(so.filters), len(set(to_sat)), len(compact_sat)),
    )

    ok_round = True
    wit = None
    for fmask, m in zip(so.filters, to_sat):
        back = 0
        for i, om in enumerate(omasks):
            if m & ~om == 0:
                back |= 1 << i
        if back != fmask:
            ok_round, wit = False, (fmask, m)
            break
    rep.check("filter-roundtrip", ok_round, witness=wit)

    ok_round2 = True
    wit2 = None
    for m in compact_sat:
        fmask = 0
        for i, om in enumerate(omasks):
            if m & ~om == 0:
                fmask |= 1 << i
        inter = full
        for i in bits(fmask):
            inter &= omasks[i]
        if inter != m or fmask not in so.filters:
            ok_round2, wit2 = False, m
            break
    rep.check("compact-saturated-roundtrip", ok_round2, witness=wit2)
    return rep


def space_canext_oracle(X):
    """The inclusion of the opens into the saturated sets as a bundle.

    Serves as the space-side oracle: its density and compactness are
    verified directly with the bundle verifiers, independently of the
    polarity construction.
    """
    from .canext import CanExtBundle, verify_compact, verify_dense

    if not is_sober(X):
        raise NotSober("space oracle needs a sober space")
    olat, omasks = open_set_frame(X)
    uplat, satmasks = saturated_sets(X)
    sat_index = {m: i for i, m in enumerate(satmasks)}
    e_table = tuple(sat_index[m] for m in omasks)
    so = scott_open_poset(olat)
    full = (1 << X.point_count) - 1
    eso_table = []
    for fmask in so.filters:
        inter = full
        for i in bits(fmask):
            inter &= omasks[i]
        eso_table.append(sat_index[inter])
    bundle = CanExtBundle(
        source=olat,
        extension=uplat,
        e_table=e_table,
        so_poset=so,
        e_so_table=tuple(eso_table),
        provenance="space-oracle",
    )
    dense = verify_dense(bundle)
    compact = verify_compact(bundle)
    if not (dense.ok() and compact.ok()):
        raise NotSober("space oracle failed its own axiom verification")
    return bundle
