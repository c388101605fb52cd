"""Canonical extensions of finite frames.

The extension of a frame L is built from the polarity whose rows are
the Scott-open filters, whose columns are the elements, and whose
relation is membership. The density and compactness axioms, the basic
consequences (preframe embedding, injective co-preframe map on the
filter side, double generation, frame embedding under local
compactness), the strengthened compactness over filtered families, the
intersection-of-Scott-open-filters representation, and the
ideal-completion route for distributive lattices are all executable
verifiers that report witnesses instead of raising.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .bits import bits
from .errors import NotAFrame, NotDistributive
from .filters import (
    ScottOpenFilterPoset,
    all_filters,
    all_ideals,
    codirected_families_for_checks,
    filter_join,
    idl_lattice,
    scott_open_poset,
)
from .lattice import (
    FiniteLattice,
    directed_masks_for_checks,
    is_completely_distributive,
    is_distributive,
    is_frame,
    is_locally_compact,
    is_stably_locally_compact,
)
from .polarity import Polarity, concept_lattice, verify_uniqueness
from .report import Report


@dataclass(frozen=True)
class CanExtBundle:
    """A frame, its extension, and the two structure maps.

    e_table sends source elements to extension elements; e_so_table
    sends Scott-open filters (indexed as in so_poset.filters) to
    extension elements. provenance records which construction produced
    the bundle. The defining identity e_so(F) = meet of e over F is a
    checkable invariant, not an assumption; see bundle_consistency.
    """

    source: FiniteLattice
    extension: FiniteLattice
    e_table: tuple
    so_poset: ScottOpenFilterPoset
    e_so_table: tuple
    provenance: str
    polarity: Polarity | None = field(default=None, compare=False)

    def e(self, a):
        return self.e_table[a]

    def e_so(self, i):
        return self.e_so_table[i]


def bundle_consistency(b):
    """e_so(F) equals the meet of e over F, pointwise."""
    for i, fmask in enumerate(b.so_poset.filters):
        acc = b.extension.top
        for a in bits(fmask):
            acc = b.extension.meet[acc][b.e_table[a]]
        if acc != b.e_so_table[i]:
            return False, i
    return True, None


@lru_cache(maxsize=None)
def canonical_extension(L):
    """Build the extension of L from the membership polarity.

    Rows are Scott-open filters, columns the frame elements, and the
    relation holds when the element belongs to the filter. e is the
    column map and e_so the row map of the closed-set lattice.
    """
    if not is_frame(L):
        raise NotAFrame("canonical extension is built for frames")
    so = scott_open_poset(L)
    P = Polarity(
        len(so.filters),
        L.n,
        tuple(fmask for fmask in so.filters),
    )
    cl = concept_lattice(P)
    return CanExtBundle(
        source=L,
        extension=cl.lattice,
        e_table=cl.g_map,
        so_poset=so,
        e_so_table=cl.f_map,
        provenance="polarity",
        polarity=P,
    )


def membership_polarity(L):
    so = scott_open_poset(L)
    return Polarity(len(so.filters), L.n, tuple(so.filters)), so


# -- axiom verifiers ----------------------------------------------------


def verify_dense(b):
    """Density: u <= v whenever every filter/element sandwich around the
    pair collapses. Checked through the contrapositive: every u not<= v
    needs a Scott-open filter F and element a with e_so(F) <= u,
    v <= e(a) and e_so(F) not<= e(a)."""
    ext = b.extension
    rep = Report(subject=f"dense({b.provenance}, n={b.source.n})")
    k = len(b.so_poset.filters)
    # bad[i] = elements a with e_so(F_i) not<= e(a)
    bad = []
    for i in range(k):
        m = 0
        for a in range(b.source.n):
            if not ext.leq(b.e_so_table[i], b.e_table[a]):
                m |= 1 << a
        bad.append(m)
    below_filters = []
    for u in range(ext.n):
        m = 0
        for i in range(k):
            if ext.leq(b.e_so_table[i], u):
                m |= 1 << i
        below_filters.append(m)
    above_elems = []
    for v in range(ext.n):
        m = 0
        for a in range(b.source.n):
            if ext.leq(v, b.e_table[a]):
                m |= 1 << a
        above_elems.append(m)
    ok, wit = True, None
    for u in range(ext.n):
        for v in range(ext.n):
            if ext.leq(u, v):
                continue
            if not any(bad[i] & above_elems[v] for i in bits(below_filters[u])):
                ok, wit = False, (u, v)
                break
        if not ok:
            break
    rep.check("dense", ok, witness=wit)
    return rep


def verify_compact(b):
    """Compactness: e_so(F) <= e(a) forces a in F, over all pairs."""
    ext = b.extension
    rep = Report(subject=f"compact({b.provenance}, n={b.source.n})")
    ok, wit = True, None
    for i, fmask in enumerate(b.so_poset.filters):
        for a in range(b.source.n):
            if ext.leq(b.e_so_table[i], b.e_table[a]) and not (fmask >> a) & 1:
                ok, wit = False, (fmask, a)
                break
        if not ok:
            break
    rep.check("compact", ok, witness=wit)
    return rep


def verify_compact_plus(b):
    """Strengthened compactness over filtered families of Scott-open
    filters and directed subsets of the source."""
    ext = b.extension
    L = b.source
    rep = Report(subject=f"compact-plus({b.provenance}, n={L.n})")
    fams, note_f = codirected_families_for_checks(b.so_poset)
    dmasks, note_d = directed_masks_for_checks(L)
    note = note_f or note_d
    fam_meets = []
    for fam in fams:
        acc = ext.top
        for i in fam:
            acc = ext.meet[acc][b.e_so_table[i]]
        fam_meets.append(acc)
    d_joins = []
    for D in dmasks:
        acc = ext.bottom
        for a in bits(D):
            acc = ext.join[acc][b.e_table[a]]
        d_joins.append(acc)
    ok, wit = True, None
    for fi, fam in enumerate(fams):
        for di, D in enumerate(dmasks):
            if not ext.leq(fam_meets[fi], d_joins[di]):
                continue
            if not any(D & b.so_poset.filters[i] for i in fam):
                ok, wit = False, (fam, D)
                break
        if not ok:
            break
    rep.check("compact-plus", ok, witness=wit, bound_note=note)
    return rep


def verify_basic_properties(b):
    """The consequence suite of a verified bundle, each item checked
    independently so a failure isolates the faulty component."""
    L, ext = b.source, b.extension
    e, eso = b.e_table, b.e_so_table
    so = b.so_poset
    rep = Report(subject=f"basic-properties({b.provenance}, n={L.n})")

    okc, witc = bundle_consistency(b)
    rep.check("e-so-is-meet-of-e", okc, witness=witc)

    # (1) e is a preframe homomorphism preserving 0.
    ok = e[L.bottom] == ext.bottom and e[L.top] == ext.top
    rep.check("e-preserves-bounds", ok, witness=(e[L.bottom], e[L.top]))
    ok, wit = True, None
    for a in range(L.n):
        for c in range(L.n):
            if e[L.meet[a][c]] != ext.meet[e[a]][e[c]]:
                ok, wit = False, (a, c)
                break
        if not ok:
            break
    rep.check("e-preserves-finite-meets", ok, witness=wit)
    dmasks, note_d = directed_masks_for_checks(L)
    ok, wit = True, None
    for D in dmasks:
        acc = ext.bottom
        for a in bits(D):
            acc = ext.join[acc][e[a]]
        if acc != e[L.join_of(D)]:
            ok, wit = False, D
            break
    rep.check("e-preserves-directed-joins", ok, witness=wit, bound_note=note_d)

    # (2) e_so is an injective co-preframe homomorphism.
    k = len(so.filters)
    rep.check(
        "e-so-injective",
        len(set(eso)) == k,
        witness=[i for i in range(k) if eso.count(eso[i]) > 1][:2] or None,
    )
    bottom_idx = so.filters.index((1 << L.n) - 1)
    rep.check(
        "e-so-preserves-bottom",
        eso[bottom_idx] == ext.bottom,
        witness=eso[bottom_idx],
    )
    index = {f: i for i, f in enumerate(so.filters)}
    ok, wit = True, None
    for i in range(k):
        for j in range(k):
            inter = filter_join(L, so.filters[i], so.filters[j])
            if inter not in index:
                ok, wit = False, ("join-missing", i, j)
                break
            if eso[index[inter]] != ext.join[eso[i]][eso[j]]:
                ok, wit = False, (i, j)
                break
        if not ok:
            break
    rep.check("e-so-preserves-binary-joins", ok, witness=wit)
    fams, note_f = codirected_families_for_checks(so)
    ok, wit = True, None
    for fam in fams:
        union = 0
        acc = ext.top
        for i in fam:
            union |= so.filters[i]
            acc = ext.meet[acc][eso[i]]
        # The filtered meet on the filter side is the directed union;
        # only run the comparison when the family really is directed
        # under inclusion (filtered in reverse inclusion).
        if union not in index:
            ok, wit = False, ("union-not-a-filter", fam)
            break
        if eso[index[union]] != acc:
            ok, wit = False, fam
            break
    rep.check("e-so-preserves-filtered-meets", ok, witness=wit, bound_note=note_f)

    # (3) double generation of every extension element.
    ok, wit = True, None
    for u in range(ext.n):
        acc = ext.top
        for a in range(L.n):
            if ext.leq(u, e[a]):
                acc = ext.meet[acc][e[a]]
        if acc != u:
            ok, wit = False, ("meet-generation", u)
            break
        acc = ext.bottom
        for i in range(k):
            if ext.leq(eso[i], u):
                acc = ext.join[acc][eso[i]]
        if acc != u:
            ok, wit = False, ("join-generation", u)
            break
    rep.check("double-generation", ok, witness=wit)

    # (4)/(5) injectivity and binary joins.
    inj = len(set(e)) == L.n
    if inj:
        ok, wit = True, None
        for a in range(L.n):
            for c in range(L.n):
                if e[L.join[a][c]] != ext.join[e[a]][e[c]]:
                    ok, wit = False, (a, c)
                    break
            if not ok:
                break
        rep.check("injective-e-preserves-binary-joins", ok, witness=wit)
    if is_locally_compact(L):
        rep.check("locally-compact-forces-injective-e", inj, witness="e not injective")

    # Joins of filter-side images are meets over intersections, over
    # families of <=3 Scott-open filters.
    ok, wit = True, None
    for size in range(1, 4):
        for fam in combinations(range(k), size):
            inter = (1 << L.n) - 1
            acc = ext.bottom
            for i in fam:
                inter &= so.filters[i]
                acc = ext.join[acc][eso[i]]
            meet_over = ext.top
            for a in bits(inter):
                meet_over = ext.meet[meet_over][e[a]]
            if acc != meet_over:
                ok, wit = False, fam
                break
        if not ok:
            break
    rep.check(
        "join-of-filter-images-is-meet-over-intersection",
        ok,
        witness=wit,
        bound_note="families of <=3 Scott-open filters",
    )
    return rep


def frame_coframe_report(b):
    """Extension is a frame, a coframe, and completely distributive;
    tagged when the source is stably locally compact."""
    rep = Report(subject=f"frame-coframe({b.provenance}, n={b.source.n})")
    ext = b.extension
    rep.check("extension-is-frame", is_frame(ext))
    rep.check("extension-is-coframe", is_frame(ext.op()))
    rep.check("extension-completely-distributive", is_completely_distributive(ext))
    if is_stably_locally_compact(b.source):
        rep.check("source-stably-locally-compact", True)
    return rep


# -- alternative representations ---------------------------------------


def intersection_filter_representation(L):
    """Filters expressible as intersections of Scott-open filters, under
    reverse inclusion, with the unique isomorphism onto the extension.

    Returns (lattice, filter_masks, e_table, iso) where iso sends
    lattice elements to extension elements of canonical_extension(L)
    and commutes with the embeddings.
    """
    if not is_frame(L):
        raise NotAFrame("filter representation needs a frame")
    so = scott_open_poset(L)
    full = (1 << L.n) - 1
    # The empty intersection is the whole carrier; closing under pairwise
    # intersection then reaches every intersection of a subfamily.
    masks = set(so.filters) | {full}
    changed = True
    while changed:
        changed = False
        for a in list(masks):
            for b_ in list(masks):
                m = a & b_
                if m not in masks:
                    masks.add(m)
                    changed = True
    masks = tuple(sorted(masks))
    k = len(masks)
    up = []
    for i in range(k):
        row = 0
        for j in range(k):
            if masks[j] & ~masks[i] == 0:
                row |= 1 << j
        up.append(row)
    lat = FiniteLattice(tuple(up))
    index = {m: i for i, m in enumerate(masks)}
    e_table = []
    for a in range(L.n):
        inter = full
        for f in so.filters:
            if (f >> a) & 1:
                inter &= f
        e_table.append(index[inter])
    e_table = tuple(e_table)
    # Row map: F -> smallest representation filter containing F, which
    # is F itself (Scott-open filters are intersections trivially).
    f2 = tuple(index[f] for f in so.filters)
    P = canonical_extension(L).polarity
    iso = verify_uniqueness(P, lat, f2, e_table)
    return lat, masks, e_table, iso


def dlat_canonical_extension(A):
    """The ideal-completion route for a distributive lattice A.

    Builds the composite of a -> principal ideal with the embedding of
    Idl(A) into its extension, verifies the lattice-style density and
    compactness axioms quantified over all filters and ideals of A, and
    checks that the filters of A correspond to the Scott-open filters
    of Idl(A) via F -> {I : I meets F}.

    Returns (bundle, report); the bundle's source is A.
    """
    if not is_distributive(A):
        raise NotDistributive("ideal-completion route needs a distributive lattice")
    rep = Report(subject=f"dlat-canext(n={A.n})")
    idl, imasks = idl_lattice(A)
    iindex = {m: i for i, m in enumerate(imasks)}
    down = tuple(iindex[A.dn[a]] for a in range(A.n))
    inner = canonical_extension(idl)
    ext = inner.extension
    i_table = tuple(inner.e_table[down[a]] for a in range(A.n))

    filtersA = all_filters(A)
    idealsA = all_ideals(A)
    f_meets = []
    for fmask in filtersA:
        acc = ext.top
        for a in bits(fmask):
            acc = ext.meet[acc][i_table[a]]
        f_meets.append(acc)
    i_joins = []
    for imask in idealsA:
        acc = ext.bottom
        for a in bits(imask):
            acc = ext.join[acc][i_table[a]]
        i_joins.append(acc)

    ok, wit = True, None
    for fi, fmask in enumerate(filtersA):
        for ii, imask in enumerate(idealsA):
            if ext.leq(f_meets[fi], i_joins[ii]) and not fmask & imask:
                ok, wit = False, (fmask, imask)
                break
        if not ok:
            break
    rep.check("dlat-compact", ok, witness=wit)

    ok, wit = True, None
    for u in range(ext.n):
        for v in range(ext.n):
            if ext.leq(u, v):
                continue
            found = False
            for fi in range(len(filtersA)):
                if not ext.leq(f_meets[fi], u):
                    continue
                for ii in range(len(idealsA)):
                    if ext.leq(v, i_joins[ii]) and not ext.leq(
                        f_meets[fi], i_joins[ii]
                    ):
                        found = True
                        break
                if found:
                    break
            if not found:
                ok, wit = False, (u, v)
                break
        if not ok:
            break
    rep.check("dlat-dense", ok, witness=wit)

    # Filt(A) matches the Scott-open filters of Idl(A).
    so = scott_open_poset(idl)
    images = []
    ok, wit = True, None
    for fmask in filtersA:
        m = 0
        for ii, imask in enumerate(imasks):
            if imask & fmask:
                m |= 1 << ii
        images.append(m)
        if m not in so.filters:
            ok, wit = False, fmask
            break
    rep.check("filters-map-to-scott-open", ok, witness=wit)
    if ok:
        rep.check(
            "filter-correspondence-bijective",
            len(set(images)) == len(filtersA) == len(so.filters),
            witness=(len(filtersA), len(set(images)), len(so.filters)),
        )
        ok2, wit2 = True, None
        for x in range(len(filtersA)):
            for y in range(len(filtersA)):
                incl_a = filtersA[y] & ~filtersA[x] == 0
                incl_i = images[y] & ~images[x] == 0
                if incl_a != incl_i:
                    ok2, wit2 = False, (x, y)
                    break
            if not ok2:
                break
        rep.check("filter-correspondence-order", ok2, witness=wit2)

    bundle = CanExtBundle(
        source=A,
        extension=ext,
        e_table=i_table,
        so_poset=scott_open_poset(A),
        e_so_table=tuple(
            f_meets[filtersA.index(f)] for f in scott_open_poset(A).filters
        ),
        provenance="ideal-completion",
        polarity=None,
    )
    return bundle, rep


# -- corruption helpers (negative-test surface) -------------------------


def corrupted_bundles(L):
    """Three deliberately broken variants of the canonical bundle.

    Each must make dense, compact and compact-plus fail with witnesses:
    e collapsed to the top, e collapsed to the bottom, and the images
    of the bounds swapped. e_so is recomputed from the corrupted e so
    the bundles stay internally consistent.
    """
    b = canonical_extension(L)
    ext = b.extension
    variants = []
    const_top = tuple(ext.top for _ in range(L.n))
    const_bot = tuple(ext.bottom for _ in range(L.n))
    swapped = list(b.e_table)
    swapped[L.bottom], swapped[L.top] = b.e_table[L.top], b.e_table[L.bottom]
    for name, e_table in (
        ("e-const-top", const_top),
        ("e-const-bottom", const_bot),
        ("e-bounds-swapped", tuple(swapped)),
    ):
        eso = []
        for fmask in b.so_poset.filters:
            acc = ext.top
            for a in bits(fmask):
                acc = ext.meet[acc][e_table[a]]
            eso.append(acc)
        variants.append(
            (
                name,
                CanExtBundle(
                    source=L,
                    extension=ext,
                    e_table=e_table,
                    so_poset=b.so_poset,
                    e_so_table=tuple(eso),
                    provenance=f"corrupted:{name}",
                ),
            )
        )
    return variants
