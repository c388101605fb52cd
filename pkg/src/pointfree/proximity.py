"""Join-strong proximity lattices and their round-ideal completion.

A proximity lattice is a distributive lattice with an idempotent
auxiliary relation below the order, compatible with joins on the left
and meets on the right, and interpolating across binary joins. Round
ideals (each member related to a further member) form a locally compact
frame, the round filters match its Scott-open filters, and the ideal
map a -> {b : b R a} embeds the lattice into the canonical extension of
the round-ideal frame.
"""

from dataclasses import dataclass

from .bits import bits
from .errors import AxiomsFail, NotDistributive
from .filters import all_filters, all_ideals, scott_open_poset
from .lattice import (
    FiniteLattice,
    is_distributive,
    is_frame,
    is_locally_compact,
    lattice_from_inclusion,
)
from .report import Report


@dataclass(frozen=True)
class ProximityLattice:
    base: FiniteLattice
    rel: tuple  # rel[a] = mask of {b : a R b}

    def holds(self, a, b):
        return (self.rel[a] >> b) & 1 == 1

    @classmethod
    def from_pairs(cls, base, pairs):
        rel = [0] * base.n
        for a, b in pairs:
            rel[a] |= 1 << b
        return cls(base, tuple(rel))

    @classmethod
    def from_order(cls, base):
        """R = <=, the always-valid instance."""
        return cls(base, base.up)


def check_axioms(A, rel):
    """Evaluate the five proximity axioms by exhaustion, reporting the
    first witness per failing axiom."""
    if not is_distributive(A):
        raise NotDistributive("proximity lattices are built on distributive lattices")
    P = ProximityLattice(A, tuple(rel))
    rep = Report(subject=f"proximity-axioms(n={A.n})")

    # (1) R . R = R and R below the order.
    ok, wit = True, None
    for a in range(A.n):
        comp = 0
        for c in bits(P.rel[a]):
            comp |= P.rel[c]
        if comp != P.rel[a]:
            ok, wit = False, ("composition", a)
            break
        if P.rel[a] & ~A.up[a]:
            ok, wit = False, ("not-below-order", a)
            break
    rep.check("idempotent-and-below-order", ok, witness=wit)

    # (2) bottom R a and a R top.
    ok, wit = True, None
    for a in range(A.n):
        if not P.holds(A.bottom, a) or not P.holds(a, A.top):
            ok, wit = False, a
            break
    rep.check("bounds", ok, witness=wit)

    # (3) a R b and a' R b iff (a \\/ a') R b.
    ok, wit = True, None
    for a in range(A.n):
        for a2 in range(A.n):
            j = A.join[a][a2]
            if (P.rel[a] & P.rel[a2]) != P.rel[j]:
                ok, wit = False, (a, a2)
                break
        if not ok:
            break
    rep.check("join-compatibility", ok, witness=wit)

    # (4) a R b and a R b' iff a R (b /\\ b').
    ok, wit = True, None
    for a in range(A.n):
        for b in range(A.n):
            for b2 in range(A.n):
                lhs = P.holds(a, b) and P.holds(a, b2)
                if lhs != P.holds(a, A.meet[b][b2]):
                    ok, wit = False, (a, b, b2)
                    break
            if not ok:
                break
        if not ok:
            break
    rep.check("meet-compatibility", ok, witness=wit)

    # (5) a R (b \\/ c) implies a R (b' \\/ c') for some b' R b, c' R c.
    # The pair (b, c) itself is tried first: it witnesses immediately
    # whenever R is reflexive below the order, e.g. R = <=.
    ok, wit = True, None
    for a in range(A.n):
        for b in range(A.n):
            b_cands = [b] + [x for x in range(A.n) if x != b]
            for c in range(A.n):
                if not P.holds(a, A.join[b][c]):
                    continue
                found = False
                for b2 in b_cands:
                    if not P.holds(b2, b):
                        continue
                    if P.holds(c, c) and P.holds(a, A.join[b2][c]):
                        found = True
                        break
                    for c2 in range(A.n):
                        if P.holds(c2, c) and P.holds(a, A.join[b2][c2]):
                            found = True
                            break
                    if found:
                        break
                if not found:
                    ok, wit = False, (a, b, c)
                    break
            if not ok:
                break
        if not ok:
            break
    rep.check("interpolation", ok, witness=wit)
    return rep


def _require_axioms(P):
    rep = check_axioms(P.base, P.rel)
    if not rep.ok():
        fail = rep.failures()[0]
        raise AxiomsFail(fail.name, fail.witness)
    return rep


def round_ideal_masks(P):
    """Ideals whose every member is related to a further member."""
    A = P.base
    out = []
    for imask in all_ideals(A):
        if all(imask & P.rel[a] for a in bits(imask)):
            out.append(imask)
    return tuple(out)


def round_filter_masks(P):
    A = P.base
    out = []
    for fmask in all_filters(A):
        if all(any(P.holds(b, a) for b in bits(fmask)) for a in bits(fmask)):
            out.append(fmask)
    return tuple(out)


def round_ideals(P):
    """The round-ideal frame, inclusion-ordered, with its masks.

    Asserts the frame law and local compactness, and that the round
    filters (reverse inclusion) agree with the Scott-open filters of
    the frame via F -> {I : I meets F}.
    """
    _require_axioms(P)
    masks = round_ideal_masks(P)
    lat = lattice_from_inclusion(masks)
    rep = Report(subject=f"round-ideals(n={P.base.n})")
    rep.check("frame", is_frame(lat))
    rep.check("locally-compact", is_locally_compact(lat))

    rfs = round_filter_masks(P)
    so = scott_open_poset(lat)
    images = []
    ok, wit = True, None
    for fmask in rfs:
        m = 0
        for ii, imask in enumerate(masks):
            if imask & fmask:
                m |= 1 << ii
        images.append(m)
        if m not in so.filters:
            ok, wit = False, fmask
            break
    rep.check("round-filters-map-to-scott-open", ok, witness=wit)
    if ok:
        rep.check(
            "round-filter-bijection",
            len(set(images)) == len(rfs) == len(so.filters),
            witness=(len(rfs), len(set(images)), len(so.filters)),
        )
        ok2, wit2 = True, None
        for x in range(len(rfs)):
            for y in range(len(rfs)):
                if (rfs[y] & ~rfs[x] == 0) != (images[y] & ~images[x] == 0):
                    ok2, wit2 = False, (x, y)
                    break
            if not ok2:
                break
        rep.check("round-filter-order", ok2, witness=wit2)
    return lat, masks, rep


def proximity_canonical_extension(P):
    """a -> {b : b R a} into the extension of the round-ideal frame.

    Returns (bundle, report). The report covers: each image being a
    round ideal, the map being a lattice homomorphism, the bundle being
    the canonical extension of the round-ideal frame, and density and
    compactness for the composite stated through round filters and
    round ideals.
    """
    from .canext import canonical_extension, verify_compact, verify_dense

    _require_axioms(P)
    A = P.base
    lat, masks, rrep = round_ideals(P)
    rep = Report(subject=f"proximity-canext(n={A.n})")
    rep.extend(rrep, prefix="ridl/")
    index = {m: i for i, m in enumerate(masks)}

    cols = [0] * A.n
    for b in range(A.n):
        for a in bits(P.rel[b]):
            cols[a] |= 1 << b
    ok, wit = True, None
    ideal_of = []
    for a in range(A.n):
        if cols[a] not in index:
            ok, wit = False, a
            ideal_of.append(None)
        else:
            ideal_of.append(index[cols[a]])
    rep.check("images-are-round-ideals", ok, witness=wit)
    if not ok:
        return None, rep

    ok, wit = True, None
    for a in range(A.n):
        for b in range(A.n):
            if ideal_of[A.meet[a][b]] != lat.meet[ideal_of[a]][ideal_of[b]]:
                ok, wit = False, ("meet", a, b)
                break
            if ideal_of[A.join[a][b]] != lat.join[ideal_of[a]][ideal_of[b]]:
                ok, wit = False, ("join", a, b)
                break
        if not ok:
            break
    ok = ok and ideal_of[A.bottom] == lat.bottom and ideal_of[A.top] == lat.top
    rep.check("ideal-map-lattice-hom", ok, witness=wit)

    bundle = canonical_extension(lat)
    rep.check("frame-extension-dense", verify_dense(bundle).ok())
    rep.check("frame-extension-compact", verify_compact(bundle).ok())

    ext = bundle.extension
    i_table = tuple(bundle.e_table[ideal_of[a]] for a in range(A.n))

    rfs = round_filter_masks(P)
    rids = masks
    f_meets = []
    for fmask in rfs:
        acc = ext.top
        for a in bits(fmask):
            acc = ext.meet[acc][i_table[a]]
        f_meets.append(acc)
    i_joins = []
    for imask in rids:
        acc = ext.bottom
        for a in bits(imask):
            acc = ext.join[acc][i_table[a]]
        i_joins.append(acc)

    ok, wit = True, None
    for fi, fmask in enumerate(rfs):
        for ii, imask in enumerate(rids):
            if ext.leq(f_meets[fi], i_joins[ii]) and not fmask & imask:
                ok, wit = False, (fmask, imask)
                break
        if not ok:
            break
    rep.check("round-compact", ok, witness=wit)

    ok, wit = True, None
    for u in range(ext.n):
        for v in range(ext.n):
            if ext.leq(u, v):
                continue
            found = False
            for fi in range(len(rfs)):
                if not ext.leq(f_meets[fi], u):
                    continue
                for ii in range(len(rids)):
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
    rep.check("round-dense", ok, witness=wit)

    soA = scott_open_poset(A)
    eso = []
    for fmask in soA.filters:
        acc = ext.top
        for a in bits(fmask):
            acc = ext.meet[acc][i_table[a]]
        eso.append(acc)
    out_bundle = type(bundle)(
        source=A,
        extension=ext,
        e_table=i_table,
        so_poset=soA,
        e_so_table=tuple(eso),
        provenance="round-ideal-completion",
        polarity=None,
    )
    return out_bundle, rep


def interior_derived_relation(B, interior_table):
    """A candidate proximity relation on a Boolean algebra from an
    interior-like map: a R b iff a <= interior(b). Instances are only
    used after check_axioms admits them."""
    rel = []
    for a in range(B.n):
        m = 0
        for b in range(B.n):
            if B.leq(a, interior_table[b]):
                m |= 1 << b
        rel.append(m)
    return tuple(rel)
