"""Nuclei, the sublocale coframe, and the structure theory built on it.

Sublocales are enumerated as carriers: subsets containing the top,
closed under binary meets, and closed under Heyting implication from
arbitrary elements. The derived nucleus of a carrier sends x to the
meet of the members above it. Open and closed sublocales, fitted
intersections, the compact-fitted correspondence with Scott-open
filters, the separation criterion equivalent to injectivity of the
extension map, the lattice of joins of closed sublocales, and the
Boolean identification of that lattice with the canonical extension
all live here.
"""

from functools import lru_cache

from .bits import bits
from .errors import NotAFrame, NotBoolean, NotPerfectOnto, SizeBound
from .filters import all_upset_masks, scott_open_poset
from .lattice import (
    FiniteLattice,
    find_isomorphism,
    is_boolean,
    is_frame,
    is_subfit,
    lattice_from_inclusion,
)
from .report import Report

SUBLOCALE_BOUND = 16  # carrier sweep is 2^(n-1); keep it desk-scale


def sublocale_violation(L, mask):
    """None when mask is a sublocale carrier of L, else a witness."""
    if not L.heyting_valid:
        raise NotAFrame("sublocale machinery needs a valid Heyting table")
    if not (mask >> L.top) & 1:
        return ("missing-top", L.top)
    members = list(bits(mask))
    for s in members:
        for t in members:
            if not (mask >> L.meet[s][t]) & 1:
                return ("not-meet-closed", (s, t))
    for x in range(L.n):
        for s in members:
            if not (mask >> L.heyting[x][s]) & 1:
                return ("not-implication-closed", (x, s))
    return None


def is_sublocale_mask(L, mask):
    return sublocale_violation(L, mask) is None


def nucleus_table(L, mask):
    """nu(x) = meet of the carrier members above x."""
    out = []
    for x in range(L.n):
        acc = L.top
        for s in bits(mask & L.up[x]):
            acc = L.meet[acc][s]
        out.append(acc)
    return tuple(out)


def nucleus_violation(L, table):
    """Check the four nucleus laws; None when all hold."""
    for x in range(L.n):
        if not L.leq(x, table[x]):
            return ("not-inflationary", x)
        if table[table[x]] != table[x]:
            return ("not-idempotent", x)
    for x in range(L.n):
        for y in range(L.n):
            if L.leq(x, y) and not L.leq(table[x], table[y]):
                return ("not-monotone", (x, y))
            if table[L.meet[x][y]] != L.meet[table[x]][table[y]]:
                return ("not-meet-preserving", (x, y))
    return None


@lru_cache(maxsize=None)
def all_sublocale_masks(L):
    """Every sublocale carrier, by sweeping the 2^(n-1) subsets with the
    top forced in. Bounded at SUBLOCALE_BOUND elements."""
    if L.n > SUBLOCALE_BOUND:
        raise SizeBound(L.n, SUBLOCALE_BOUND, "sublocale carrier sweep")
    out = []
    rest = [i for i in range(L.n) if i != L.top]
    top_bit = 1 << L.top
    for S in range(1 << len(rest)):
        mask = top_bit
        for k in bits(S):
            mask |= 1 << rest[k]
        if is_sublocale_mask(L, mask):
            out.append(mask)
    return tuple(sorted(out))


def all_nuclei(L):
    """Nucleus tables derived from the carriers, carrier-aligned."""
    return tuple(nucleus_table(L, m) for m in all_sublocale_masks(L))


def sublocale_coframe(L):
    """Sl(L) ordered by inclusion, with carriers aligned to elements.

    Asserts the coframe law for the result and that meets are
    intersections; both are verified, not assumed.
    """
    masks = all_sublocale_masks(L)
    lat = lattice_from_inclusion(masks)
    if not is_frame(lat.op()):
        raise NotAFrame("sublocale lattice failed the coframe law")
    for i in range(lat.n):
        for j in range(lat.n):
            if masks[lat.meet[i][j]] != masks[i] & masks[j]:
                raise NotAFrame(f"sublocale meet is not intersection at {(i, j)}")
    return lat, masks


def open_sublocale(L, a):
    """U_a: fixpoints of x -> (a -> x)."""
    mask = 0
    for x in range(L.n):
        if L.imp(a, x) == x:
            mask |= 1 << x
    return mask


def closed_sublocale(L, a):
    """c(a): fixpoints of x -> a \\/ x, which is the upset of a."""
    mask = 0
    for x in range(L.n):
        if L.join[a][x] == x:
            mask |= 1 << x
    return mask


def join_of_sublocales(L, masks):
    """Join in Sl(L): all meets of subsets of the union.

    Computed by closing the union (plus the empty meet) under binary
    meets; agreement with the containment-order join in the enumerated
    Sl(L) is a test obligation on small frames.
    """
    union = 1 << L.top
    for m in masks:
        union |= m
    members = set(bits(union))
    changed = True
    while changed:
        changed = False
        for s in list(members):
            for t in list(members):
                mt = L.meet[s][t]
                if mt not in members:
                    members.add(mt)
                    changed = True
    out = 0
    for s in members:
        out |= 1 << s
    return out


def complements_report(L):
    """Open and closed sublocales of the same element are complements."""
    rep = Report(subject=f"open-closed-complements(n={L.n})")
    full = (1 << L.n) - 1
    ok, wit = True, None
    for a in range(L.n):
        u, c = open_sublocale(L, a), closed_sublocale(L, a)
        if u & c != 1 << L.top or join_of_sublocales(L, [u, c]) != full:
            ok, wit = False, a
            break
    rep.check("complement-pairs", ok, witness=wit)
    return rep


# -- fitted and compact sublocales --------------------------------------


def fitted_sublocales(L):
    """Intersections of open sublocales, computed literally as the
    closure of the open family under intersection (the empty
    intersection is the whole frame)."""
    opens = [open_sublocale(L, a) for a in range(L.n)]
    masks = set(opens) | {(1 << L.n) - 1}
    changed = True
    while changed:
        changed = False
        for a in list(masks):
            for b in list(masks):
                m = a & b
                if m not in masks:
                    masks.add(m)
                    changed = True
    return tuple(sorted(masks))


def sublocale_lattice_of(L, mask):
    """A carrier with the inherited order as a FiniteLattice, plus the
    element list aligning its indices with host elements."""
    elems = sorted(bits(mask))
    pos = {e: i for i, e in enumerate(elems)}
    up = []
    for e in elems:
        row = 0
        for f in elems:
            if L.leq(e, f):
                row |= 1 << pos[f]
        up.append(row)
    return FiniteLattice(tuple(up)), elems


def sublocale_is_compact(L, mask):
    """Compactness of the carrier as a frame in the inherited order."""
    from .lattice import lattice_is_compact

    lat, _ = sublocale_lattice_of(L, mask)
    return lattice_is_compact(lat)


def fitted_and_compact(L):
    """Compact fitted sublocales with the Scott-open filter bijection.

    Returns (report, pairs) where pairs aligns each Scott-open filter
    mask with its fitted carrier.
    """
    if L.n > SUBLOCALE_BOUND:
        raise SizeBound(L.n, SUBLOCALE_BOUND, "fitted-sublocale analysis")
    rep = Report(subject=f"compact-fitted(n={L.n})")
    fitted = fitted_sublocales(L)
    compact_fitted = tuple(m for m in fitted if sublocale_is_compact(L, m))
    so = scott_open_poset(L)
    full = (1 << L.n) - 1
    pairs = []
    ok, wit = True, None
    for fmask in so.filters:
        inter = full
        for a in bits(fmask):
            inter &= open_sublocale(L, a)
        pairs.append((fmask, inter))
        if inter not in compact_fitted:
            ok, wit = False, fmask
            break
    rep.check("filters-land-in-compact-fitted", ok, witness=wit)
    rep.check(
        "bijection-counts",
        len({k for _, k in pairs}) == len(so.filters) == len(compact_fitted),
        witness=(len(so.filters), len({k for _, k in pairs}), len(compact_fitted)),
    )
    ok, wit = True, None
    for fmask, kmask in pairs:
        back = 0
        for a in range(L.n):
            if kmask & ~open_sublocale(L, a) == 0:
                back |= 1 << a
        if back != fmask:
            ok, wit = False, (fmask, kmask)
            break
    rep.check("roundtrip-filter", ok, witness=wit)
    ok, wit = True, None
    for kmask in compact_fitted:
        fmask = 0
        for a in range(L.n):
            if kmask & ~open_sublocale(L, a) == 0:
                fmask |= 1 << a
        inter = full
        for a in bits(fmask):
            inter &= open_sublocale(L, a)
        if fmask not in so.filters or inter != kmask:
            ok, wit = False, kmask
            break
    rep.check("roundtrip-sublocale", ok, witness=wit)
    return rep, tuple(pairs)


# -- injectivity criterion ----------------------------------------------


def separation_condition(L):
    """U_a subseteq U_b iff every compact fitted K inside U_a is inside
    U_b, over all pairs of open sublocales."""
    _, pairs = fitted_and_compact(L)
    compact_fitted = [k for _, k in pairs]
    for a in range(L.n):
        ua = open_sublocale(L, a)
        for b in range(L.n):
            ub = open_sublocale(L, b)
            lhs = ua & ~ub == 0
            rhs = all(k & ~ub == 0 for k in compact_fitted if k & ~ua == 0)
            if lhs != rhs:
                return False
    return True


def extension_injective(L):
    from .canext import canonical_extension

    b = canonical_extension(L)
    return len(set(b.e_table)) == L.n


def injectivity_criterion(L, checkers=None):
    """Separation through compact fitted sublocales is equivalent to
    injectivity of the extension map; both sides evaluated
    independently. checkers supports fault-injection harnesses."""
    if L.n > SUBLOCALE_BOUND:
        raise SizeBound(L.n, SUBLOCALE_BOUND, "injectivity criterion")
    if checkers is None:
        checkers = (separation_condition, extension_injective)
    rep = Report(subject=f"injectivity-criterion(n={L.n})")
    sep = bool(checkers[0](L))
    inj = bool(checkers[1](L))
    rep.check("separation-condition", sep)
    rep.check("extension-injective", inj)
    rep.check("criterion-equivalence", sep == inj, witness=(sep, inj))
    return rep


# -- joins of closed sublocales ------------------------------------------


def sc_lattice(L):
    """The sublocales that are joins of closed sublocales, as a lattice.

    Every join of a family of upsets is the meet-closure of an upset,
    so the enumeration runs over the upsets of L.
    """
    if L.n > SUBLOCALE_BOUND:
        raise SizeBound(L.n, SUBLOCALE_BOUND, "Sc enumeration")
    masks = set()
    for upset in all_upset_masks(L):
        masks.add(join_of_sublocales(L, [upset]))
    masks = tuple(sorted(masks))
    for m in masks:
        w = sublocale_violation(L, m)
        if w is not None:
            raise NotAFrame(f"Sc member is not a sublocale: {w!r}")
    return lattice_from_inclusion(masks), masks


def boolean_theorem_report(B):
    """For a Boolean algebra B, the joins-of-closed-sublocales lattice
    of its ideal frame is the canonical extension of B.

    Also checks the essential-extension embedding condition for the
    witnessing map (between any two separated extension elements there
    is a sandwiching pair from the embedded frame), with the hypotheses
    recorded separately from the conclusion.
    """
    if not is_boolean(B):
        raise NotBoolean("the Sc identification is stated for Boolean algebras")
    from .canext import dlat_canonical_extension
    from .filters import idl_lattice

    rep = Report(subject=f"boolean-sc-theorem(n={B.n})")
    idl, imasks = idl_lattice(B)
    bundle, drep = dlat_canonical_extension(B)
    rep.extend(drep, prefix="dlat/")
    ext = bundle.extension
    sc, scmasks = sc_lattice(idl)
    iso = find_isomorphism(sc, ext)
    rep.check("sc-isomorphic-to-extension", iso is not None, witness=(sc.n, ext.n))

    # Hypotheses of the embedding condition.
    subfit_ok, subfit_wit = is_subfit(idl)
    rep.check("hypothesis-ideal-frame-subfit", subfit_ok, witness=subfit_wit)
    rep.check("hypothesis-extension-boolean", is_boolean(ext))

    # e: Idl(B) -> extension is the inner embedding of the bundle.
    from .canext import canonical_extension

    inner = canonical_extension(idl)
    e = inner.e_table
    ok, wit = True, None
    for x in range(ext.n):
        for y in range(ext.n):
            if not (ext.leq(x, y) and x != y):
                continue
            found = False
            for a in range(idl.n):
                for b in range(idl.n):
                    if not (idl.leq(a, b) and a != b):
                        continue
                    if ext.leq(ext.meet[x][e[b]], e[a]) and ext.leq(
                        e[b], ext.join[y][e[a]]
                    ):
                        found = True
                        break
                if found:
                    break
            if not found:
                ok, wit = False, (x, y)
                break
        if not ok:
            break
    rep.check("embedding-condition", ok, witness=wit)
    return rep


# -- perfect sublocale lifting -------------------------------------------


def quotient_map_of(L, mask):
    """The onto frame homomorphism of a sublocale carrier: the nucleus
    corestricted to the carrier lattice."""
    sub, elems = sublocale_lattice_of(L, mask)
    pos = {e: i for i, e in enumerate(elems)}
    nu = nucleus_table(L, mask)
    from .maps import LatticeMap

    return LatticeMap(L, sub, tuple(pos[nu[x]] for x in range(L.n))), sub, elems


def perfect_sublocale_lift(h, bS, bT):
    """For a perfect onto frame homomorphism, the lift is onto and the
    image of its right adjoint is a sublocale carrier of the extension
    isomorphic to the extension of the quotient. Returns
    (report, carrier_mask)."""
    from .maps import classify, lift_perfect_hom, right_adjoint

    flags = classify(h)
    if not (flags.frame_hom and flags.perfect):
        raise NotPerfectOnto("lift needs a perfect frame homomorphism")
    if len(set(h.table)) != h.target.n:
        raise NotPerfectOnto("homomorphism is not onto")
    rep = Report(subject=f"perfect-sublocale-lift({h.source.n}->>{h.target.n})")
    hd, lrep = lift_perfect_hom(h, bS, bT)
    rep.extend(lrep, prefix="lift/")
    onto = len(set(hd.table)) == bT.extension.n
    rep.check("lift-onto", onto, witness=len(set(hd.table)))
    radj = right_adjoint(hd)
    rep.check("lift-has-right-adjoint", radj is not None)
    carrier = 0
    if radj is not None:
        for v in range(bT.extension.n):
            carrier |= 1 << radj.table[v]
        rep.check(
            "image-is-sublocale",
            sublocale_violation(bS.extension, carrier) is None,
            witness=sublocale_violation(bS.extension, carrier),
        )
        sub, _ = sublocale_lattice_of(bS.extension, carrier)
        rep.check(
            "image-isomorphic-to-quotient-extension",
            find_isomorphism(sub, bT.extension) is not None,
            witness=(sub.n, bT.extension.n),
        )
    return rep, carrier
