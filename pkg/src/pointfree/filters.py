"""Filters, ideals, Filt(L) and Idl(L), and Scott-open filter recognition.

Filters are stored extensionally as bitmasks so that the general
definitions (including Scott-openness) run literally; the finite
degeneracies (every filter principal, every filter Scott-open) are
asserted as outcomes in the tests, never baked into the computations.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .bits import bits
from .errors import NotAFilter, NotAnIdeal, NotAFrame
from .lattice import (
    exhaustion_bound,
    FiniteLattice,
    directed_masks_for_checks,
    is_frame,
    lattice_from_inclusion,
)


@dataclass(frozen=True)
class FilterSet:
    host: FiniteLattice
    members: int

    def __post_init__(self):
        w = filter_violation(self.host, self.members)
        if w is not None:
            raise NotAFilter(w)


@dataclass(frozen=True)
class IdealSet:
    host: FiniteLattice
    members: int

    def __post_init__(self):
        w = filter_violation(self.host.op(), self.members)
        if w is not None:
            raise NotAnIdeal(w)


def filter_violation(L, mask):
    """None when mask is a filter of L, else a witness.

    Checks: nonempty with top, upward closed, closed under binary meets.
    """
    if not (mask >> L.top) & 1:
        return ("missing-top", L.top)
    for a in bits(mask):
        if L.up[a] & ~mask:
            return ("not-upset", a)
    elems = list(bits(mask))
    for a, b in combinations(elems, 2):
        if not (mask >> L.meet[a][b]) & 1:
            return ("not-meet-closed", (a, b))
    return None


def is_filter_mask(L, mask):
    return filter_violation(L, mask) is None


def is_ideal_mask(L, mask):
    return filter_violation(L.op(), mask) is None


def principal_filter(L, a):
    return L.up[a]


def principal_ideal(L, a):
    return L.dn[a]


@lru_cache(maxsize=None)
def all_upset_masks(L):
    """All upsets of L, as masks sorted ascending.

    Generated from their antichains of minimal elements, so the cost is
    the number of upsets rather than 2^n.
    """
    n = L.n
    out = []

    def rec(start, chosen, upset):
        out.append(upset)
        for i in range(start, n):
            if (upset >> i) & 1:
                continue
            if L.up[i] & chosen:
                continue
            rec(i + 1, chosen | (1 << i), upset | L.up[i])

    rec(0, 0, 0)
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def all_filters(L):
    """Every filter of L (masks, ascending). Count equals L.n for finite
    lattices since all filters are principal; callers assert this."""
    out = []
    for mask in all_upset_masks(L):
        if mask and is_filter_mask(L, mask):
            out.append(mask)
    return tuple(out)


def all_ideals(L):
    """Every ideal of L: exactly the filters of the opposite lattice,
    over the same element indices."""
    return all_filters(L.op())


@lru_cache(maxsize=None)
def filter_meet(L, fmask, gmask):
    """F /\\ G = {f /\\ g : f in F, g in G} (meet in reverse inclusion).

    Over a distributive lattice the set equals the upward closure of
    the meets of the minimal members (every x above such a meet factors
    as (x v f0) /\\ (x v g0)), which is much cheaper; the literal
    double sweep remains for non-distributive hosts.
    """
    from .lattice import distributivity_witness

    if distributivity_witness(L) is None:
        out = 0
        for f in _minimal_members(L, fmask):
            for g in _minimal_members(L, gmask):
                out |= L.up[L.meet[f][g]]
        return out
    out = 0
    for f in bits(fmask):
        for g in bits(gmask):
            out |= 1 << L.meet[f][g]
    return out


def _minimal_members(L, mask):
    return [a for a in bits(mask) if not mask & L.dn[a] & ~(1 << a)]


def filter_join(L, fmask, gmask):
    """F \\/ G = F intersect G (join in reverse inclusion)."""
    return fmask & gmask


def is_scott_open(L, fmask):
    """Run the Scott-openness definition over directed subsets.

    Exhaustive over all directed subsets when L.n <= bound, otherwise
    over join-closures of <=3 generators, which is sufficient in a
    finite lattice (every directed set contains its join); the second
    component of the result records the mode.
    """
    w = filter_violation(L, fmask)
    if w is not None:
        raise NotAFilter(w)
    masks, note = directed_masks_for_checks(L)
    for D in masks:
        if (fmask >> L.join_of(D)) & 1 and not D & fmask:
            return False, note
    return True, note


@dataclass(frozen=True)
class ScottOpenFilterPoset:
    """All Scott-open filters of a frame, under reverse inclusion."""

    host: FiniteLattice
    filters: tuple          # masks, ascending
    lattice: FiniteLattice  # element i = filters[i], reverse inclusion
    bound_note: str | None = field(default=None, compare=False)

    def index_of(self, fmask):
        return self.filters.index(fmask)


@lru_cache(maxsize=None)
def scott_open_poset(L):
    if not is_frame(L):
        raise NotAFrame("Scott-open filter poset needs a frame")
    notes = []
    so = []
    for fmask in all_filters(L):
        ok, note = is_scott_open(L, fmask)
        if note:
            notes.append(note)
        if ok:
            so.append(fmask)
    so = tuple(sorted(so))
    # Reverse inclusion: F <= G iff F superset G.
    k = len(so)
    up = []
    for i in range(k):
        row = 0
        for j in range(k):
            if so[j] & ~so[i] == 0:
                row |= 1 << j
        up.append(row)
    lat = FiniteLattice(tuple(up))
    return ScottOpenFilterPoset(L, so, lat, notes[0] if notes else None)


@lru_cache(maxsize=None)
def filt_lattice(L):
    """Filt(L) as a FiniteLattice under reverse inclusion, plus its masks."""
    fs = all_filters(L)
    k = len(fs)
    up = []
    for i in range(k):
        row = 0
        for j in range(k):
            if fs[j] & ~fs[i] == 0:
                row |= 1 << j
        up.append(row)
    return FiniteLattice(tuple(up)), fs


@lru_cache(maxsize=None)
def idl_lattice(L):
    """Idl(L) as a FiniteLattice under inclusion, plus its masks."""
    ids = all_ideals(L)
    return lattice_from_inclusion(ids), ids


def filter_lattice_ops(L):
    """Verification report for the filter and ideal lattices of L.

    Confirms the computation formulas (filtered meet = directed union,
    F \\/ G = F intersect G, F /\\ G = {f /\\ g}), that Filt(L) is a
    coframe, and that Idl(L) is a frame.
    """
    from .report import Report

    rep = Report(subject=f"filter-lattice-ops(n={L.n})")
    filt, fmasks = filt_lattice(L)
    idl, imasks = idl_lattice(L)
    rep.check("filters-all-valid", all(is_filter_mask(L, f) for f in fmasks))
    rep.check("ideals-all-valid", all(is_ideal_mask(L, i) for i in imasks))

    ok, wit = True, None
    for i, f in enumerate(fmasks):
        for j, g in enumerate(fmasks):
            want_join = filter_join(L, f, g)
            got_join = fmasks[filt.join[i][j]]
            want_meet = filter_meet(L, f, g)
            got_meet = fmasks[filt.meet[i][j]]
            if want_join != got_join or want_meet != got_meet:
                ok, wit = False, (f, g)
                break
        if not ok:
            break
    rep.check("binary-formulas", ok, witness=wit)

    # Filtered meets are directed unions: families directed under
    # inclusion have their Filt-meet equal to the union.
    ok, wit = True, None
    idx = {f: i for i, f in enumerate(fmasks)}
    for size in range(1, 4):
        for fam in combinations(range(len(fmasks)), size):
            if not _inclusion_directed(fmasks, fam):
                continue
            union = 0
            acc = filt.top
            for i in fam:
                union |= fmasks[i]
                acc = filt.meet[acc][i]
            if union not in idx or idx[union] != acc:
                ok, wit = False, fam
                break
        if not ok:
            break
    rep.check("filtered-meet-is-directed-union", ok, witness=wit)

    rep.check("filt-is-coframe", is_frame(filt.op()))
    rep.check("idl-is-frame", is_frame(idl))
    return rep


def _inclusion_directed(fmasks, fam):
    for i in fam:
        for j in fam:
            if not any(
                fmasks[i] & ~fmasks[k] == 0 and fmasks[j] & ~fmasks[k] == 0
                for k in fam
            ):
                return False
    return True


def codirected_families_for_checks(so):
    """Filtered (downward directed in reverse inclusion) families of
    Scott-open filters: exhaustive for small hosts, <=3-generator
    closures under the binary Filt-meet otherwise.

    Returns (families, bound_note); each family is a tuple of indices
    into so.filters.
    """
    L = so.host
    k = len(so.filters)
    idx = {f: i for i, f in enumerate(so.filters)}
    if L.n <= exhaustion_bound():
        # covers[i][j] = indices of filters containing both F_i and F_j;
        # a subset is filtered iff every pair meets it through covers.
        covers = [
            [
                sum(
                    1 << h
                    for h in range(k)
                    if (so.filters[i] | so.filters[j]) & ~so.filters[h] == 0
                )
                for j in range(k)
            ]
            for i in range(k)
        ]
        fams = []
        for S in range(1, 1 << k):
            members = list(bits(S))
            if all(S & covers[i][j] for i in members for j in members):
                fams.append(tuple(members))
        return fams, None
    fams = set()
    for size in range(1, 4):
        for gen in combinations(range(k), size):
            fam = set(gen)
            changed = True
            while changed:
                changed = False
                for i in list(fam):
                    for j in list(fam):
                        m = filter_meet(L, so.filters[i], so.filters[j])
                        mi = idx[m]
                        if mi not in fam:
                            fam.add(mi)
                            changed = True
            fams.add(tuple(sorted(fam)))
    return sorted(fams), f"filtered families generated by <=3 filters (carrier {L.n} > {exhaustion_bound()})"
