"""Finite lattices with exact order-theoretic predicates.

Elements are dense indices 0..n-1. The order is stored as per-element
bitmasks (up[i] = set of elements above i), and meet/join/Heyting tables
are derived once at construction. All predicates run the definitions
literally; subset sweeps that would cost 2^n are exhaustive up to
EXHAUSTIVE_BOUND elements and fall back to finite-equivalent
characterisations above it, flagging the bound.
"""

from functools import lru_cache
from itertools import combinations, combinations_with_replacement

from .bits import bits, mask_of, popcount
from .errors import NotALattice, NotAPartialOrder, NotAFrame

# 2^n sweeps (frame law, complete distributivity, directed-subset
# enumeration) stay exhaustive up to this many elements.
EXHAUSTIVE_BOUND = 12


def exhaustion_bound():
    return EXHAUSTIVE_BOUND


def set_exhaustion_bound(n):
    """Override the exhaustion ceiling, clearing every cache in the
    package since cached results depend on it."""
    global EXHAUSTIVE_BOUND
    EXHAUSTIVE_BOUND = n
    import sys

    for name, mod in list(sys.modules.items()):
        if name.startswith("pointfree"):
            for attr in vars(mod).values():
                if callable(attr) and hasattr(attr, "cache_clear"):
                    attr.cache_clear()


class FiniteLattice:
    """Immutable finite lattice on elements 0..n-1.

    up[i] is the bitmask of {j : i <= j} and dn[i] the bitmask of
    {j : j <= i}. meet/join are n x n tuples of element indices. The
    Heyting table stores the largest z with z /\\ x <= y when that
    element exists for every pair; heyting_valid records whether it
    does (true exactly when the lattice is distributive).
    """

    __slots__ = (
        "n", "up", "dn", "meet", "join", "bottom", "top", "names",
        "heyting", "heyting_valid", "_hash", "_covers", "_op",
        "_heights", "_ji", "_mi",
    )

    def __init__(self, up, names=None):
        n = len(up)
        if n == 0:
            raise NotALattice((None, None), "carrier", "lattice must be non-empty")
        up = tuple(up)
        full = (1 << n) - 1
        dn = [0] * n
        for i in range(n):
            row = up[i]
            if row & ~full:
                raise NotAPartialOrder(i, "order mask out of range")
            if not (row >> i) & 1:
                raise NotAPartialOrder(i, "order not reflexive")
            for j in bits(row):
                if up[j] & ~row:
                    raise NotAPartialOrder((i, j), "order not transitive")
                if i != j and (up[j] >> i) & 1:
                    raise NotAPartialOrder((i, j), "order not antisymmetric")
                dn[j] |= 1 << i
        self.n = n
        self.up = up
        self.dn = tuple(dn)
        self.names = tuple(names) if names is not None else None
        if self.names is not None and len(self.names) != n:
            raise NotAPartialOrder(None, "names length mismatch")

        meet = []
        join = []
        for x in range(n):
            mrow = []
            jrow = []
            for y in range(n):
                commons = dn[x] & dn[y]
                m = _greatest(commons, dn)
                if m is None:
                    raise NotALattice((x, y), "meet")
                mrow.append(m)
                uppers = up[x] & up[y]
                j = _least(uppers, up)
                if j is None:
                    raise NotALattice((x, y), "join")
                jrow.append(j)
            meet.append(tuple(mrow))
            join.append(tuple(jrow))
        self.meet = tuple(meet)
        self.join = tuple(join)
        self.bottom = _least(full, up)
        self.top = _greatest(full, dn)
        if self.bottom is None or self.top is None:
            raise NotALattice((None, None), "bound", "missing top or bottom")

        # Heyting: x -> y = join of {z : z /\ x <= y}; valid iff that
        # join itself satisfies the residuation inequality everywhere.
        heyting = []
        valid = True
        for x in range(n):
            row = []
            for y in range(n):
                cand = self.bottom
                for z in range(n):
                    if (dn[y] >> meet[z][x]) & 1:
                        cand = join[cand][z]
                if not (dn[y] >> meet[cand][x]) & 1:
                    valid = False
                row.append(cand)
            heyting.append(tuple(row))
        self.heyting = tuple(heyting)
        self.heyting_valid = valid

        self._hash = hash((n, up))
        self._covers = None
        self._op = None
        self._heights = None
        self._ji = None
        self._mi = None

    # -- order and operations ------------------------------------------

    def leq(self, i, j):
        return (self.up[i] >> j) & 1 == 1

    def meet_of(self, mask):
        """Meet of a subset given as a bitmask (empty meet = top)."""
        acc = self.top
        for i in bits(mask):
            acc = self.meet[acc][i]
        return acc

    def join_of(self, mask):
        acc = self.bottom
        for i in bits(mask):
            acc = self.join[acc][i]
        return acc

    def imp(self, x, y):
        if not self.heyting_valid:
            raise NotAFrame("Heyting table invalid: lattice is not distributive")
        return self.heyting[x][y]

    # -- derived structure ---------------------------------------------

    def op(self):
        """The opposite lattice (order reversed), cached."""
        if self._op is None:
            other = FiniteLattice(self.dn, self.names)
            other._op = self
            self._op = other
        return self._op

    def cover_pairs(self):
        """All (i, j) with j covering i, ascending."""
        if self._covers is None:
            out = []
            for i in range(self.n):
                strict = self.up[i] & ~(1 << i)
                for j in bits(strict):
                    between = strict & self.dn[j] & ~(1 << j)
                    if not between:
                        out.append((i, j))
            self._covers = tuple(out)
        return self._covers

    def lower_cover_mask(self, i):
        m = 0
        for a, b in self.cover_pairs():
            if b == i:
                m |= 1 << a
        return m

    def heights(self):
        """heights()[i] = length of the longest chain from bottom to i."""
        if self._heights is None:
            order = sorted(range(self.n), key=lambda i: (popcount(self.dn[i]), i))
            h = [0] * self.n
            for i in order:
                below = self.dn[i] & ~(1 << i)
                h[i] = max((h[j] + 1 for j in bits(below)), default=0)
            self._heights = tuple(h)
        return self._heights

    def join_irreducible_mask(self):
        """Elements with exactly one lower cover."""
        if self._ji is None:
            m = 0
            for i in range(self.n):
                if popcount(self.lower_cover_mask(i)) == 1:
                    m |= 1 << i
            self._ji = m
        return self._ji

    def linear_extension(self):
        return tuple(sorted(range(self.n), key=lambda i: (popcount(self.dn[i]), i)))

    # -- identity -------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, FiniteLattice)
            and self.n == other.n
            and self.up == other.up
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FiniteLattice(n={self.n})"

    def name_of(self, i):
        return self.names[i] if self.names is not None else str(i)


def _greatest(mask, dn):
    for m in bits(mask):
        if not mask & ~dn[m]:
            return m
    return None


def _least(mask, up):
    for m in bits(mask):
        if not mask & ~up[m]:
            return m
    return None


# -- construction -------------------------------------------------------


def build_lattice(n, pairs, mode="cover", names=None):
    """Build a FiniteLattice from relation pairs.

    In cover mode the pairs are read as a Hasse relation; in leq mode as
    any relation whose reflexive-transitive closure should be the order.
    Both go through the same closure; the distinction is documentation
    of intent. Raises NotAPartialOrder on a cycle and NotALattice when
    some pair has no unique meet or join.
    """
    if mode not in ("cover", "leq"):
        raise ValueError(f"unknown mode {mode!r}")
    up = [1 << i for i in range(n)]
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n):
            raise NotAPartialOrder((i, j), "pair index out of range")
        up[i] |= 1 << j
    # Reflexive-transitive closure by iterated squaring of the reachability rows.
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = up[i]
            for j in bits(up[i]):
                acc |= up[j]
            if acc != up[i]:
                up[i] = acc
                changed = True
    for i in range(n):
        for j in bits(up[i]):
            if i != j and (up[j] >> i) & 1:
                raise NotAPartialOrder((i, j), "cycle detected")
    return FiniteLattice(tuple(up), names)


def lattice_from_inclusion(masks, names=None):
    """Lattice on a family of bitmasks ordered by set inclusion.

    The masks must be distinct; element i of the result corresponds to
    masks[i]. Raises NotALattice if the family is not a lattice under
    inclusion.
    """
    k = len(masks)
    up = []
    for i in range(k):
        row = 0
        mi = masks[i]
        for j in range(k):
            if mi & ~masks[j] == 0:
                row |= 1 << j
        up.append(row)
    return FiniteLattice(tuple(up), names)


# -- predicates ---------------------------------------------------------


@lru_cache(maxsize=None)
def distributivity_witness(L):
    """First triple (a, b, c) violating a /\\ (b \\/ c) = (a /\\ b) \\/ (a /\\ c)."""
    meet, join = L.meet, L.join
    for a in range(L.n):
        for b in range(L.n):
            for c in range(L.n):
                if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]:
                    return (a, b, c)
    return None


def is_distributive(L):
    return distributivity_witness(L) is None


@lru_cache(maxsize=None)
def is_frame(L):
    """Frame law (\\/A) /\\ b = \\/(a /\\ b), all subsets A when n <= 12.

    For a finite lattice this agrees with triple distributivity, which
    is what the check falls back to above the exhaustion bound.
    """
    if L.n > EXHAUSTIVE_BOUND:
        return is_distributive(L)
    full = (1 << L.n) - 1
    joins = _subset_joins(L)
    meet, join = L.meet, L.join
    for A in range(full + 1):
        jA = joins[A]
        for b in range(L.n):
            lhs = meet[jA][b]
            rhs = L.bottom
            for a in bits(A):
                rhs = join[rhs][meet[a][b]]
            if lhs != rhs:
                return False
    return True


def _subset_joins(L):
    """joins[S] = join of subset S, for all 2^n subsets (n <= bound)."""
    full = (1 << L.n) - 1
    joins = [L.bottom] * (full + 1)
    for S in range(1, full + 1):
        low = S & -S
        joins[S] = L.join[joins[S ^ low]][low.bit_length() - 1]
    return joins


def is_boolean(L):
    for x in range(L.n):
        if complement_of(L, x) is None:
            return False
    return True


def complement_of(L, x):
    for c in range(L.n):
        if L.meet[x][c] == L.bottom and L.join[x][c] == L.top:
            return c
    return None


@lru_cache(maxsize=None)
def completely_join_prime_mask(L):
    """Bitmask of elements p with p <= \\/S implying p <= s for some s in S.

    Exhaustive over all subsets S up to the bound; above it the binary
    join-prime characterisation (equivalent for finite lattices) is used.
    """
    if L.n <= EXHAUSTIVE_BOUND:
        joins = _subset_joins(L)
        full = (1 << L.n) - 1
        out = 0
        for p in range(L.n):
            above = L.up[p]
            ok = True
            for S in range(full + 1):
                if (above >> joins[S]) & 1 and not S & above:
                    ok = False
                    break
            if ok:
                out |= 1 << p
        return out
    out = 0
    for p in range(L.n):
        if p == L.bottom:
            continue
        ok = True
        for a in range(L.n):
            for b in range(L.n):
                if L.leq(p, L.join[a][b]) and not L.leq(p, a) and not L.leq(p, b):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out |= 1 << p
    return out


def is_completely_distributive(L):
    """Every element is a join of completely join-prime elements."""
    primes = completely_join_prime_mask(L)
    for u in range(L.n):
        below = primes & L.dn[u]
        if L.join_of(below) != u:
            return False
    return True


# -- directed subsets and way-below ----------------------------------


@lru_cache(maxsize=None)
def directed_subset_masks(L):
    """All directed subsets (nonempty, pairwise bounded inside) as masks.

    Only available up to the exhaustion bound; callers above the bound
    use directed_families_from_generators instead.
    """
    if L.n > EXHAUSTIVE_BOUND:
        raise NotAFrame(f"directed-subset exhaustion bounded at {EXHAUSTIVE_BOUND}")
    out = []
    full = (1 << L.n) - 1
    for S in range(1, full + 1):
        if _is_directed(L, S):
            out.append(S)
    return tuple(out)


def _is_directed(L, S):
    elems = list(bits(S))
    for a, b in combinations_with_replacement(elems, 2):
        if not S & L.up[L.join[a][b]]:
            return False
    return True


@lru_cache(maxsize=None)
def directed_families_from_generators(L, k=3):
    """Directed families obtained by join-closing <=k generators.

    In a finite lattice every directed set contains its join, so families
    generated by small sets already exercise the directed-join behaviour;
    reports quote this bound whenever the full sweep is skipped.
    """
    seen = set()
    out = []
    elems = range(L.n)
    for size in range(1, k + 1):
        for gen in combinations(elems, size):
            fam = set(gen)
            frontier = list(gen)
            while frontier:
                new = []
                for a in fam.copy():
                    for b in frontier:
                        j = L.join[a][b]
                        if j not in fam:
                            fam.add(j)
                            new.append(j)
                frontier = new
            m = mask_of(fam)
            if m not in seen:
                seen.add(m)
                out.append(m)
    out.sort()
    return tuple(out)


def directed_masks_for_checks(L):
    """(masks, bound_note): exhaustive when small, generated otherwise."""
    if L.n <= EXHAUSTIVE_BOUND:
        return directed_subset_masks(L), None
    return (
        directed_families_from_generators(L),
        f"directed families generated by <=3 elements (carrier {L.n} > {EXHAUSTIVE_BOUND})",
    )


class WayBelowRelation:
    """wb stored as per-target masks: below_mask[a] = {c : c way-below a}."""

    __slots__ = ("host", "below_mask", "bound_note")

    def __init__(self, host, below_mask, bound_note=None):
        self.host = host
        self.below_mask = tuple(below_mask)
        self.bound_note = bound_note

    def holds(self, c, a):
        return (self.below_mask[a] >> c) & 1 == 1


@lru_cache(maxsize=None)
def way_below(L):
    """Compute c << a from the definition over directed subsets.

    c << a iff every directed D with a <= \\/D contains some d >= c. The
    sweep is exhaustive up to the bound and runs over join-closures of
    <=3 generators above it. Also cross-checks the Scott-open filter
    characterisation (c << a iff some Scott-open filter U has
    a in U subseteq up(c)); disagreement raises.
    """
    if not is_frame(L):
        raise NotAFrame("way-below is defined here for frames only")
    masks, note = directed_masks_for_checks(L)
    full = (1 << L.n) - 1
    below = [full] * L.n
    for D in masks:
        covered = 0
        for d in bits(D):
            covered |= L.dn[d]
        jD = L.join_of(D)
        for a in bits(L.dn[jD]):
            below[a] &= covered
    wb = WayBelowRelation(L, below, note)
    _check_scott_open_characterisation(L, wb)
    return wb


def _check_scott_open_characterisation(L, wb):
    from .filters import scott_open_poset  # cycle-free: filters imports nothing back

    so = scott_open_poset(L)
    for a in range(L.n):
        via_filters = 0
        for fmask in so.filters:
            if (fmask >> a) & 1:
                # U subseteq up(c) iff every member of U is above c
                for c in range(L.n):
                    if not fmask & ~L.up[c]:
                        via_filters |= 1 << c
        if via_filters != wb.below_mask[a]:
            raise NotAFrame(
                f"way-below disagrees with Scott-open filter characterisation at a={a}"
            )


def is_locally_compact(L):
    wb = way_below(L)
    return all(L.join_of(wb.below_mask[a]) == a for a in range(L.n))


def is_stably_locally_compact(L):
    if not is_locally_compact(L):
        return False
    wb = way_below(L)
    for a in range(L.n):
        for b in range(L.n):
            for c in range(L.n):
                if wb.holds(a, b) and wb.holds(a, c) and not wb.holds(a, L.meet[b][c]):
                    return False
    return True


def is_subfit(L):
    """(ok, witness): witness is the first pair (a, b) with a not<= b such
    that no c has a \\/ c = top and b \\/ c != top."""
    if not is_frame(L):
        raise NotAFrame("subfitness is checked for frames only")
    for a in range(L.n):
        for b in range(L.n):
            if L.leq(a, b):
                continue
            if not any(
                L.join[a][c] == L.top and L.join[b][c] != L.top for c in range(L.n)
            ):
                return False, (a, b)
    return True, None


# -- isomorphism search ------------------------------------------------


def find_isomorphism(L1, L2):
    """Order isomorphism L1 -> L2 as a tuple, or None.

    Every lattice isomorphism is determined by its action on the join
    irreducibles, so the search backtracks over irreducible bijections
    (pruned by height and cover-count invariants), extends by joins, and
    verifies the extension is an order isomorphism both ways.
    """
    if L1.n != L2.n:
        return None
    if L1.n == 1:
        return (0,)
    ji1 = list(bits(L1.join_irreducible_mask()))
    ji2 = list(bits(L2.join_irreducible_mask()))
    if len(ji1) != len(ji2):
        return None
    inv1 = {j: _ji_invariant(L1, j) for j in ji1}
    inv2 = {j: _ji_invariant(L2, j) for j in ji2}
    if sorted(inv1.values()) != sorted(inv2.values()):
        return None
    ji_set1 = set(ji1)

    def extend(assign):
        table = [None] * L1.n
        for u in range(L1.n):
            img = L2.bottom
            for j in bits(L1.dn[u] & L1.join_irreducible_mask()):
                img = L2.join[img][assign[j]]
            table[u] = img
        if len(set(table)) != L1.n:
            return None
        for u in range(L1.n):
            for v in range(L1.n):
                if L1.leq(u, v) != L2.leq(table[u], table[v]):
                    return None
        return tuple(table)

    def backtrack(k, assign, used):
        if k == len(ji1):
            return extend(assign)
        j = ji1[k]
        for t in ji2:
            if t in used or inv1[j] != inv2[t]:
                continue
            ok = True
            for j2 in ji1[:k]:
                if L1.leq(j, j2) != L2.leq(t, assign[j2]) or L1.leq(j2, j) != L2.leq(
                    assign[j2], t
                ):
                    ok = False
                    break
            if not ok:
                continue
            assign[j] = t
            used.add(t)
            res = backtrack(k + 1, assign, used)
            if res is not None:
                return res
            used.discard(t)
            del assign[j]
        return None

    # Sort irreducibles so rare invariant classes are assigned first.
    from collections import Counter

    freq = Counter(inv1.values())
    ji1.sort(key=lambda j: (freq[inv1[j]], inv1[j], j))
    return backtrack(0, {}, set())


def _ji_invariant(L, j):
    h = L.heights()
    return (
        h[j],
        popcount(L.dn[j]),
        popcount(L.up[j]),
        tuple(sorted(h[c] for c in bits(L.lower_cover_mask(j)))),
    )


def lattice_is_compact(L):
    """Top is way-below top: every directed cover of top contains it."""
    return way_below(L).holds(L.top, L.top)
