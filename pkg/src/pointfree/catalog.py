"""Named test lattices and the desk-scale corpus.

The corpus consists of the downset frames of all posets with at most
five elements up to isomorphism (1 + 2 + 5 + 16 + 63 = 87 of them),
which are exactly the finite distributive lattices with up to 32
elements arising that way, plus the small named lattices used for
positive and negative tests.
"""

from functools import lru_cache
from itertools import permutations

from .bits import bits
from .lattice import FiniteLattice, build_lattice


def two():
    return build_lattice(2, [(0, 1)])


def chain(k):
    return build_lattice(k, [(i, i + 1) for i in range(k - 1)])


def boolean(k):
    """The powerset lattice of a k-element set; element = subset mask."""
    n = 1 << k
    pairs = []
    for s in range(n):
        for t in range(n):
            if s != t and s & ~t == 0:
                pairs.append((s, t))
    return build_lattice(n, pairs, mode="leq")


def m3():
    return build_lattice(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])


def n5():
    return build_lattice(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])


def named_lattices():
    """The named small lattices: 2, C3, B4, B8, M3, N5."""
    return {
        "2": two(),
        "C3": chain(3),
        "B4": boolean(2),
        "B8": boolean(3),
        "M3": m3(),
        "N5": n5(),
    }


# -- poset enumeration ----------------------------------------------------


@lru_cache(maxsize=None)
def all_posets(max_size=5):
    """All posets with 1..max_size elements up to isomorphism.

    Each poset is (n, up) with up[i] the mask of elements above i.
    Candidates are upper-triangular reflexive-transitive relations
    (every poset admits a linear extension, so each isomorphism class
    appears), deduplicated by the minimum matrix encoding over all
    relabelings.
    """
    out = []
    for n in range(1, max_size + 1):
        seen = set()
        strict_pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for choice in range(1 << len(strict_pairs)):
            up = [1 << i for i in range(n)]
            for k in bits(choice):
                i, j = strict_pairs[k]
                up[i] |= 1 << j
            if not _transitive(up):
                continue
            canon = _canonical_code(up)
            if canon in seen:
                continue
            seen.add(canon)
            out.append((n, tuple(up)))
    return tuple(out)


def _transitive(up):
    for i in range(len(up)):
        for j in bits(up[i]):
            if up[j] & ~up[i]:
                return False
    return True


def _canonical_code(up):
    n = len(up)
    best = None
    for perm in permutations(range(n)):
        code = 0
        bit = 0
        for i in range(n):
            row = up[perm[i]]
            for j in range(n):
                if (row >> perm[j]) & 1:
                    code |= 1 << bit
                bit += 1
        if best is None or code < best:
            best = code
    return best


def downset_masks(n, up):
    """All downsets of the poset, ascending masks."""
    dn = [0] * n
    for i in range(n):
        for j in bits(up[i]):
            dn[j] |= 1 << i
    out = []
    for S in range(1 << n):
        if all(dn[x] & ~S == 0 for x in bits(S)):
            out.append(S)
    return out


def downset_lattice(n, up):
    """The frame of downsets of the poset, ordered by inclusion."""
    masks = downset_masks(n, up)
    k = len(masks)
    lat_up = []
    for i in range(k):
        row = 0
        for j in range(k):
            if masks[i] & ~masks[j] == 0:
                row |= 1 << j
        lat_up.append(row)
    return FiniteLattice(tuple(lat_up))


@lru_cache(maxsize=None)
def corpus_frames(max_poset_size=5):
    """The downset frames of the corpus posets, poset-enumeration order."""
    return tuple(downset_lattice(n, up) for n, up in all_posets(max_poset_size))


def corpus_with_ids(max_poset_size=5):
    """(id, frame) pairs; the id names the generating poset."""
    out = []
    for idx, (n, up) in enumerate(all_posets(max_poset_size)):
        out.append((f"poset{n}-{idx:03d}", downset_lattice(n, up)))
    return out
