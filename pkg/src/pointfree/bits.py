"""Bitmask subsets of {0..n-1}.

Subsets of lattice elements, filter members, points of a space: all are
plain Python ints used as bit-vectors. Enumeration order over subsets is
ascending int order, which is lexicographic on bit-vectors with the
lowest index as the most significant tie-breaker, so every sweep in the
workbench is deterministic.
"""


def bits(mask):
    """Yield the set bit indices of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices):
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def popcount(mask):
    return mask.bit_count()


def subsets_of(mask):
    """All submasks of mask, ascending, starting with 0."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask
