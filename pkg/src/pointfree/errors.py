"""Exception types shared across the workbench.

Every error that blames the input carries a witness describing the
offending element, pair, or family, so failures are reproducible.
"""


class PointfreeError(Exception):
    """Base class for all workbench errors."""


class NotAPartialOrder(PointfreeError):
    def __init__(self, witness, message="relation closure is not a partial order"):
        super().__init__(f"{message}; witness={witness!r}")
        self.witness = witness


class NotALattice(PointfreeError):
    def __init__(self, pair, kind, message="no unique bound"):
        super().__init__(f"{message}: pair {pair!r} has no unique {kind}")
        self.pair = pair
        self.kind = kind


class NotAFrame(PointfreeError):
    pass


class NotDistributive(PointfreeError):
    pass


class NotBoolean(PointfreeError):
    pass


class NotAFilter(PointfreeError):
    def __init__(self, witness, message="subset is not a filter"):
        super().__init__(f"{message}; witness={witness!r}")
        self.witness = witness


class NotAnIdeal(PointfreeError):
    def __init__(self, witness, message="subset is not an ideal"):
        super().__init__(f"{message}; witness={witness!r}")
        self.witness = witness


class NotATopology(PointfreeError):
    def __init__(self, witness, message="open family violates closure"):
        super().__init__(f"{message}; witness={witness!r}")
        self.witness = witness


class NotSober(PointfreeError):
    pass


class SizeBound(PointfreeError):
    def __init__(self, size, bound, what="enumeration"):
        super().__init__(f"{what} bounded at {bound}, got size {size}")
        self.size = size
        self.bound = bound


class PropertyFails(PointfreeError):
    def __init__(self, which, witness):
        super().__init__(f"property {which} fails; witness={witness!r}")
        self.which = which
        self.witness = witness


class NotMonotone(PointfreeError):
    pass


class NotAFrameHom(PointfreeError):
    pass


class NotPerfectFrameHom(PointfreeError):
    pass


class NotPerfectOnto(PointfreeError):
    pass


class NotAPoint(PointfreeError):
    pass


class SourceTargetMismatch(PointfreeError):
    pass


class AxiomsFail(PointfreeError):
    def __init__(self, axiom, witness):
        super().__init__(f"proximity axiom {axiom} fails; witness={witness!r}")
        self.axiom = axiom
        self.witness = witness


class FormatError(PointfreeError):
    """Interchange document is syntactically or structurally malformed."""
