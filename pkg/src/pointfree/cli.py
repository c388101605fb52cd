"""Batch front-end.

Subcommands: check (order-core predicates), canext (extension plus
axiom verifiers), spectrum (points and saturated sets), fca (concept
lattice of a polarity), subloc (sublocale structure), verify (the
theorem suite over one input or a corpus directory), dot (Hasse
diagram export). Reports are deterministic: identical inputs produce
byte-identical structured output.
"""

import argparse
import random
import sys
from pathlib import Path

from . import io as pio
from .canext import (
    canonical_extension,
    frame_coframe_report,
    verify_basic_properties,
    verify_compact,
    verify_compact_plus,
    verify_dense,
)
from .errors import PointfreeError, SizeBound
from .lattice import (
    complement_of,
    distributivity_witness,
    is_boolean,
    is_completely_distributive,
    is_frame,
    is_locally_compact,
    is_stably_locally_compact,
    is_subfit,
    set_exhaustion_bound,
)
from .polarity import concept_lattice, fact_properties_report, galois_closed_sets
from .report import FAIL, Report, SKIPPED
from .spaces import open_set_frame, points, saturated_sets
from .sublocales import (
    SUBLOCALE_BOUND,
    all_sublocale_masks,
    fitted_and_compact,
    sc_lattice,
    sublocale_coframe,
)
from .verify import verify_frame


def _read(path):
    return Path(path).read_text(encoding="utf-8")


def cmd_check(args):
    L = pio.lattice_from_doc(pio.loads(_read(args.file)))
    rep = Report(subject=f"check({args.file})")
    w = distributivity_witness(L)
    rep.check("distributive", w is None, witness=w)
    rep.check("frame", is_frame(L), witness=w)
    if is_frame(L):
        rep.check("locally-compact", is_locally_compact(L))
        rep.check("stably-locally-compact", is_stably_locally_compact(L))
        ok, wit = is_subfit(L)
        rep.check("subfit", ok, witness=wit)
    nonbool = next((x for x in range(L.n) if complement_of(L, x) is None), None)
    rep.check("boolean", nonbool is None, witness=nonbool)
    rep.check("completely-distributive", is_completely_distributive(L))
    return rep


def cmd_canext(args):
    L = pio.lattice_from_doc(pio.loads(_read(args.file)))
    b = canonical_extension(L)
    rep = Report(subject=f"canext({args.file})")
    rep.check("extension-size", True, bound_note=f"extension has {b.extension.n} elements")
    rep.extend(verify_dense(b))
    rep.extend(verify_compact(b))
    rep.extend(verify_compact_plus(b))
    rep.extend(verify_basic_properties(b), prefix="basic/")
    rep.extend(frame_coframe_report(b))
    return rep


def cmd_spectrum(args):
    L = pio.lattice_from_doc(pio.loads(_read(args.file)))
    X, cps, _ = points(L)
    olat, _ = open_set_frame(X)
    uplat, _ = saturated_sets(X)
    rep = Report(subject=f"spectrum({args.file})")
    rep.check("points", True, bound_note=f"{X.point_count} points")
    rep.check("opens", True, bound_note=f"{len(X.opens)} opens")
    rep.check("saturated-sets", True, bound_note=f"{uplat.n} saturated sets")
    from .lattice import find_isomorphism

    rep.check("frame-spatial", find_isomorphism(L, olat) is not None)
    return rep


def cmd_fca(args):
    P = pio.polarity_from_doc(pio.loads(_read(args.file)))
    rep = Report(subject=f"fca({args.file})")
    closed = galois_closed_sets(P)
    rep.check("closed-sets", True, bound_note=f"{len(closed)} closed sets")
    rep.extend(fact_properties_report(P))
    cl = concept_lattice(P)
    rep.check("lattice-built", cl.lattice.n == len(closed))
    return rep


def cmd_subloc(args):
    L = pio.lattice_from_doc(pio.loads(_read(args.file)))
    rep = Report(subject=f"subloc({args.file})")
    if L.n > SUBLOCALE_BOUND:
        rep.skip("sublocales", f"bounded at {SUBLOCALE_BOUND} elements (carrier {L.n})")
        return rep
    masks = all_sublocale_masks(L)
    rep.check("sublocale-count", True, bound_note=f"{len(masks)} sublocales")
    sublocale_coframe(L)
    rep.check("coframe-law", True)
    sc, _ = sc_lattice(L)
    rep.check("sc-size", True, bound_note=f"Sc has {sc.n} elements")
    fc_rep, pairs = fitted_and_compact(L)
    rep.extend(fc_rep)
    rep.check("compact-fitted-count", True, bound_note=f"{len(pairs)} compact fitted")
    return rep


def cmd_verify(args):
    if args.corpus:
        reports = []
        for path in sorted(Path(args.corpus).iterdir()):
            if path.suffix != ".json":
                continue
            L = pio.lattice_from_doc(pio.loads(path.read_text(encoding="utf-8")))
            reports.append(verify_frame(L, subject=path.name))
        return reports
    L = pio.lattice_from_doc(pio.loads(_read(args.file)))
    return verify_frame(L, subject=f"verify({args.file})")


def cmd_dot(args):
    L = pio.lattice_from_doc(pio.loads(_read(args.file)))
    return hasse_dot(L)


def hasse_dot(L):
    """Hasse diagram in DOT: edges are covers, ranks follow height."""
    lines = ["digraph lattice {", "  rankdir=BT;", '  node [shape=box];']
    for i in range(L.n):
        lines.append(f'  n{i} [label="{L.name_of(i)}"];')
    heights = L.heights()
    for h in range(max(heights) + 1):
        level = [i for i in range(L.n) if heights[i] == h]
        if len(level) > 1:
            lines.append("  {rank=same; " + "; ".join(f"n{i}" for i in level) + ";}")
    for i, j in L.cover_pairs():
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def build_parser():
    ap = argparse.ArgumentParser(
        prog="pointfree",
        description="exact workbench for finite pointfree topology",
    )
    ap.add_argument("--bound", type=int, default=None, help="exhaustion ceiling override")
    ap.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    ap.add_argument(
        "--format", choices=("text", "structured"), default="text", dest="fmt"
    )
    ap.add_argument(
        "--strict",
        action="store_true",
        help="count skipped-bound entries as failures in the exit code",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    for name, fn, needs_file in (
        ("check", cmd_check, True),
        ("canext", cmd_canext, True),
        ("spectrum", cmd_spectrum, True),
        ("fca", cmd_fca, True),
        ("subloc", cmd_subloc, True),
        ("dot", cmd_dot, True),
    ):
        p = sub.add_parser(name)
        p.add_argument("file")
        p.set_defaults(fn=fn)
    pv = sub.add_parser("verify")
    pv.add_argument("file", nargs="?")
    pv.add_argument("--corpus", default=None, help="directory of lattice documents")
    pv.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.bound is not None:
        set_exhaustion_bound(args.bound)
    random.seed(args.seed)
    try:
        result = args.fn(args)
    except PointfreeError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    if isinstance(result, str):
        sys.stdout.write(result)
        return 0
    reports = result if isinstance(result, list) else [result]
    out = []
    bad = False
    for rep in reports:
        if args.fmt == "structured":
            out.append(rep.to_structured())
        else:
            out.append(rep.to_text())
        statuses = [e.status for e in rep.entries]
        if FAIL in statuses or (args.strict and SKIPPED in statuses):
            bad = True
    sys.stdout.write("".join(out))
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
