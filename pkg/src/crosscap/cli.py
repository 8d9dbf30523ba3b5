"""
Command line interface.

    crosscap fff GERM.json
    crosscap realize INPUT.json --b zero|B.json --order M
    crosscap invariants INPUT.json --order M
    crosscap check JET.json METRIC.json --order m
    crosscap mesh JET.json --range r --samples n -o surface.obj

``INPUT`` may be a germ (mode ``crosscap``) or a normalized metric (mode
``metric``).  Germs must already be in canonical coordinates.
Exit status: 0 ok, 1 verification failure, 2 usage or parse error.
"""
import argparse
import sys

from . import documents as docs
from .exceptions import ConditioningError, ConsistencyError
from .geometry import metric_of_germ
from .invariants import InvariantTable, canonical_germ, closed_form_check
from .rings import get_ring
from .solver import realize, verify_realization

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _ring(args):
    if args.ring is None:
        return None
    return get_ring(args.ring, args.tol)


def _metric_from(doc, ring):
    mode = doc.get("mode")
    if mode == "crosscap":
        return metric_of_germ(docs.doc_to_germ(doc, ring))
    if mode == "metric":
        return docs.doc_to_metric(doc, ring)
    raise docs.DocumentError(f"expected mode 'crosscap' or 'metric', got {mode!r}")


def _emit(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def cmd_fff(args):
    doc = docs.load_document(args.input)
    if doc.get("mode") != "crosscap":
        raise docs.DocumentError("fff expects a crosscap document")
    germ = docs.doc_to_germ(doc, _ring(args))
    order = germ.order if args.order is None else args.order
    if order > germ.order:
        raise UsageError(f"germ is known through order {germ.order}, not {order}")
    metric = metric_of_germ(germ, order)
    _emit(docs.dump_document(docs.metric_to_doc(metric)), args.output)
    return EXIT_OK


def _target_b(args, doc, ring):
    if args.b in (None, "zero"):
        if args.b is None and "target_b" in doc:
            return docs.doc_to_beta({"target_b": doc["target_b"]}, ring or docs.doc_ring(doc))
        return None
    return docs.doc_to_beta(docs.load_document(args.b), ring or docs.doc_ring(doc))


def cmd_realize(args):
    doc = docs.load_document(args.input)
    ring = _ring(args)
    metric = _metric_from(doc, ring)
    order = metric.order if args.order is None else args.order
    if order > metric.order:
        raise UsageError(f"metric is known through order {metric.order}, not {order}")
    beta = _target_b(args, doc, ring)
    jet = realize(metric, beta, order)
    report = verify_realization(jet, metric, order)
    _emit(docs.dump_document(docs.jet_to_doc(jet, report)), args.output)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_invariants(args):
    doc = docs.load_document(args.input)
    ring = _ring(args)
    metric = _metric_from(doc, ring)
    order = metric.order if args.order is None else args.order
    if order > metric.order:
        raise UsageError(f"metric is known through order {metric.order}, not {order}")
    jet = realize(metric, None, order)
    germ = canonical_germ(jet)
    table = InvariantTable(order, dict(germ.a), metric.ring)
    check = None
    if doc["mode"] == "crosscap" and order >= 4:
        check = closed_form_check(docs.doc_to_germ(doc, ring))
    _emit(docs.dump_document(docs.table_to_doc(table, check)), args.output)
    return EXIT_OK if check is None or check.ok else EXIT_FAIL


def cmd_check(args):
    ring = _ring(args)
    jet = docs.doc_to_jet(docs.load_document(args.jet), ring)
    metric = _metric_from(docs.load_document(args.metric), ring)
    order = jet.order if args.order is None else args.order
    report = verify_realization(jet, metric, order)
    print(f"order {order}: {report}")
    for name, k, l, expected, got in report.mismatches[:20]:
        print(f"  {name}({k},{l}): metric {expected}, jet gives {got}")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_mesh(args):
    if not args.range > 0:
        raise UsageError("--range must be positive")
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    jet = docs.doc_to_jet(docs.load_document(args.jet), _ring(args))
    _emit(docs.mesh_obj(jet, args.range, args.samples), args.output)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="crosscap",
        description="Formal isometric realization and invariants of cross caps.",
    )
    parser.add_argument("--ring", choices=["rational", "float"], default=None,
                        help="coefficient ring (default: the document's)")
    parser.add_argument("--tol", type=float, default=None,
                        help="relative tolerance of the float ring (default 1e-9)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fff", help="first fundamental form of a germ")
    p.add_argument("input")
    p.add_argument("--order", type=int, default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_fff)

    p = sub.add_parser("realize", help="realize a metric with a given characteristic function")
    p.add_argument("input")
    p.add_argument("--b", default=None, help="'zero' or a JSON file holding b coefficients")
    p.add_argument("--order", type=int, default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("invariants", help="intrinsic invariants A[i,j]")
    p.add_argument("input")
    p.add_argument("--order", type=int, default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("check", help="verify a jet against a metric")
    p.add_argument("jet")
    p.add_argument("metric")
    p.add_argument("--order", type=int, default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("mesh", help="export a jet as an OBJ surface")
    p.add_argument("jet")
    p.add_argument("--range", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=32)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_mesh)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, docs.DocumentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConditioningError, ConsistencyError) as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
