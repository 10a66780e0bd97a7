"""Command line interface; every subcommand prints tab-separated text."""

import argparse
import json
import sys

from . import __version__
from .cosets import NotDefiniteError, d_invariants_alternating
from .dataset import DatasetError, load_records
from .diagram import PDError, analyse, nullity, parse_pd, signatures
from .groups import CapacityError
from .lattice import (DefinitenessError, Lattice, norm_two_orthogonal_sets,
                      orthogonal_complement, orthogonal_embeddings,
                      is_primitive_sublattice)
from .linalg import SingularMatrixError, as_matrix, format_rational
from .pipeline import (BRANCHES, MAX_EMBED_AMBIENT, CrossingBudget, analyse_table,
                       run_obstruction)

EXIT_OK, EXIT_INPUT, EXIT_CAPACITY = 0, 2, 3


class InputError(ValueError):
    pass


def _read(path):
    try:
        with open(path) as f:
            return f.read()
    except OSError as e:
        raise InputError(str(e)) from e


def read_gram(path):
    """A JSON array of rows, or whitespace-separated integer rows."""
    text = _read(path).strip()
    try:
        rows = json.loads(text)
    except json.JSONDecodeError:
        try:
            rows = [[int(x) for x in line.replace(",", " ").split()]
                    for line in text.splitlines() if line.strip()]
        except ValueError as e:
            raise InputError("gram file must contain integers: %s" % e) from e
    if not rows or not all(isinstance(r, list) and len(r) == len(rows) for r in rows):
        raise InputError("gram matrix must be a nonempty square array")
    M = as_matrix(rows)
    if not M.is_symmetric():
        raise InputError("gram matrix must be symmetric")
    return M


def _matrix_str(M):
    return ";".join(",".join(str(x) for x in r) for r in M.rows)


def cmd_goeritz(args, out):
    code = parse_pd(_read(args.pd_file))
    data = analyse(code)
    out.write("white_gram\t%s\n" % _matrix_str(data.white_gram))
    out.write("black_gram\t%s\n" % _matrix_str(data.black_gram))
    out.write("gl_correction\t%d\n" % data.gl_correction)
    out.write("determinant\t%d\n" % data.determinant)
    out.write("nullity\t%d\n" % nullity(code))
    for o, s in zip(code.quasi_orientations(), signatures(code)):
        flags = "".join("1" if x else "0" for x in o)
        out.write("signature[%s]\t%d\n" % (flags, s))


def cmd_embed(args, out):
    lat = Lattice.from_gram(read_gram(args.gram))
    if args.ambient > MAX_EMBED_AMBIENT:
        raise CapacityError("ambient rank %d exceeds %d" % (args.ambient, MAX_EMBED_AMBIENT))
    classes = orthogonal_embeddings(lat, args.ambient, args.source_symmetry)
    out.write("class\tvectors\tcomplement_rank\tnorm2_sets\tprimitive_sets\n")
    for i, e in enumerate(classes, 1):
        comp = orthogonal_complement(e)
        if args.pairs:
            sets = norm_two_orthogonal_sets(comp, args.pairs)
            prim = sum(1 for s in sets if is_primitive_sublattice(s, comp))
            extra = "%d\t%d" % (len(sets), prim)
        else:
            extra = "-\t-"
        out.write("%d\t%s\t%d\t%s\n" % (i, e, comp.rank, extra))


def cmd_dinv(args, out):
    table = d_invariants_alternating(read_gram(args.gram))
    out.write("label\td\tspin\n")
    for g in sorted(table.values):
        out.write("%s\t%s\t%s\n" % (",".join(map(str, g)), format_rational(table.values[g]),
                                    "yes" if g in table.spin_elements else "no"))


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


def cmd_obstruct(args, out):
    records = load_records(args.record)
    if len(records) != 1:
        raise InputError("expected exactly one record, found %d" % len(records))
    verdict = run_obstruction(records[0], CrossingBudget(args.p, args.n),
                              orientation=args.orientation, branches=tuple(args.branch))
    out.write("status\t%s\n" % verdict.status)
    for p in verdict.provenance:
        out.write("%s\t%s\t%s\n" % (p.rule, json.dumps(_jsonable(p.inputs), sort_keys=True),
                                    json.dumps(_jsonable(p.witness), sort_keys=True)))


def cmd_table(args, out):
    records = load_records(args.dataset)
    verdicts = analyse_table(records, processes=args.jobs)
    byname = {r.name: r for r in records}
    out.write("name\tk\tcstar_lower\tu_lower\tu_dataset\trules\n")
    for name in sorted(verdicts):
        v = verdicts[name]
        r = byname[name]
        rules = ",".join(dict.fromkeys(v.rules()))
        known = "" if r.known_upper_bound is None else str(r.known_upper_bound)
        out.write("%s\t%d\t%d\t%d\t%s\t%s\n" % (name, r.k, v.lower_bound_cstar,
                                                v.lower_bound_u, known, rules))


def build_parser():
    ap = argparse.ArgumentParser(prog="unlinking",
                                 description="Exact lower bounds for unlinking numbers.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("goeritz", help="Goeritz matrices and signatures of a PD code")
    p.add_argument("pd_file")
    p.set_defaults(func=cmd_goeritz)

    p = sub.add_parser("embed", help="embeddings of a positive-definite lattice into Z^N")
    p.add_argument("--gram", required=True)
    p.add_argument("--ambient", type=int, required=True)
    p.add_argument("--pairs", type=int, default=0,
                   help="count sets of this many orthogonal norm-2 complement vectors")
    p.add_argument("--source-symmetry", default="full",
                   choices=["full", "signed-basis", "none"])
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("dinv", help="correction terms from a negative-definite Goeritz matrix")
    p.add_argument("--gram", required=True)
    p.set_defaults(func=cmd_dinv)

    p = sub.add_parser("obstruct", help="test one double-point budget for a link record")
    p.add_argument("record")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--orientation", type=int, default=None)
    p.add_argument("--branch", action="append", choices=list(BRANCHES), default=None)
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("table", help="lower bounds for every record of a dataset")
    p.add_argument("dataset", nargs="?", default=None,
                   help="dataset JSON (default: the shipped link table)")
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_table)
    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "branch", "unset") is None:
        args.branch = list(BRANCHES)
    try:
        args.func(args, out)
    except CapacityError as e:
        print("capacity limit: %s" % e, file=sys.stderr)
        return EXIT_CAPACITY
    except (InputError, DatasetError, PDError, DefinitenessError, NotDefiniteError,
            SingularMatrixError, ValueError, IndexError) as e:
        print("malformed input: %s" % e, file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
