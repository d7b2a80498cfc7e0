"""Command-line front end.

Exit codes: 0 all checks pass, 1 a mathematical check was falsified,
2 resource limit exceeded, 64 usage error.  Human-readable summaries go to
stderr; machine output (certificate JSON, result tables) goes to stdout or
the --out path, never mixed with the summaries.
"""

import argparse
import os
import sys

from ._version import __version__
from .coset import EnumerationLimits, LimitExceeded, enumerate_cosets
from .groups import GroupTooLarge
from .nottingham import (commutator_depth_suite, depth_filter,
                         generator_order_check, lcs_index, quotient_order,
                         series_quotient_group, verify_generation,
                         verify_lcs_filter)
from .structures import (Certificate, abelian_beauville_search,
                         noncovering_check, verify_main_theorem,
                         word_to_str, write_certificate)
from .words import ParseError, parse_presentation

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_LIMIT = 2
EXIT_USAGE = 64

FAIRBAIRN = {
    1: ("< x, y | x^8, y^8, [x^2, y^2], "
        + ", ".join("(x^%d y^%d)^4" % (i, j)
                    for i in (1, 2, 3) for j in (1, 2, 3)) + " >",
        8192),
    2: ("< x, y | "
        + ", ".join("(x^%d y^%d)^4" % (i, j)
                    for i in range(4) for j in range(4) if i or j) + " >",
        16384),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print("%s: error: %s" % (self.prog, message), file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _is_odd_prime(p):
    if p < 3 or p % 2 == 0:
        return False
    return all(p % q for q in range(3, int(p ** 0.5) + 1, 2))


def _default_max_cosets():
    env = os.environ.get("BEAUVILLE_MAX_COSETS")
    if env:
        try:
            return int(env)
        except ValueError:
            print("ignoring malformed BEAUVILLE_MAX_COSETS=%r" % env,
                  file=sys.stderr)
    return 2_000_000


def _say(msg):
    print(msg, file=sys.stderr)


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args):
    cert = None
    try:
        cert = verify_main_theorem(args.p, args.k, max_cosets=args.max_cosets)
    except (LimitExceeded, GroupTooLarge) as e:
        _say("resource limit: %s" % e)
        cert = Certificate(p=args.p, k=args.k, i=args.k * (args.p - 1) + 1,
                           group_order=0, exponent=0, order_uv=0,
                           witness_w="", witness_z="", pair1=["", ""],
                           pair2=["", ""],
                           checks=[{"name": "resources", "pass": False,
                                    "detail": str(e)}],
                           version=__version__, wall_ms=0)
        _write_cert(cert, args.out)
        return EXIT_LIMIT
    _write_cert(cert, args.out)
    for c in cert.checks:
        _say("%-28s %s  %s" % (c["name"], "pass" if c["pass"] else "FAIL",
                               c["detail"]))
    if cert.all_pass():
        _say("all %d checks pass; group order %d"
             % (len(cert.checks), cert.group_order))
        return EXIT_OK
    _say("FALSIFIED: %d of %d checks failed"
         % (sum(not c["pass"] for c in cert.checks), len(cert.checks)))
    return EXIT_FALSIFIED


def _write_cert(cert, out_path):
    if out_path:
        write_certificate(cert, out_path)
    else:
        sys.stdout.write(cert.to_json())


def cmd_nottingham(args):
    p, M = args.p, args.precision
    rows = []
    ok = True
    if args.check == "order":
        bad = generator_order_check(p, M)
        for m in range(3, M + 1):
            good = m not in bad
            rows.append((m, "a^p = b^p = id", "ok" if good else "violated"))
            ok = ok and good
    elif args.check == "lcs":
        gen_ok = verify_generation(p, M)
        rows.append(("gen", "pivots 1..%d" % (M - 1),
                     "ok" if gen_ok else "missing"))
        ok = ok and gen_ok
        for j, r, seed_ok, pivot_ok in verify_lcs_filter(p, M):
            good = seed_ok and pivot_ok
            rows.append((j, "gamma_%d = depth>=%d filter" % (j, r),
                         "ok" if good else "MISMATCH"))
            ok = ok and good
    elif args.check == "comms":
        bad = commutator_depth_suite(p, M, n_pairs=args.pairs, seed=args.seed)
        rows.append((args.pairs, "0 depth violations", len(bad)))
        ok = not bad
    elif args.check == "noncover":
        G = series_quotient_group(p, M, limit=args.max_cosets)
        alpha = G.generators[0]
        target = depth_filter(G, M - 1)
        verdict = noncovering_check(G, alpha, target)
        rows.append(("uncovered", "exists",
                     repr(verdict.witness) if verdict.ok else "NONE"))
        ok = verdict.ok
    for row in rows:
        print("%-10s %-36s %s" % row)
    _say("%s: %s" % (args.check, "all rows match" if ok else "MISMATCH"))
    return EXIT_OK if ok else EXIT_FALSIFIED


def cmd_enumerate(args):
    try:
        with open(args.file) as fh:
            pres = parse_presentation(fh.read())
    except OSError as e:
        _say("cannot read %s: %s" % (args.file, e))
        return EXIT_USAGE
    except ParseError as e:
        _say("parse error: %s" % e)
        return EXIT_USAGE
    try:
        table = enumerate_cosets(pres, EnumerationLimits(args.max_cosets))
    except LimitExceeded as e:
        _say("limit exceeded (high water %d)" % e.high_water)
        return EXIT_LIMIT
    print(table.n_cosets)
    _say("group order %d" % table.n_cosets)
    return EXIT_OK


def cmd_fairbairn(args):
    text, expected = FAIRBAIRN[args.which]
    pres = parse_presentation(text)
    try:
        table = enumerate_cosets(pres, EnumerationLimits(args.max_cosets))
    except LimitExceeded as e:
        _say("limit exceeded (high water %d)" % e.high_water)
        return EXIT_LIMIT
    print("%d %d" % (table.n_cosets, expected))
    if table.n_cosets == expected:
        _say("order %d matches 2^%d" % (expected, expected.bit_length() - 1))
        return EXIT_OK
    _say("MISMATCH: enumerated %d, expected %d" % (table.n_cosets, expected))
    return EXIT_FALSIFIED


def cmd_abelian(args):
    G, structure = abelian_beauville_search(args.n)
    if structure is None:
        print("NONE")
        _say("C_%d x C_%d admits no Beauville structure" % (args.n, args.n))
        return EXIT_OK
    names = G.generator_names
    words = [word_to_str(G.word_of(e), names)
             for e in structure.all_elements()]
    print("pair1: %s, %s" % (words[0], words[1]))
    print("pair2: %s, %s" % (words[2], words[3]))
    _say("strongly real Beauville structure found in C_%d x C_%d"
         % (args.n, args.n))
    return EXIT_OK


def build_parser():
    top = _Parser(prog="beauville",
                  description="verification toolkit for strongly real "
                              "Beauville p-groups")
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)
    default_cosets = _default_max_cosets()

    pv = sub.add_parser("verify", help="run the main-theorem pipeline")
    pv.add_argument("--p", type=int, required=True)
    pv.add_argument("--k", type=int, required=True)
    pv.add_argument("--out", help="certificate path (default: stdout)")
    pv.add_argument("--max-cosets", type=int, default=default_cosets)
    pv.set_defaults(func=cmd_verify, needs_prime=True)

    pn = sub.add_parser("nottingham", help="Nottingham quotient property suites")
    pn.add_argument("--p", type=int, required=True)
    pn.add_argument("--precision", type=int, default=12)
    pn.add_argument("--check", choices=("order", "lcs", "comms", "noncover"),
                    required=True)
    pn.add_argument("--pairs", type=int, default=500)
    pn.add_argument("--seed", type=int, default=0)
    pn.add_argument("--max-cosets", type=int, default=default_cosets)
    pn.set_defaults(func=cmd_nottingham, needs_prime=True)

    pe = sub.add_parser("enumerate", help="coset enumeration of a presentation file")
    pe.add_argument("--file", required=True)
    pe.add_argument("--max-cosets", type=int, default=default_cosets)
    pe.set_defaults(func=cmd_enumerate, needs_prime=False)

    pf = sub.add_parser("fairbairn", help="reproduce the two 2-group orders")
    pf.add_argument("--which", type=int, choices=(1, 2), required=True)
    pf.add_argument("--max-cosets", type=int, default=default_cosets)
    pf.set_defaults(func=cmd_fairbairn, needs_prime=False)

    pa = sub.add_parser("abelian", help="Beauville search in C_n x C_n")
    pa.add_argument("--n", type=int, required=True)
    pa.set_defaults(func=cmd_abelian, needs_prime=False)
    return top


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "needs_prime", False) and not _is_odd_prime(args.p):
        parser.error("--p must be an odd prime, got %d" % args.p)
    if getattr(args, "k", None) is not None and args.k < 1:
        parser.error("--k must be at least 1")
    if getattr(args, "precision", None) is not None and args.precision < 3:
        parser.error("--precision must be at least 3")
    if getattr(args, "n", None) is not None and args.n < 2:
        parser.error("--n must be at least 2")
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
