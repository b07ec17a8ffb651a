"""Command-line entry point.

Exit status: 0 certified/complete, 1 inconclusive, 2 input error, 3 budget error.
"""
import argparse
import os
import sys

from . import __version__
from . import io
from ._accel import thread_cap
from .criteria import (DihedralScenario, certify_dihedral, certify_elliptic_curve, congruence_primes,
                       dihedral_density_experiment, euler_h1_dimension, euler_preset, s3_family_scan,
                       weston_bound)
from .criteria.dihedral import FLAG_DIRECT, FLAG_SUFFICIENT
from .criteria.modular import EULER_PRESETS
from .curves import supersingular_scan
from .errors import BudgetError, InputError, MuCertError
from .forms import QuadField
from .iwasawa import module_invariants

EXIT_OK, EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _stamp(args):
    return None if args.no_timestamp else io.timestamp_now()


def _with_stamp(report, args):
    ts = _stamp(args)
    if ts is not None:
        report["timestamp"] = ts
    return report


def _certificate_result(cert, args):
    data = cert.to_dict(timestamp=_stamp(args))
    io.validate(data, io.CERTIFICATE_SCHEMA, "certificate")
    return data, EXIT_OK if cert.certified else EXIT_INCONCLUSIVE


def cmd_certify_ec(args):
    curve = io.load_curve(args.curve)
    return _certificate_result(certify_elliptic_curve(curve, args.p, args.search_bound), args)


def cmd_weston_bound(args):
    form = io.load_newform(args.form)
    siblings = [g for path in args.siblings for g in io.load_newforms(path)]
    report = weston_bound(form, siblings, sturm=args.sturm)
    return _with_stamp(report.to_dict(), args), EXIT_OK


def _threads(args):
    cap = thread_cap(default=os.cpu_count() or 1)
    return min(args.threads, cap) if args.threads else thread_cap()


def cmd_supersingular_scan(args):
    curve = io.load_curve(args.curve)
    found = supersingular_scan(curve, args.bound, threads=_threads(args))
    report = {"curve": curve.label, "bound": args.bound, "supersingular_primes": found}
    return _with_stamp(report, args), EXIT_OK


def _oracle_flags(args):
    flags = {}
    if args.oracle_flags:
        data = io.read_json(args.oracle_flags)
        if not isinstance(data, dict) or not all(isinstance(v, bool) for v in data.values()):
            raise InputError("oracle flags must be a JSON object of booleans")
        flags.update(data)
    for name in args.assume_flag:
        flags[name] = True
    return flags


def _scenario(args):
    if args.D is None or args.n is None:
        raise InputError("--D and --n are required")
    return DihedralScenario(QuadField(args.D), args.n, args.p or 3,
                            frozenset(args.s_extra), _oracle_flags(args))


def cmd_dihedral_scan(args):
    if args.bound is None:
        raise InputError("--bound is required")
    scenario = _scenario(args)
    report = dihedral_density_experiment(scenario, args.bound, keep_rows=bool(args.csv))
    if args.csv:
        io.write_density_csv(report, args.csv, scenario.p)
    out = _with_stamp(report.to_dict(), args)
    return out, EXIT_OK if report.density is not None else EXIT_INCONCLUSIVE


def cmd_dihedral_certify(args):
    return _certificate_result(certify_dihedral(_scenario(args)), args)


def cmd_lambda_invariants(args):
    pres = io.load_presentation(args.matrix)
    inv = module_invariants(pres)
    report = {"p": pres.profile.p, "p_prec": pres.profile.p_prec, "t_prec": pres.profile.t_prec,
              "size": pres.size, **inv.to_dict()}
    return _with_stamp(report, args), EXIT_OK


def cmd_euler_char(args):
    if args.preset:
        return euler_preset(args.preset), EXIT_OK
    if None in (args.h0, args.h2, args.dim_minus):
        raise InputError("give --preset or all of --h0, --h2, --dim-minus")
    return euler_h1_dimension(args.h0, args.h2, args.dim_minus), EXIT_OK


def cmd_s3_scan(args):
    pairs = s3_family_scan(args.kind, args.a_min, args.a_max)
    report = {"kind": args.kind, "a_min": args.a_min, "a_max": args.a_max, "count": len(pairs),
              "pairs": [[a, p] for a, p in pairs]}
    return _with_stamp(report, args), EXIT_OK


def cmd_congruence_primes(args):
    f = io.load_newform(args.form)
    others = [g for path in args.siblings for g in io.load_newforms(path)]
    if not others:
        raise InputError("--siblings must name at least one newform")
    reports = [congruence_primes(f, g, sturm=args.sturm).to_dict() for g in others]
    return _with_stamp({"form": f.label, "comparisons": reports}, args), EXIT_OK


COMMANDS = {
    "certify-ec": cmd_certify_ec,
    "weston-bound": cmd_weston_bound,
    "supersingular-scan": cmd_supersingular_scan,
    "dihedral-scan": cmd_dihedral_scan,
    "dihedral-certify": cmd_dihedral_certify,
    "lambda-invariants": cmd_lambda_invariants,
    "euler-char": cmd_euler_char,
    "s3-scan": cmd_s3_scan,
    "congruence-primes": cmd_congruence_primes,
}


def build_parser():
    parser = _Parser(prog="mucert", description="Certify fine Selmer mu = 0 criteria.")
    parser.add_argument("--version", action="version", version=f"mucert {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--out", help="write the JSON report here")
        sp.add_argument("--no-timestamp", action="store_true", help="omit timestamps (byte-stable output)")
        return sp

    sp = add("certify-ec", "elliptic curve criterion")
    sp.add_argument("--curve", required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--search-bound", type=int, default=200)

    sp = add("weston-bound", "explicit unobstructedness bound for a newform")
    sp.add_argument("--form", required=True)
    sp.add_argument("--siblings", nargs="*", default=[])
    sp.add_argument("--sturm", type=int)

    sp = add("supersingular-scan", "good primes with a_l = 0")
    sp.add_argument("--curve", required=True)
    sp.add_argument("--bound", type=int, required=True)
    sp.add_argument("--threads", type=int)

    for name, text in (("dihedral-scan", "density of the auxiliary prime set"),
                       ("dihedral-certify", "induced dihedral criterion")):
        sp = add(name, text)
        sp.add_argument("--D", type=int, required=True)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--p", type=int, default=3)
        sp.add_argument("--s-extra", type=int, nargs="*", default=[])
        sp.add_argument("--oracle-flags", help="JSON object of class-field flags")
        sp.add_argument("--assume-flag", action="append", default=[],
                        choices=[FLAG_DIRECT, FLAG_SUFFICIENT])
        if name == "dihedral-scan":
            sp.add_argument("--bound", type=int, required=True)
            sp.add_argument("--csv", help="write per-prime rows here")

    sp = add("lambda-invariants", "mu and lambda of a presentation matrix")
    sp.add_argument("--matrix", required=True)

    sp = add("euler-char", "dim H^1 from the Euler characteristic")
    sp.add_argument("--preset", choices=sorted(EULER_PRESETS))
    sp.add_argument("--h0", type=int)
    sp.add_argument("--h2", type=int)
    sp.add_argument("--dim-minus", type=int)

    sp = add("s3-scan", "primes in the S3 families")
    sp.add_argument("--kind", choices=["odd", "even"], required=True)
    sp.add_argument("--a-min", type=int, required=True)
    sp.add_argument("--a-max", type=int, required=True)

    sp = add("congruence-primes", "congruence-prime candidates between newforms")
    sp.add_argument("--form", required=True)
    sp.add_argument("--siblings", nargs="+", required=True)
    sp.add_argument("--sturm", type=int)
    return parser


def _emit(result, args):
    if isinstance(result, int):
        text = f"{result}\n"
        if args.out:
            io.write_json({"h1": result}, args.out)
    else:
        text = io.dumps(result)
        if args.out:
            io.write_json(result, args.out)
    sys.stdout.write(text)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    args = None
    try:
        args = parser.parse_args(argv)
        result, status = COMMANDS[args.command](args)
        _emit(result, args)
        return status
    except MuCertError as exc:
        status = EXIT_BUDGET if isinstance(exc, BudgetError) else EXIT_INPUT
        kind, message = type(exc).__name__, str(exc)
    except (ValueError, KeyError, TypeError, OverflowError) as exc:
        status, kind, message = EXIT_INPUT, "InputError", str(exc)
    print(f"error: {message}", file=sys.stderr)
    out = getattr(args, "out", None) if args is not None else None
    if out:
        io.write_json({"error": {"type": kind, "message": message}, "exit_status": status}, out)
    return status


if __name__ == "__main__":
    sys.exit(main())
