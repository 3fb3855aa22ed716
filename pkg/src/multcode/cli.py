"""multcode command line: encode, extract, verify, bench, params.

Exit codes: 0 success, 1 verification failure, 2 malformed input or
container, 3 invalid code parameters.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import container as CT
from . import code as K
from .field import FieldError

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_PARAMS = 3


class CliError(Exception):
    def __init__(self, msg, code):
        super().__init__(msg)
        self.code = code


def _params(q, n, s, d, modulus=None):
    try:
        return K.code_params(q, n, s, d, modulus)
    except (K.ParameterError, FieldError) as e:
        raise CliError(str(e), EXIT_PARAMS) from e


def _read(path):
    try:
        return CT.read(path)
    except CT.ContainerError as e:
        raise CliError(f"{path}: {e}", EXIT_INPUT) from e
    except OSError as e:
        raise CliError(f"{path}: {e.strerror}", EXIT_INPUT) from e


def _modulus(text):
    if text is None:
        return None
    return tuple(int(x) for x in text.split(","))


def _parse_sweep(text):
    a, sep, b = text.partition("..")
    try:
        lo = int(a)
        hi = int(b) if sep else lo
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected s1..s2, got {text!r}")
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad sweep range {text!r}")
    return list(range(lo, hi + 1))


def cmd_params(args):
    p = _params(args.q, args.n, args.s, args.d, _modulus(args.modulus))
    print(json.dumps(p.as_dict(), indent=2))
    return EXIT_OK


def cmd_encode(args):
    if args.pad:
        if None in (args.q, args.n, args.s, args.d):
            raise CliError("--pad needs --q, --n, --s and --d", EXIT_INPUT)
        p = _params(args.q, args.n, args.s, args.d, _modulus(args.modulus))
        with open(args.infile, "rb") as fh:
            raw = fh.read()
        try:
            msg = CT.pack_bytes(raw, p.q, p.k)
        except CT.ContainerError as e:
            raise CliError(str(e), EXIT_INPUT) from e
    else:
        box = _read(args.infile)
        if box.kind != CT.MESSAGE:
            raise CliError(f"{args.infile}: expected a message container (kind 0)", EXIT_INPUT)
        q = box.q if args.q is None else args.q
        n = box.n if args.n is None else args.n
        s = box.s if args.s is None else args.s
        d = box.d if args.d is None else args.d
        if (q, n, d) != (box.q, box.n, box.d):
            raise CliError("command-line parameters disagree with the message header", EXIT_INPUT)
        p = _params(q, n, s, d, box.modulus)
        msg = box.payload
    cw = K.encode(p, msg, args.algo)
    CT.write(args.outfile, CT.for_params(p, CT.CODEWORD, cw))
    return EXIT_OK


def cmd_extract(args):
    box = _read(args.infile)
    if box.kind != CT.CODEWORD:
        raise CliError(f"{args.infile}: expected a codeword container (kind 1)", EXIT_INPUT)
    p = _params(box.q, box.n, box.s, box.d, box.modulus)
    msg = K.extract_message(p, box.payload.reshape(p.length, p.sigma))
    if args.raw:
        with open(args.outfile, "wb") as fh:
            fh.write(CT.unpack_bytes(msg, p.q))
    else:
        CT.write(args.outfile, CT.for_params(p, CT.MESSAGE, msg))
    return EXIT_OK


def cmd_verify(args):
    from . import verify

    results = verify.run_all(args.max_size, args.only)
    for r in results:
        print(r.line(), flush=True)
    ok = all(r.passed for r in results)
    print("all checks passed" if ok else "verification FAILED")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_bench(args):
    from . import bench

    algos = ("low", "high") if args.algo == "both" else (args.algo,)
    try:
        rows = bench.sweep(args.q, args.n, args.sweep, algos, args.frac, args.repeats)
    except K.ParameterError as e:
        raise CliError(str(e), EXIT_PARAMS) from e
    fits = bench.slopes(rows)
    text = bench.to_csv(rows, fits) if args.format == "csv" else bench.to_json(rows, fits)
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="multcode", description="Systematic encoding of multiplicity codes.")
    ap.add_argument("--threads", type=int, default=1, help="threads for batched kernels (numba backend)")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def code_args(sp, required=True):
        sp.add_argument("--q", type=int, required=required, help="field size p^m")
        sp.add_argument("--n", type=int, required=required, help="number of variables")
        sp.add_argument("--s", type=int, required=required, help="derivative order bound")
        sp.add_argument("--d", type=int, required=required, help="degree bound, d < s*q")
        sp.add_argument("--modulus", help="field modulus coefficients low to high, comma separated")

    sp = sub.add_parser("params", help="print code parameters as JSON")
    code_args(sp)
    sp.set_defaults(func=cmd_params)

    sp = sub.add_parser("encode", help="encode a message container (or raw bytes with --pad)")
    code_args(sp, required=False)
    sp.add_argument("--algo", choices=("low", "high", "auto"), default="auto")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--out", dest="outfile", required=True)
    sp.add_argument("--pad", action="store_true", help="read raw bytes, pack floor(log2 q) bits per symbol, zero fill to k")
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("extract", help="read the message back out of a codeword")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--out", dest="outfile", required=True)
    sp.add_argument("--raw", action="store_true", help="write unpacked bytes instead of a message container")
    sp.set_defaults(func=cmd_extract)

    sp = sub.add_parser("verify", help="run the oracle verification grid")
    sp.add_argument("--max-size", type=int, default=2000, help="largest |C_{s,n}| to include")
    sp.add_argument("--only", nargs="*", help="subset of checks to run")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="time both encoders over a sweep of s")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--sweep", type=_parse_sweep, required=True, help="s1..s2")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--algo", choices=("low", "high", "both"), default="both")
    sp.add_argument("--frac", type=float, default=0.75, help="d = floor(frac*s*q)")
    sp.add_argument("--repeats", type=int, default=3)
    sp.set_defaults(func=cmd_bench)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.threads > 1:
        from . import kernels

        kernels.set_threads(args.threads)
    try:
        return args.func(args)
    except CliError as e:
        print(f"multcode: {e}", file=sys.stderr)
        return e.code
    except OSError as e:
        print(f"multcode: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
