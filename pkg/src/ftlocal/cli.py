"""Command-line interface.

Exit codes: 0 when every check passes, 1 when a witness or failure was
found, 2 for usage or capacity errors.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import io
from .adversary import (attack_exhaustive, attack_random, attack_vertex_cover, replay,
                        run_attacks)
from .errors import FtlocalError
from .f2core import BitVector, with_bruteforce_distance
from .gadgets import (build_encoded_cnot, certify_robust, encoding_witness,
                      robustness_threshold)
from .harness import compile_circuit, format_overhead, overhead_report, run
from .locality import (certify_locality, format_bound_table, rate_bound_report,
                       screen_weight_one)
from .zoo import FAMILIES, get_family

EXIT_OK, EXIT_WITNESS, EXIT_USAGE = 0, 1, 2


def _write(text: str, path: Optional[str]) -> None:
    if path in (None, "-"):
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(path).write_text(text if text.endswith("\n") else text + "\n")


def _read_code(path: str):
    code = io.load_code(Path(path).read_text())
    if code.d is None:
        code = with_bruteforce_distance(code)
    return code


def cmd_zoo(args) -> int:
    if args.zoo_cmd == "list":
        for name, fam in FAMILIES.items():
            print(f"{name:<12} params {fam.params.start}..{fam.params.stop - 1}  ({fam.note})")
        return EXIT_OK
    fam = get_family(args.family)
    if args.param not in fam.params:
        print(f"parameter {args.param} outside {fam.params.start}..{fam.params.stop - 1}",
              file=sys.stderr)
        return EXIT_USAGE
    _write(io.dump_code(fam.build(args.param)), args.output)
    return EXIT_OK


def cmd_analyze(args) -> int:
    code = _read_code(args.code)
    cert = certify_locality(code, args.max_weight)
    problems = cert.problems(code)
    screen = screen_weight_one(cert, code, args.c)
    _write(io.dump_certificate(cert), args.output)
    print(f"{code}: q={cert.q} r={cert.r} k·r^(1/q)/n={cert.bound_ratio:.6f}", file=sys.stderr)
    if screen.flagged:
        print("weight-1 access for indices " + ", ".join(str(i + 1) for i in screen.flagged),
              file=sys.stderr)
    print(f"k·d/n = {screen.kd_over_n} (premise k·d > {screen.c}·n: {screen.premise_holds})",
          file=sys.stderr)
    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        return EXIT_WITNESS
    return EXIT_OK if all(g.r > 0 for g in cert.groups) else EXIT_WITNESS


def cmd_gadget(args) -> int:
    if args.gadget_cmd == "build":
        code = _read_code(args.code)
        i, j = args.control - 1, args.target - 1
        if args.cert:
            cert = io.load_certificate(Path(args.cert).read_text())
        else:
            cert = certify_locality(code, args.max_weight)
        gadget = build_encoded_cnot(code, i, j, cert.groups[i])
        _write(io.dump_bundle(gadget), args.output)
        for note in gadget.lint():
            print(f"lint: {note}", file=sys.stderr)
        return EXIT_OK
    gadget = io.load_bundle(Path(args.bundle).read_text())
    if gadget.code.d is None:
        gadget = type(gadget)(with_bruteforce_distance(gadget.code), gadget.i, gadget.j,
                              gadget.netlist, gadget.partition, gadget.groups)
    if args.gadget_cmd == "verify":
        witness = encoding_witness(gadget.code, gadget.netlist, gadget.i, gadget.j)
        if witness is not None:
            print(f"encoding identity fails on message {witness}")
            return EXIT_WITNESS
        print(f"encodes CNOT {gadget.i + 1} {gadget.j + 1}: ok (depth {gadget.depth})")
        return EXIT_OK
    eps = Fraction(args.epsilon) if args.epsilon else robustness_threshold(gadget, args.mode)
    report = certify_robust(gadget, eps, args.mode, erase_ancillas=args.erase_ancillas,
                            seed=args.seed)
    _write(io.dump_bundle(gadget, report), args.output)
    return EXIT_OK if report.passed else EXIT_WITNESS


def cmd_attack(args) -> int:
    gadget = io.load_bundle(Path(args.bundle).read_text())
    if gadget.code.d is None:
        gadget = type(gadget)(with_bruteforce_distance(gadget.code), gadget.i, gadget.j,
                              gadget.netlist, gadget.partition, gadget.groups)
    if args.replay_erasure is not None:
        erasure = tuple(int(t) - 1 for t in args.replay_erasure.split(",") if t)
        message = BitVector.from_string(args.replay_message)
        failure = replay(gadget, message, erasure, args.mode)
        print("failure reproduced" if failure else "no failure")
        return EXIT_WITNESS if failure else EXIT_OK
    weight = args.max_weight
    if args.strategy == "vertex-cover":
        result = attack_vertex_cover(gadget, gadget.groups, args.mode)
    elif args.strategy == "exhaustive":
        result = attack_exhaustive(gadget, weight if weight is not None else 1, args.mode,
                                   erase_ancillas=args.erase_ancillas)
    elif args.strategy == "random":
        result = attack_random(gadget, weight if weight is not None else 1, args.trials,
                               args.seed, args.mode, erase_ancillas=args.erase_ancillas)
    else:
        result = run_attacks(gadget, gadget.groups, args.mode, max_weight=weight,
                             trials=args.trials, seed=args.seed,
                             erase_ancillas=args.erase_ancillas)
    replay_cmd = None
    if result.found:
        replay_cmd = " ".join([
            "ftlocal", "attack", shlex.quote(args.bundle), "--mode", args.mode,
            "--replay-erasure", ",".join(str(t + 1) for t in result.erasure) or "''",
            "--replay-message", str(result.message)])
    _write(json.dumps(io.attack_to_dict(result, replay_cmd), indent=2), args.output)
    return EXIT_WITNESS if result.found else EXIT_OK


def cmd_simulate(args) -> int:
    code = _read_code(args.code)
    circuit = io.parse_circuit(Path(args.circuit).read_text(), code.k)
    cert = (io.load_certificate(Path(args.cert).read_text()) if args.cert
            else certify_locality(code, args.max_weight))
    plan = compile_circuit(circuit, code, cert)
    schedule = []
    if args.schedule:
        width = max([code.n] + [g.netlist.width for g in plan])
        schedule = io.schedule_from_json(json.loads(Path(args.schedule).read_text()), width)
    m = BitVector.from_string(args.input.ljust(code.k, "0"))
    report = run(plan, code, m, schedule, args.mode, erase_ancillas=args.erase_ancillas)
    _write(io.dump_simulation(report), args.output)
    print(format_overhead(overhead_report(report)), file=sys.stderr)
    return EXIT_OK if report.succeeded else EXIT_WITNESS


def cmd_bound_table(args) -> int:
    codes = []
    if args.family:
        fam = get_family(args.family)
        codes = list(fam.members(range(args.start, args.stop + 1)))
    for path in args.codes:
        codes.append(_read_code(path))
    entries = [(c, certify_locality(c, args.max_weight)) for c in codes]
    rows = rate_bound_report(entries)
    print(format_bound_table(rows))
    return EXIT_OK if all(r.within_bound() for r in rows) else EXIT_WITNESS


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ftlocal", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    z = sub.add_parser("zoo", help="built-in code families")
    zsub = z.add_subparsers(dest="zoo_cmd", required=True)
    zsub.add_parser("list")
    emit = zsub.add_parser("emit")
    emit.add_argument("family")
    emit.add_argument("param", type=int)
    emit.add_argument("-o", "--output")
    z.set_defaults(func=cmd_zoo)

    a = sub.add_parser("analyze", help="locality certificate for a code")
    a.add_argument("code")
    a.add_argument("--max-weight", type=int, default=3)
    a.add_argument("--c", type=float, default=1.0, help="constant in the k·d > c·n screen")
    a.add_argument("-o", "--output")
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("gadget", help="build, verify or certify an encoded CNOT")
    gsub = g.add_subparsers(dest="gadget_cmd", required=True)
    b = gsub.add_parser("build")
    b.add_argument("code")
    b.add_argument("--control", type=int, required=True)
    b.add_argument("--target", type=int, required=True)
    b.add_argument("--cert")
    b.add_argument("--max-weight", type=int, default=3)
    b.add_argument("-o", "--output")
    v = gsub.add_parser("verify")
    v.add_argument("bundle")
    c = gsub.add_parser("certify")
    c.add_argument("bundle")
    c.add_argument("--mode", choices=("dataflow", "blanket"), default="dataflow")
    c.add_argument("--epsilon", help="fraction such as 1/2; defaults to the gadget threshold")
    c.add_argument("--erase-ancillas", action="store_true")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gadget)

    t = sub.add_parser("attack", help="search for erasure sets that break a gadget")
    t.add_argument("bundle")
    t.add_argument("--strategy", choices=("auto", "vertex-cover", "exhaustive", "random"),
                   default="auto")
    t.add_argument("--mode", choices=("dataflow", "blanket"), default="dataflow")
    t.add_argument("--max-weight", type=int)
    t.add_argument("--trials", type=int, default=1000)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--erase-ancillas", action="store_true")
    t.add_argument("--replay-erasure", help="comma-separated 1-based wires")
    t.add_argument("--replay-message", help="message bits, e.g. 101")
    t.add_argument("-o", "--output")
    t.set_defaults(func=cmd_attack)

    s = sub.add_parser("simulate", help="run a sparse CNOT circuit on encoded data")
    s.add_argument("code")
    s.add_argument("circuit")
    s.add_argument("--input", required=True, help="message bits; short inputs are 0-padded")
    s.add_argument("--schedule")
    s.add_argument("--cert")
    s.add_argument("--max-weight", type=int, default=3)
    s.add_argument("--mode", choices=("dataflow", "blanket"), default="dataflow")
    s.add_argument("--erase-ancillas", action="store_true")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_simulate)

    r = sub.add_parser("bound-table", help="rate/distance/locality ratios")
    r.add_argument("codes", nargs="*")
    r.add_argument("--family")
    r.add_argument("--start", type=int, default=3)
    r.add_argument("--stop", type=int, default=10)
    r.add_argument("--max-weight", type=int, default=2)
    r.set_defaults(func=cmd_bound_table)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (FtlocalError, ValueError, KeyError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
