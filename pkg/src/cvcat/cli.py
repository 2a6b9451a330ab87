"""Command-line entry point.

Exit codes: 0 success, 1 parse or validation error (including bad flags),
2 verification failure, 3 synthesis below target.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .encoder import EncodedCircuit, cost_report, encode_circuit, format_table, table_one
from .resprep import ground_state_encoded, sample_minus_prep
from .router import LineLayout, route_line, routing_overhead
from .textformat import ParseError, print_circuit, read_circuit
from .tsynth import synthesize_t_state
from .verifier import DEFAULT_TOLERANCE, check_catalyst_restored, check_catalytic

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_BELOW_TARGET = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    # usage errors share the validation exit code; 2 is reserved for verify
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _positive_float(text):
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def _positive_int(text):
    x = int(text)
    if x < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return x


def _layout(text):
    try:
        return LineLayout(tuple(int(p) for p in text.split(",")))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(circuit, path):
    text = print_circuit(circuit)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _record(obj, args, path=None):
    """JSON record: to ``path`` if given, stdout if the circuit went to a file, else stderr."""
    line = json.dumps(obj, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(line + "\n")
    elif getattr(args, "output", None):
        print(line)
    else:
        print(line, file=sys.stderr)


def cmd_transpile(args):
    enc = encode_circuit(read_circuit(args.source))
    overhead = 0
    if args.ground_state:
        enc = ground_state_encoded(enc)
    elif args.line:
        layout = args.layout or LineLayout.identity(enc.circuit.n_qubits)
        overhead = routing_overhead(enc.circuit, layout)
        enc = EncodedCircuit(
            route_line(enc.circuit, layout), enc.source, enc.catalysts_used,
            enc.breakdown, enc.phase_eighths, data_qubits=enc.data_qubits,
        )
    _emit(enc.circuit, args.output)
    report = cost_report(enc, overhead).to_json()
    report["phase_eighths"] = enc.phase_eighths
    report["ground_state"] = enc.ground_state
    _record(report, args, args.report)
    return EXIT_OK


def cmd_verify(args):
    source = read_circuit(args.source)
    encoded = read_circuit(args.encoded) if args.encoded else None
    if encoded is None:
        enc = encode_circuit(source)
    else:
        if encoded.n_qubits < source.n_qubits:
            raise ValueError(
                f"encoded circuit has {encoded.n_qubits} qubits, source needs {source.n_qubits}"
            )
        enc = EncodedCircuit(encoded, source, tuple(encoded.catalysts),
                             data_qubits=source.n_qubits)
    cat = check_catalytic(enc, args.tolerance, args.trials, args.seed)
    res = check_catalyst_restored(enc, args.trials, args.seed, args.tolerance)
    passed = cat.passed and res.passed
    out = cat.to_json()
    out.update(
        passed=passed,
        worst_deviation=max(cat.worst_deviation, res.worst_deviation),
        notes=list(cat.notes) + list(res.notes),
        checks={"catalytic": cat.to_json(), "catalyst_restored": res.to_json()},
    )
    print(json.dumps(out, sort_keys=True))
    if not passed:
        print("verification failed", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_stats(args):
    sys.stdout.write(format_table(table_one()))
    return EXIT_OK


def cmd_route(args):
    circuit = read_circuit(args.source)
    layout = args.layout or LineLayout.identity(circuit.n_qubits)
    overhead = routing_overhead(circuit, layout)
    routed = route_line(circuit, layout)
    _emit(routed, args.output)
    _record({"cv_count": routed.native_count, "routing_overhead": overhead}, args)
    return EXIT_OK


def cmd_prep_minus(args):
    outcome = sample_minus_prep(args.seed, args.shots)
    print(json.dumps(outcome.to_json(), sort_keys=True))
    return EXIT_OK


def cmd_synth_t(args):
    result = synthesize_t_state(args.eps, args.qubits, args.cap, strategy=args.strategy)
    _emit(result.circuit, args.output)
    record = result.to_json()
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(json.dumps(record, sort_keys=True) + "\n")
    else:
        _record(record, args)
    if not result.target_reached:
        print(
            f"below target: fidelity {result.achieved_fidelity:.12f} < "
            f"{result.target_fidelity:.12f}",
            file=sys.stderr,
        )
        return EXIT_BELOW_TARGET
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cvcat", description="Catalytic CV-only circuit encoding.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("transpile", help="encode a circuit over CV only")
    t.add_argument("source")
    t.add_argument("-o", "--output", help="encoded circuit file (default stdout)")
    t.add_argument("--report", help="cost report JSON file")
    mode = t.add_mutually_exclusive_group()
    mode.add_argument("--line", action="store_true", help="route onto a 1-D line")
    mode.add_argument("--ground-state", action="store_true",
                      help="rewrite over NCV with |0> ancilla inputs")
    t.add_argument("--layout", type=_layout, help="line positions, e.g. 0,2,1 (with --line)")
    t.set_defaults(func=cmd_transpile)

    v = sub.add_parser("verify", help="check an encoding against its source")
    v.add_argument("source")
    v.add_argument("encoded", nargs="?", help="encoded circuit (default: encode source)")
    v.add_argument("--tolerance", type=_positive_float, default=DEFAULT_TOLERANCE)
    v.add_argument("--trials", type=_positive_int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("stats", help="auxiliary qubits and CV counts for the reference gates")
    s.set_defaults(func=cmd_stats)

    r = sub.add_parser("route", help="route a CV-only circuit onto a line")
    r.add_argument("source")
    r.add_argument("--layout", type=_layout)
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_route)

    m = sub.add_parser("prep-minus", help="sample the post-selected |-> preparation")
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--shots", type=_positive_int, default=1)
    m.set_defaults(func=cmd_prep_minus)

    y = sub.add_parser("synth-t", help="search a Clifford+Toffoli word preparing |T>")
    y.add_argument("--eps", type=float, required=True)
    y.add_argument("--qubits", type=int, default=3)
    y.add_argument("--cap", type=_positive_int, default=10**6)
    y.add_argument("--strategy", choices=("lattice", "beam"), default="lattice")
    y.add_argument("-o", "--output")
    y.add_argument("--json", help="stats record file")
    y.set_defaults(func=cmd_synth_t)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    if getattr(args, "layout", None) is not None and args.command == "transpile" and not args.line:
        print("cvcat: --layout needs --line", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"cvcat: parse error, {exc}", file=sys.stderr)
    except (ValueError, OSError) as exc:
        print(f"cvcat: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
