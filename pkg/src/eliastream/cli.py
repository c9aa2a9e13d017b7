"""Command-line front end: extract from byte streams, verify, simulate.

Bit order is MSB-first within each byte, both on input and output; a final
partial output byte is zero-padded and the pad length is recorded in the
report.  Reports are line-delimited ``key=value`` pairs with a leading
schema field, written to a side channel (stderr by default).

Exit codes: 0 success, 1 verification violation, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import schursim, verify
from .extractor import StreamExtractor

REPORT_SCHEMA = "eliastream/1"


def unpack_bytes(data: bytes) -> list[int]:
    """Bytes to bits, most significant bit of each byte first."""
    out = []
    for byte in data:
        for k in range(7, -1, -1):
            out.append((byte >> k) & 1)
    return out


def pack_bits(bits) -> tuple[bytes, int]:
    """Bits to bytes (MSB-first); returns (data, zero-pad length)."""
    bits = list(bits)
    pad = (-len(bits)) % 8
    bits = bits + [0] * pad
    data = bytearray()
    for i in range(0, len(bits), 8):
        byte = 0
        for b in bits[i : i + 8]:
            byte = (byte << 1) | b
        data.append(byte)
    return bytes(data), pad


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as handle:
        return handle.read()


def _write_output(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as handle:
            handle.write(data)


def write_report(fields: dict, path: str | None) -> None:
    lines = [f"schema={REPORT_SCHEMA}"]
    lines += [f"{key}={value}" for key, value in fields.items()]
    text = "\n".join(lines) + "\n"
    if path is None or path == "-":
        sys.stderr.write(text)
    else:
        with open(path, "w") as handle:
            handle.write(text)


def cmd_extract(args) -> int:
    started = time.monotonic()
    if args.demand is not None and args.demand < 0:
        raise ValueError("--demand must be >= 0")
    data = _read_input(args.input)
    bits = unpack_bytes(data)
    machine = StreamExtractor()
    produced: list[int] = []
    if args.demand is None:
        for b in bits:
            produced.extend(machine.push(b))
        delivered = produced
        mode = "streaming"
    else:
        for b in bits:
            if len(produced) >= args.demand:
                break
            produced.extend(machine.push(b))
        delivered = produced[: args.demand]
        mode = "on-demand"
    packed, pad = pack_bits(delivered)
    _write_output(args.output, packed)
    state = machine.state
    # bits_read = bits_emitted + purity_len holds exactly; a multi-bit final
    # move can leave produced-but-undelivered bits, reported as pending.
    write_report(
        {
            "mode": mode,
            "bits_read": state.n,
            "bits_emitted": state.l,
            "purity_len": state.n - state.l,
            "delivered": len(delivered),
            "pending": state.l - len(delivered),
            "n": state.n,
            "t": state.t,
            "l": state.l,
            "pad_len": pad,
            "elapsed": f"{time.monotonic() - started:.6f}",
        },
        args.report,
    )
    return 0


def cmd_verify(args) -> int:
    suites = [s.strip() for s in args.suites.split(",") if s.strip()]
    known = {"equivalence", "balanced", "yield", "stats"}
    unknown = set(suites) - known
    if unknown:
        raise SystemExit(f"unknown suites: {sorted(unknown)}")
    fields: dict = {}
    failed = False
    if "equivalence" in suites:
        for n in range(args.max_n + 1):
            report = verify.exhaustive_equivalence(n)
            fields[f"equivalence[{n}]"] = "pass" if report.ok else "FAIL"
            failed |= not report.ok
    if "balanced" in suites:
        for n in range(min(args.max_n, verify.BALANCED_CAP) + 1):
            report = verify.balanced_paths(n)
            fields[f"balanced[{n}]"] = "pass" if report.ok else "FAIL"
            failed |= not report.ok
    if "yield" in suites:
        report = verify.yield_bound_sweep(args.max_n)
        fields["yield_bound"] = "pass" if report.ok else "FAIL"
        failed |= not report.ok
    if "stats" in suites:
        for p in (0.3, 0.5):
            report = verify.statistical_battery(p, args.samples, args.seed)
            fields[f"stats[p={p}]"] = (
                f"{'pass' if report.ok else 'FAIL'} rate={report.rate:.4f} "
                f"monobit_z={report.monobit_z:.3f} serial_z={report.serial_z:.3f}"
            )
            failed |= not report.ok
    write_report(fields, args.report)
    return 1 if failed else 0


def cmd_simulate(args) -> int:
    fields: dict = {"simulate_mode": args.mode, "n": args.n}
    if args.mode == "known":
        state = schursim.simulate_known_basis(args.p, args.n)
    elif args.mode == "universal":
        state = schursim.simulate_universal(args.n, p=args.p, theta=args.theta)
        fields["theta"] = args.theta
    elif args.mode == "huffman":
        state = schursim.huffman_output_state()
        fields["fidelity"] = f"{schursim.huffman_counterexample():.9f}"
    elif args.mode == "vonneumann":
        state = schursim.simulate_von_neumann(args.p, args.n)
        fields["nonhalting_amplitude"] = f"{schursim.nonhalting_amplitude(state):.9f}"
    else:  # pragma: no cover - argparse restricts choices
        raise SystemExit(f"unknown mode {args.mode}")
    if args.mode in ("known", "universal", "vonneumann"):
        fields["p"] = args.p
        max_len = max(len(la.tape) for (la, _) in state.amps)
        fields["expected_pairs"] = f"{sum(l * pr for l, pr in schursim.tape_length_distribution(state).items()):.6f}"
        fields["certain_pairs"] = schursim.certain_pairs(state)
        for k in range(1, max_len + 1):
            prob = schursim.emission_probability(state, k)
            fields[f"emit_prob[{k}]"] = f"{prob:.6f}"
            if prob > 0:
                fields[f"fidelity[{k}]"] = f"{schursim.pair_fidelity(state, k):.9f}"
        if args.mode in ("known", "universal"):
            t_dist = schursim.register_distribution(state, "t")
            l_dist = schursim.register_distribution(state, "l")
            fields["t_entropy"] = f"{schursim.distribution_entropy(t_dist):.6f}"
            fields["l_entropy"] = f"{schursim.distribution_entropy(l_dist):.6f}"
    fields["seeded"] = state.meta.get("seeded", 0)
    write_report(fields, args.report)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eliastream",
        description="Streaming entropy extraction and concentration toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ext = sub.add_parser("extract", help="extract random bits from a byte stream")
    p_ext.add_argument("--input", default="-", help="input path or - for stdin")
    p_ext.add_argument("--output", default="-", help="output path or - for stdout")
    p_ext.add_argument("--demand", type=int, default=None, help="stop after K output bits")
    p_ext.add_argument("--report", default=None, help="report path (default stderr)")
    p_ext.set_defaults(func=cmd_extract)

    p_ver = sub.add_parser("verify", help="run verification suites")
    p_ver.add_argument("--suites", default="equivalence,balanced,yield")
    p_ver.add_argument("--max-n", type=int, default=12, dest="max_n")
    p_ver.add_argument("--samples", type=int, default=100_000)
    p_ver.add_argument("--seed", type=int, default=2024)
    p_ver.add_argument("--report", default=None)
    p_ver.set_defaults(func=cmd_verify)

    p_sim = sub.add_parser("simulate", help="run a coherent simulation")
    p_sim.add_argument("--mode", choices=["known", "universal", "huffman", "vonneumann"], required=True)
    p_sim.add_argument("--n", type=int, default=4, help="qubits (or pairs for vonneumann)")
    p_sim.add_argument("--p", type=float, default=0.5)
    p_sim.add_argument("--theta", type=float, default=0.0)
    p_sim.add_argument("--report", default=None)
    p_sim.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (OSError, ValueError, schursim.SimulatorCapError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
