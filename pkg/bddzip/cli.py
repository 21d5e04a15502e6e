"""
bddzip CLI
Subcomandos: compress, decompress, stats [--json], bench.
Códigos de salida: 0 éxito, 1 uso / configuración, 2 E/S, 3 entrada corrupta.
"""

import argparse
import asyncio
import sys
from typing import List, Optional

from .benchmark.bench import is_non_increasing_within_noise
from .benchmark.stats import render_table
from .core.source import load_source_config, parse_preset
from .infrastructure.config import BddzipConfig
from .infrastructure.errors import BddzipError, CorruptStreamError
from .infrastructure.logger import setup_logger
from .orchestrator import CodecOrchestrator, create_codec_orchestrator

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_CORRUPT = 3


class _Parser(argparse.ArgumentParser):
    """argparse sale con 2 por defecto; aquí los errores de uso salen con 1"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_sizes(text: str) -> List[int]:
    """'1024,4096' o '2^10,2^12'"""
    sizes = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            if token.startswith("2^"):
                sizes.append(1 << int(token[2:]))
            else:
                sizes.append(int(token))
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid size {token!r}")
    if not sizes:
        raise argparse.ArgumentTypeError("at least one size is required")
    for n in sizes:
        if n < 1 or n & (n - 1):
            raise argparse.ArgumentTypeError(f"size {n} is not a power of two")
    return sizes


def _parse_seed(text: str) -> int:
    """Entero sin signo de 64 bits"""
    try:
        seed = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}")
    if not 0 <= seed < 1 << 64:
        raise argparse.ArgumentTypeError(f"seed {seed} outside 0..2^64-1")
    return seed


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bddzip", description="ROBDD level-string compressor")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    compress = subparsers.add_parser("compress", help="compress a file")
    compress.add_argument("input", help="file to compress")
    compress.add_argument("output", help="container file to write")
    compress.set_defaults(handler=cmd_compress)

    decompress = subparsers.add_parser("decompress", help="decompress a container")
    decompress.add_argument("input", help="container file")
    decompress.add_argument("output", help="file to write")
    decompress.set_defaults(handler=cmd_decompress)

    stats = subparsers.add_parser("stats", help="per-level diagnostics of a file")
    stats.add_argument("input", help="file to analyze")
    stats.add_argument("--json", action="store_true", help="print the report as JSON")
    stats.set_defaults(handler=cmd_stats)

    bench = subparsers.add_parser("bench", help="redundancy benchmark against a finite-state source")
    bench.add_argument("--source", required=True,
                       help="bernoulli:<theta> | markov:<r>:<p0,...> | file:<preset.yaml>")
    bench.add_argument("--n", type=_parse_sizes, required=True, help="comma-separated powers of two")
    bench.add_argument("--reps", type=int, default=1, help="samples per size")
    bench.add_argument("--seed", type=_parse_seed, default=None, help="base seed (u64)")
    bench.add_argument("--csv", default=None, help="CSV output path")
    bench.set_defaults(handler=cmd_bench)

    return parser


def cmd_compress(orchestrator: CodecOrchestrator, args: argparse.Namespace) -> int:
    result = orchestrator.compress_file(args.input, args.output)
    print(f"✅ {args.input}: {result.input_bits // 8} bytes -> {result.output_bits // 8} bytes "
          f"(ratio {result.ratio:.4f})")
    return EXIT_OK


def cmd_decompress(orchestrator: CodecOrchestrator, args: argparse.Namespace) -> int:
    result = orchestrator.decompress_file(args.input, args.output)
    print(f"✅ {args.input}: {result.input_bits // 8} bytes -> {(result.output_bits + 7) // 8} bytes")
    return EXIT_OK


def cmd_stats(orchestrator: CodecOrchestrator, args: argparse.Namespace) -> int:
    report = orchestrator.stats_file(args.input).payload
    if args.json:
        print(report.model_dump_json(indent=2))
    else:
        print(render_table(report))
    return EXIT_OK


def cmd_bench(orchestrator: CodecOrchestrator, args: argparse.Namespace) -> int:
    seed = args.seed
    if args.source.startswith("file:"):
        source, preset_seed = load_source_config(args.source[len("file:"):])
        if seed is None:
            seed = preset_seed
    else:
        source = parse_preset(args.source)
    seed = 0 if seed is None else seed

    if args.reps < 1:
        print("error: --reps must be at least 1", file=sys.stderr)
        return EXIT_USAGE

    result = asyncio.run(orchestrator.run_bench(source, args.n, args.reps, seed, args.csv))
    summaries = result.payload["summary"]

    print(f"📊 {source.name}: {len(result.payload['rows'])} samples, seed {seed}")
    print(f"{'n':>10} {'reps':>5} {'mean redundancy':>16} {'per-sample':>12} {'stderr':>10}")
    for summary in summaries:
        print(f"{summary.n:>10} {summary.count:>5} {summary.mean_redundancy:>16.2f} "
              f"{summary.mean_per_sample:>12.4f} {summary.stderr_per_sample:>10.4f}")
    if len(summaries) > 1:
        trend = is_non_increasing_within_noise(
            [s.mean_per_sample for s in summaries], [s.stderr_per_sample for s in summaries]
        )
        print(f"trend: {'non-increasing within noise' if trend else 'INCREASING'}")
    if args.csv:
        print(f"CSV written to {args.csv}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK

    try:
        config = BddzipConfig()
    except ValueError as e:
        print(f"error: invalid configuration: {e}", file=sys.stderr)
        return EXIT_USAGE

    errors = config.validate_config()
    if errors:
        for error in errors:
            print(f"error: {error}", file=sys.stderr)
        return EXIT_USAGE

    try:
        setup_logger(config.logging.level, config.logging.log_file)
        orchestrator = create_codec_orchestrator(config)
        return args.handler(orchestrator, args)
    except CorruptStreamError as e:
        print(f"error: corrupt input: {e}", file=sys.stderr)
        return EXIT_CORRUPT
    except BddzipError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
