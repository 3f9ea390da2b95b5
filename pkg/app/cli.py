"""
chc command line.

    chc encode <in> <out> [--format bytes|u32] [--decoder check|tree|bin|exp|part]
    chc decode <in> <out> [--decoder tree|bin|exp|part] [--format bytes|u32]
    chc inspect <file>
    chc gen --sigma S --alpha A --n N --seed K <out> [--format u32|bytes]
    chc bench [--sigma-list ...] [--alpha A] [--n N] [--seed K] [--csv out] [--jobs J]

Exit status: 0 on success, 1 for bad data, 2 for usage and I/O problems.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from app.config import configure_logging, parse_sigma_list, settings
from app.enums import DecoderStrategy, PayloadFormat
from app.models.code import FrequencyTable
from app.services.bench_service import run_bench, write_csv
from app.services.code_service import build_code
from app.services.codec_service import decode_stream, encode_stream, inspect_stream
from app.services.corpus_service import make_spec, read_tokens, write_tokens, zipf_generate

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DATA = 1
EXIT_USAGE = 2

CHECK_ALL = "check"
STRATEGIES = [s.value for s in DecoderStrategy]
FORMATS = [f.value for f in PayloadFormat]


def _sigma_list(raw: str) -> List[int]:
    try:
        return parse_sigma_list(raw)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid sigma list {raw!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chc", description="Canonical Huffman codec with a partitioned code dictionary")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="compress a token file into a CHC1 container")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--format", choices=FORMATS, default=PayloadFormat.BYTES.value)
    p.add_argument("--decoder", choices=[CHECK_ALL] + STRATEGIES, default=None,
                   help="decode the result again and compare; 'check' tries every decoder")

    p = sub.add_parser("decode", help="decompress a CHC1 container")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--decoder", choices=STRATEGIES, default=settings.default_decoder.value)
    p.add_argument("--format", choices=FORMATS, default=PayloadFormat.BYTES.value)

    p = sub.add_parser("inspect", help="print header, dictionary space and code checks")
    p.add_argument("input")

    p = sub.add_parser("gen", help="write a Zipf-distributed token file")
    p.add_argument("--sigma", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--format", choices=FORMATS, default=PayloadFormat.U32.value)
    p.add_argument("output")

    p = sub.add_parser("bench", help="sweep sigma over Zipf texts and report dictionary costs")
    p.add_argument("--sigma-list", type=_sigma_list, default=settings.get_sigma_list())
    p.add_argument("--alpha", type=float, default=settings.bench_alpha)
    p.add_argument("--n", type=int, default=settings.bench_n)
    p.add_argument("--seed", type=int, default=settings.bench_seed)
    p.add_argument("--csv", default=None, help="write rows to this CSV file")
    p.add_argument("--jobs", type=int, default=settings.bench_jobs)
    return parser


def cmd_encode(args: argparse.Namespace) -> int:
    symbols = read_tokens(Path(args.input).read_bytes(), args.format)
    code = build_code(FrequencyTable.from_symbols(symbols))
    blob = encode_stream(code, symbols)
    if args.decoder is not None:
        strategies = list(DecoderStrategy) if args.decoder == CHECK_ALL else [DecoderStrategy(args.decoder)]
        for strategy in strategies:
            if decode_stream(blob, strategy) != symbols:
                print(f"error: {strategy.value} decoder does not reproduce the input", file=sys.stderr)
                return EXIT_DATA
        logger.info("round trip verified with %s", ", ".join(s.value for s in strategies))
    Path(args.output).write_bytes(blob)
    print(f"encoded n={len(symbols)} sigma={code.sigma} lmax={code.max_len} bytes={len(blob)}")
    return EXIT_OK


def cmd_decode(args: argparse.Namespace) -> int:
    symbols = decode_stream(Path(args.input).read_bytes(), DecoderStrategy(args.decoder))
    Path(args.output).write_bytes(write_tokens(symbols, args.format))
    logger.info("decoded %d symbols with the %s decoder", len(symbols), args.decoder)
    return EXIT_OK


def cmd_inspect(args: argparse.Namespace) -> int:
    info = inspect_stream(Path(args.input).read_bytes())
    header = info.header
    print(f"n={header.n}")
    print(f"sigma={header.sigma_present}")
    print(f"lmax={header.max_len}")
    print(f"count_per_len={header.count_per_len}")
    print(f"header_bytes={header.size_bytes} payload_bytes={info.payload_bytes}")
    if info.space is not None:
        space = info.space
        print(f"W={space.long_width} W'={space.short_width} "
              f"long_trees={space.long_trees} short_trees={space.short_trees}")
        print(f"dict_bits_partitioned={space.partitioned_bits} dict_bits_plain={space.plain_bits}")
    if info.validation is not None:
        report = info.validation
        print("tail census: " + " ".join(f"s>={s}:{count}" for s, count in sorted(report.tail_census.items())))
        print(f"census max count*2^s/sigma = {report.census_max_ratio:.3f}")
        for check in report.checks:
            mark = "ok" if check.passed else "FAILED"
            extra = f" ({check.codeword})" if check.codeword else ""
            print(f"  {check.name}: {mark}{extra}")
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    symbols = zipf_generate(make_spec(args.sigma, args.alpha, args.n, args.seed))
    Path(args.output).write_bytes(write_tokens(symbols.tolist(), args.format))
    logger.info("wrote %d symbols to %s", len(symbols), args.output)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    report = run_bench(args.sigma_list, args.alpha, args.n, args.seed, jobs=args.jobs)
    if args.csv:
        with open(args.csv, "w", newline="") as out:
            write_csv(report.rows, out)
    else:
        write_csv(report.rows, sys.stdout)
    for detail in report.details:
        print(
            f"sigma={detail.sigma} present={detail.present_sigma} ratio={detail.space_ratio:.3f} "
            f"max_consults={detail.max_consults} max_steps_exp={detail.max_steps_exp} "
            f"seconds={detail.seconds:.2f}",
            file=sys.stderr,
        )
    return EXIT_OK


COMMANDS = {
    "encode": cmd_encode,
    "decode": cmd_decode,
    "inspect": cmd_inspect,
    "gen": cmd_gen,
    "bench": cmd_bench,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    configure_logging("DEBUG" if args.verbose else None)
    try:
        return COMMANDS[args.command](args)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
