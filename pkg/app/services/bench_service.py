import csv
import logging
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import IO, Dict, Iterable, List, Sequence, Tuple

import numpy as np

from app.enums import DecoderStrategy
from app.models.bitio import BitCursor, BitWriter
from app.models.code import CanonicalCode, FrequencyTable
from app.models.probes import DecodeStats, ProbeStats
from app.schemas.report import BenchPointDetail, BenchReport, BenchRow
from app.services.code_service import build_code, validate
from app.services.codec_service import Decoder
from app.services.corpus_service import make_spec, zipf_generate
from app.utils import floor_log_phi

logger = logging.getLogger(__name__)

CSV_COLUMNS = list(BenchRow.model_fields)


def measure_rare_occurrences(text: Iterable[int], code: CanonicalCode) -> float:
    """Share of the text taken by symbols whose codeword is longer than 2 log_phi sigma."""
    counts = Counter(text.tolist() if isinstance(text, np.ndarray) else text)
    n = sum(counts.values())
    if not n:
        return 0.0
    # L > 2 log_phi sigma  <=>  L > floor(log_phi sigma^2) for integer L
    threshold = floor_log_phi(code.sigma * code.sigma)
    lengths = code.lengths.as_dict()
    rare = sum(count for symbol, count in counts.items() if lengths[symbol] > threshold)
    return rare / n


def codeword_costs(decoder: Decoder) -> List[Tuple[int, ProbeStats]]:
    """
    Probe counters for decoding each codeword on its own, with zeros after it.
    Weighting these by symbol frequency gives the cost of decoding the whole
    text. A search over the padded First values takes the same path for every
    codeword of one depth, so the searching strategies decode one codeword per
    depth and share its counters across the depth.
    """
    per_depth = decoder.strategy in (DecoderStrategy.BIN, DecoderStrategy.EXP)
    by_depth: Dict[int, ProbeStats] = {}
    costs = []
    for symbol, value, length in decoder.code.codewords():
        stats = by_depth.get(length)
        if stats is None:
            stats = ProbeStats()
            cursor = BitCursor(BitWriter().write_bits(value, length).flush(), logical_len=length)
            decoder.decode_symbol(cursor, stats)
            if per_depth:
                by_depth[length] = stats
        costs.append((symbol, stats))
    return costs


def weighted_stats(costs: Sequence[Tuple[int, ProbeStats]], freqs: FrequencyTable) -> DecodeStats:
    counts = dict(freqs.counts)
    stats = DecodeStats()
    for symbol, per_symbol in costs:
        stats.record(per_symbol, times=counts[symbol])
    return stats


def run_point(sigma: int, alpha: float, n: int, seed: int) -> Tuple[BenchRow, BenchPointDetail]:
    started = time.perf_counter()
    text = zipf_generate(make_spec(sigma, alpha, n, seed))
    counts = np.bincount(text, minlength=sigma + 1)
    freqs = FrequencyTable.from_counts({int(s): int(c) for s, c in enumerate(counts) if c})
    code = build_code(freqs)
    report = validate(code, n)
    if not report.ok:
        logger.warning("sigma=%d: code checks failed: %s", sigma, ", ".join(report.failed()))

    part = Decoder(code, DecoderStrategy.PART)
    space = part.cb.space_report()
    wt = part.wt
    part_stats = weighted_stats(codeword_costs(part), freqs)
    exp_stats = weighted_stats(codeword_costs(Decoder(code, DecoderStrategy.EXP)), freqs)
    bin_stats = weighted_stats(codeword_costs(Decoder(code, DecoderStrategy.BIN)), freqs)

    row = BenchRow(
        sigma=sigma,
        alpha=alpha,
        n=n,
        lmax=code.max_len,
        dict_bits_plain=space.plain_bits,
        dict_bits_partitioned=space.partitioned_bits,
        wt_bits=wt.total_bits(),
        avg_probes_part=part_stats.average("pred_node_probes"),
        avg_steps_exp=exp_stats.average("search_steps"),
        avg_steps_bin=bin_stats.average("search_steps"),
        rare_ratio=measure_rare_occurrences(text, code),
        census_s_max=report.census_max_ratio,
    )
    detail = BenchPointDetail(
        sigma=sigma,
        present_sigma=code.sigma,
        seconds=time.perf_counter() - started,
        max_consults=part_stats.max_consults,
        max_node_probes=part_stats.max_node_probes,
        max_steps_exp=exp_stats.max_search_steps,
        wt_payload_bits=wt.payload_bits,
        space_ratio=space.partitioned_bits / space.plain_bits,
    )
    logger.info(
        "bench sigma=%d present=%d lmax=%d ratio=%.3f in %.2fs",
        sigma, code.sigma, code.max_len, detail.space_ratio, detail.seconds,
    )
    return row, detail


def _run_point_args(args: Tuple[int, float, int, int]) -> Tuple[BenchRow, BenchPointDetail]:
    return run_point(*args)


def run_bench(sigma_list: Sequence[int], alpha: float, n: int, seed: int, jobs: int = 1) -> BenchReport:
    points = [(sigma, alpha, n, seed) for sigma in sorted(sigma_list)]
    if jobs > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_point_args, points))
    else:
        results = [run_point(*p) for p in points]
    return BenchReport(rows=[row for row, _ in results], details=[detail for _, detail in results])


def write_csv(rows: Sequence[BenchRow], out: IO[str]) -> None:
    writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.model_dump())
