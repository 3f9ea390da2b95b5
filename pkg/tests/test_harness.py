import io
import math
import os
from collections import Counter

import numpy as np
import pytest

from app.enums import DecoderStrategy, PayloadFormat
from app.exceptions import InvalidParameterError
from app.models.bitio import BitCursor, BitWriter
from app.models.code import FrequencyTable
from app.models.probes import ProbeStats
from app.services.bench_service import (
    CSV_COLUMNS,
    codeword_costs,
    measure_rare_occurrences,
    run_bench,
    run_point,
    write_csv,
)
from app.services.code_service import build_code
from app.services.codec_service import Decoder
from app.services.corpus_service import make_spec, read_tokens, splitmix64, write_tokens, zipf_generate
from app.utils import ceil_log2
from tests.oracles import random_code

MASK64 = (1 << 64) - 1


def reference_splitmix64(seed, n):
    out, state = [], seed
    for _ in range(n):
        state = (state + 0x9E3779B97F4A7C15) & MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        out.append(z ^ (z >> 31))
    return out


def reference_zipf(sigma, alpha, n, seed):
    weights = [r ** -alpha for r in range(1, sigma + 1)]
    total = sum(weights)
    cdf, running = [], 0.0
    for w in weights:
        running += w
        cdf.append(running / total)
    symbols = []
    for z in reference_splitmix64(seed, n):
        u = (z >> 11) * 2.0 ** -53
        r = next((i for i, c in enumerate(cdf) if c > u), sigma - 1)
        symbols.append(r + 1)
    return symbols


def test_splitmix64_known_outputs():
    assert splitmix64(0, 3).tolist() == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_splitmix64_matches_scalar_reference():
    for seed in (1, 42, 2 ** 64 - 1):
        assert splitmix64(seed, 50).tolist() == reference_splitmix64(seed, 50)


def test_zipf_small_fixture():
    symbols = zipf_generate(make_spec(4, 1.0, 8, 42)).tolist()
    assert symbols == reference_zipf(4, 1.0, 8, 42)
    assert all(1 <= s <= 4 for s in symbols)


def test_zipf_is_deterministic():
    spec = make_spec(1000, 1.0, 5000, 7)
    assert np.array_equal(zipf_generate(spec), zipf_generate(spec))


def test_zipf_large_alpha_collapses_to_rank_one():
    symbols = zipf_generate(make_spec(4, 8.0, 10 ** 4, 3))
    assert np.count_nonzero(symbols == 1) / len(symbols) >= 0.9


def test_zipf_rank_frequencies_decrease():
    counts = Counter(zipf_generate(make_spec(8, 1.0, 50000, 11)).tolist())
    assert counts[1] > counts[2] > counts[4] > counts[8]


@pytest.mark.parametrize("sigma, alpha, n, seed", [(1, 1.0, 10, 0), (4, 0.0, 10, 0), (4, 1.0, -1, 0), (4, 1.0, 10, 2 ** 64)])
def test_zipf_rejects_bad_parameters(sigma, alpha, n, seed):
    with pytest.raises(InvalidParameterError):
        make_spec(sigma, alpha, n, seed)


def test_token_formats():
    assert read_tokens(b"\x00\x01\xff") == [0, 1, 255]
    data = write_tokens([1, 70000, 2 ** 32 - 1], PayloadFormat.U32)
    assert data == b"\x01\x00\x00\x00\x70\x11\x01\x00\xff\xff\xff\xff"
    assert read_tokens(data, PayloadFormat.U32) == [1, 70000, 2 ** 32 - 1]
    with pytest.raises(InvalidParameterError):
        write_tokens([256], PayloadFormat.BYTES)
    with pytest.raises(InvalidParameterError):
        read_tokens(b"\x00\x01\x02", PayloadFormat.U32)


def test_rare_occurrences_running_example(running_code, running_text):
    assert measure_rare_occurrences(running_text, running_code) == 0.0


def test_rare_occurrences_uniform_text():
    text = list(range(1, 513)) * 4
    assert measure_rare_occurrences(text, build_code(FrequencyTable.from_symbols(text))) == 0.0


def test_rare_occurrences_counts_deep_symbols():
    # Fibonacci weights give a code of depth sigma - 1, past 2 log_phi sigma for sigma = 12
    fib = [1, 1]
    while len(fib) < 12:
        fib.append(fib[-1] + fib[-2])
    text = [s for s, f in enumerate(fib, start=1) for _ in range(f)]
    code = build_code(FrequencyTable.from_symbols(text))
    assert code.max_len == 11
    # 2 log_phi 12 = 10.33, so only the two depth-11 symbols count
    assert measure_rare_occurrences(np.array(text), code) == 2 / len(text)


def test_codeword_costs_share_counters_within_a_depth(rng):
    for _ in range(30):
        code = random_code(rng)
        for strategy in (DecoderStrategy.BIN, DecoderStrategy.EXP):
            decoder = Decoder(code, strategy)
            costs = dict(codeword_costs(decoder))
            assert set(costs) == set(code.symbols_in_canonical_order)
            for symbol, value, length in code.codewords():
                stats = ProbeStats()
                cursor = BitCursor(BitWriter().write_bits(value, length).flush(), logical_len=length)
                decoder.decode_symbol(cursor, stats)
                assert costs[symbol] == stats, (strategy, length)


def test_run_point_row():
    row, detail = run_point(256, 1.0, 20000, 5)
    assert row.sigma == 256 and row.n == 20000
    assert row.lmax >= ceil_log2(detail.present_sigma)
    assert row.dict_bits_partitioned > 0 and row.dict_bits_plain > 0
    assert detail.max_consults <= 4
    assert detail.max_steps_exp <= 2 * ceil_log2(row.lmax) + 2
    assert row.census_s_max <= 8
    assert row.avg_steps_bin <= ceil_log2(row.lmax) + 1


def test_bench_csv_is_stable():
    first = run_bench([128, 64], 1.0, 5000, 9)
    second = run_bench([64, 128], 1.0, 5000, 9)
    assert [r.sigma for r in first.rows] == [64, 128]
    assert first.rows == second.rows
    out = io.StringIO()
    write_csv(first.rows, out)
    lines = out.getvalue().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert lines[0].startswith("sigma,alpha,n,lmax,dict_bits_plain,dict_bits_partitioned,wt_bits")
    assert lines[0].endswith("rare_ratio,census_s_max")
    assert len(lines) == 3


def test_bench_process_pool_matches_serial():
    serial = run_bench([64, 256], 1.0, 3000, 1)
    pooled = run_bench([64, 256], 1.0, 3000, 1, jobs=2)
    assert serial.rows == pooled.rows


@pytest.fixture(scope="module")
def zipf_sweep():
    sigmas = [2 ** e for e in range(10, 21, 2)]
    return run_bench(sigmas, 1.0, 10 ** 6, 42, jobs=min(len(sigmas), os.cpu_count() or 1))


@pytest.mark.slow
def test_zipf_sweep_acceptance(zipf_sweep):
    assert [row.sigma for row in zipf_sweep.rows] == [2 ** e for e in range(10, 21, 2)]
    for row, detail in zip(zipf_sweep.rows, zipf_sweep.details):
        assert row.dict_bits_partitioned <= row.dict_bits_plain, row
        assert row.rare_ratio * row.sigma <= 32
        assert row.census_s_max <= 8
        assert row.avg_steps_exp <= 4 * math.log2(math.log2(row.sigma))
        assert detail.max_steps_exp <= 2 * ceil_log2(row.lmax) + 2
        assert detail.max_consults <= 4
        assert row.wt_bits <= 1.25 * detail.present_sigma * ceil_log2(row.lmax)


@pytest.mark.slow
@pytest.mark.xfail(strict=True, reason=(
    "Zipf text spreads its mass over the depth index, where galloping costs about 2 lg i "
    "against lg m; at fixed n lmax saturates while class key widths keep growing with sigma"
))
def test_zipf_sweep_trends(zipf_sweep):
    assert all(row.avg_steps_exp <= row.avg_steps_bin for row in zipf_sweep.rows)
    ratios = [detail.space_ratio for detail in zipf_sweep.details]
    assert all(later <= earlier for earlier, later in zip(ratios, ratios[1:]))


@pytest.mark.slow
def test_rare_occurrences_zipf_4096():
    text = zipf_generate(make_spec(2 ** 12, 1.0, 10 ** 6, 42))
    code = build_code(FrequencyTable.from_symbols(text.tolist()))
    assert measure_rare_occurrences(text, code) <= 32 / 2 ** 12
