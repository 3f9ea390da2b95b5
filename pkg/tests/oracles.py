"""Brute-force reference implementations used by the differential tests."""
import random
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from app.models.code import CanonicalCode, CodeLengths, FrequencyTable
from app.services.code_service import build_code, canonicalize

MAX_TEST_DEPTH = 50


def naive_rank(bits: Sequence[int], bit: int, i: int) -> int:
    return sum(1 for b in bits[:i] if b == bit)


def naive_select(bits: Sequence[int], bit: int, j: int) -> int:
    if j == 0:
        return 0
    seen = 0
    for pos, b in enumerate(bits, start=1):
        if b == bit:
            seen += 1
            if seen == j:
                return pos
    raise ValueError(j)


def naive_seq_rank(values: Sequence[int], value: int, i: int) -> int:
    return sum(1 for v in values[:i] if v == value)


def naive_seq_select(values: Sequence[int], value: int, r: int) -> int:
    positions = [pos for pos, v in enumerate(values, start=1) if v == value]
    return positions[r - 1]


def padded_pair_pred(code: CanonicalCode, x: int) -> Tuple[int, int]:
    """(depth, First) of the largest padded First <= x, by scanning every pair."""
    best = None
    for padded, depth, first in code.padded_first():
        if padded <= x:
            best = (depth, first)
    return best


def plain_first(code: CanonicalCode) -> List[Optional[int]]:
    """First[l] for l = 1..lmax by walking the codewords."""
    first: List[Optional[int]] = [None] * code.max_len
    for _, value, length in code.codewords():
        if first[length - 1] is None:
            first[length - 1] = value
    return first


def min_weighted_depth(weights: Sequence[int]) -> int:
    """Cheapest sum of weight * depth over every full binary tree on these leaves."""

    @lru_cache(maxsize=None)
    def best(state: Tuple[int, ...]) -> int:
        if len(state) == 1:
            return 0
        result = None
        for i in range(len(state)):
            for j in range(i + 1, len(state)):
                merged = state[i] + state[j]
                rest = state[:i] + state[i + 1:j] + state[j + 1:] + (merged,)
                cost = merged + best(tuple(sorted(rest)))
                if result is None or cost < result:
                    result = cost
        return result

    return best(tuple(sorted(weights)))


def random_frequencies(rng: random.Random, max_sigma: int = 64) -> FrequencyTable:
    sigma = rng.randint(2, max_sigma)
    shape = rng.choice(["uniform", "skewed", "geometric"])
    if shape == "uniform":
        counts = [rng.randint(1, 100) for _ in range(sigma)]
    elif shape == "skewed":
        counts = [max(1, int(1000 / (r + 1) ** rng.uniform(0.5, 2.0))) for r in range(sigma)]
    else:
        sigma = min(sigma, 40)
        counts = [rng.randint(1, 3) * 2 ** min(r, 30) for r in range(sigma)]
    symbols = rng.sample(range(1, 4 * max_sigma), sigma)
    return FrequencyTable.from_counts(dict(zip(symbols, counts)))


def random_tree_code(rng: random.Random, max_sigma: int = 64) -> CanonicalCode:
    """Canonical code of a random full binary tree, possibly with empty depths."""
    sigma = rng.randint(2, max_sigma)
    depths = [0]
    while len(depths) < sigma:
        i = rng.randrange(len(depths))
        if depths[i] >= MAX_TEST_DEPTH:
            continue
        d = depths.pop(i) + 1
        depths += [d, d]
    symbols = sorted(rng.sample(range(1, 4 * max_sigma), sigma))
    rng.shuffle(depths)
    return canonicalize(CodeLengths(tuple(symbols), tuple(depths)))


def random_code(rng: random.Random, max_sigma: int = 64) -> CanonicalCode:
    if rng.random() < 0.5:
        return build_code(random_frequencies(rng, max_sigma))
    return random_tree_code(rng, max_sigma)


def codeword_bits(code: CanonicalCode) -> Dict[int, str]:
    return {symbol: format(value, f"0{length}b") for symbol, value, length in code.codewords()}
