"""
Synthetic corpora and token files.

Draw k (k = 1..n) of a Zipf text uses SplitMix64:

    z = seed + k * 0x9E3779B97F4A7C15            (mod 2^64)
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)
    u = (z >> 11) * 2^-53                        in [0, 1)

and maps u to the smallest rank r with cdf(r) > u, where cdf is the
normalized cumulative sum of r^-alpha over r = 1..sigma. Symbols are ranks.
"""
import logging
from typing import List, Sequence

import numpy as np
from pydantic import ValidationError

from app.enums import PayloadFormat
from app.exceptions import InvalidParameterError
from app.schemas.corpus import ZipfSpec

logger = logging.getLogger(__name__)

GOLDEN_GAMMA = np.uint64(0x9E3779B97F4A7C15)
MIX_1 = np.uint64(0xBF58476D1CE4E5B9)
MIX_2 = np.uint64(0x94D049BB133111EB)
U32_MAX = 2 ** 32 - 1


def make_spec(sigma: int, alpha: float, n: int, seed: int) -> ZipfSpec:
    try:
        return ZipfSpec(sigma=sigma, alpha=alpha, n=n, seed=seed)
    except ValidationError as exc:
        raise InvalidParameterError(f"invalid corpus parameters: {exc.errors()[0]['msg']}") from exc


def splitmix64(seed: int, n: int) -> np.ndarray:
    """The first n outputs of a SplitMix64 stream as uint64."""
    with np.errstate(over="ignore"):
        z = np.arange(1, n + 1, dtype=np.uint64) * GOLDEN_GAMMA + np.uint64(seed)
        z = (z ^ (z >> np.uint64(30))) * MIX_1
        z = (z ^ (z >> np.uint64(27))) * MIX_2
        return z ^ (z >> np.uint64(31))


def uniform_draws(seed: int, n: int) -> np.ndarray:
    return (splitmix64(seed, n) >> np.uint64(11)).astype(np.float64) * 2.0 ** -53


def zipf_cdf(sigma: int, alpha: float) -> np.ndarray:
    weights = np.arange(1, sigma + 1, dtype=np.float64) ** -alpha
    cdf = np.cumsum(weights)
    return cdf / cdf[-1]


def zipf_generate(spec: ZipfSpec) -> np.ndarray:
    """n symbols in 1..sigma, P(r) proportional to r^-alpha; equal specs give equal arrays."""
    u = uniform_draws(spec.seed, spec.n)
    ranks = np.searchsorted(zipf_cdf(spec.sigma, spec.alpha), u, side="right")
    symbols = np.minimum(ranks, spec.sigma - 1).astype(np.uint32) + 1
    logger.debug("zipf text: sigma=%d alpha=%s n=%d seed=%d", spec.sigma, spec.alpha, spec.n, spec.seed)
    return symbols


def read_tokens(data: bytes, fmt: PayloadFormat = PayloadFormat.BYTES) -> List[int]:
    if PayloadFormat(fmt) is PayloadFormat.BYTES:
        return list(data)
    if len(data) % 4:
        raise InvalidParameterError(f"u32 token file length {len(data)} is not a multiple of 4")
    return np.frombuffer(data, dtype="<u4").tolist()


def write_tokens(symbols: Sequence[int], fmt: PayloadFormat = PayloadFormat.BYTES) -> bytes:
    if PayloadFormat(fmt) is PayloadFormat.BYTES:
        try:
            return bytes(symbols)
        except ValueError as exc:
            raise InvalidParameterError("symbols above 255 need the u32 format") from exc
    values = np.asarray(symbols, dtype=np.int64)
    if values.size and (values.min() < 0 or values.max() > U32_MAX):
        raise InvalidParameterError("u32 tokens must lie in 0..2^32-1")
    return values.astype("<u4").tobytes()
