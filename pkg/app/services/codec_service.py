"""
Symbol and stream coding over a canonical code, and the CHC1 container:

    magic "CHC1" | version u8 | n u64 | sigma u32 | lmax u8
    | lmax x u32 count per length | sigma x u32 symbols in canonical order
    | MSB-first payload, zero padded to a byte

All integers are little endian. The decoder stops after n symbols, so the
padding and the phantom zeros read past the end never turn into symbols.
"""
import logging
import struct
from functools import cached_property, lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from app.enums import DecoderStrategy
from app.exceptions import (
    BadMagicError,
    CorruptStreamError,
    EndOfStreamError,
    KraftViolationError,
    TruncatedPayloadError,
    UnknownSymbolError,
    UnsupportedVersionError,
)
from app.models.bitio import BitCursor, BitWriter
from app.models.code import CanonicalCode, FrequencyTable, bit_string
from app.models.codebook import PartitionedCodebook
from app.models.probes import DecodeStats, ProbeStats
from app.models.wavelet_tree import WaveletTree
from app.schemas.codec import InspectResponse
from app.schemas.header import MAGIC, VERSION, FileHeader
from app.services.code_service import build_code, code_from_header, validate
from app.utils import low_mask

logger = logging.getLogger(__name__)

_FIXED = struct.Struct("<4sBQIB")
REFILL_BYTES = 8
LOOKUP_CACHE_SIZE = 1 << 16


class Encoder:
    """L over the present symbols in id order, plus the partitioned dictionary."""

    def __init__(self, code: CanonicalCode):
        self.code = code
        self._symbols = code.lengths.symbols
        self._index = {symbol: i for i, symbol in enumerate(self._symbols, start=1)}
        self.wt = WaveletTree(code.lengths.lengths, alphabet_size=code.max_len)
        self.cb = PartitionedCodebook.build(code)

    def encode_symbol(self, c: int, stats: Optional[ProbeStats] = None) -> Tuple[int, int]:
        """(codeword value, length) of symbol c."""
        i = self._index.get(c)
        if i is None:
            raise UnknownSymbolError(f"symbol {c} is not in the code")
        length = self.wt.access(i, stats)
        first = self.cb.first_of_depth(length, stats)
        return first + self.wt.rank(length, i, stats) - 1, length

    @cached_property
    def table(self) -> Dict[int, Tuple[int, int]]:
        return {c: self.encode_symbol(c) for c in self._symbols}


class Decoder:

    def __init__(self, code: CanonicalCode, strategy: DecoderStrategy = DecoderStrategy.PART):
        self.code = code
        self.strategy = DecoderStrategy(strategy)
        self.max_len = code.max_len
        self._symbols = code.lengths.symbols
        if self.strategy is DecoderStrategy.PART:
            self.wt = WaveletTree(code.lengths.lengths, alphabet_size=code.max_len)
            self.cb = PartitionedCodebook.build(code)
        elif self.strategy is DecoderStrategy.TREE:
            self._build_tree()
        else:
            rows = code.padded_first()
            self._padded = [padded for padded, _, _ in rows]
            self._depths = [depth for _, depth, _ in rows]
            self._firsts = [first for _, _, first in rows]
            self._offsets = {}
            position = 0
            for depth, count in enumerate(code.count_per_len, start=1):
                self._offsets[depth] = position
                position += count

    def _build_tree(self) -> None:
        # children[node] = [left, right]: None, an inner node id, or ~position of a leaf
        self._children: List[List[Optional[int]]] = [[None, None]]
        for position, (_, value, length) in enumerate(self.code.codewords()):
            node = 0
            for shift in range(length - 1, 0, -1):
                bit = (value >> shift) & 1
                if self._children[node][bit] is None:
                    self._children[node][bit] = len(self._children)
                    self._children.append([None, None])
                node = self._children[node][bit]
            self._children[node][value & 1] = ~position

    def decode_binsearch_depth(self, x: int, stats: Optional[ProbeStats] = None) -> Tuple[int, int]:
        """Predecessor of x among the padded First values by binary search."""
        i, steps = self._bin_search(x, 0, len(self._padded) - 1)
        if stats is not None:
            stats.search_steps += steps
        return self._depths[i], self._firsts[i]

    def decode_expsearch_depth(self, x: int, stats: Optional[ProbeStats] = None) -> Tuple[int, int, int]:
        """Same predecessor by galloping from the head of the list; also returns the probe count."""
        padded = self._padded
        m = len(padded)
        steps = 0
        hi = 1
        while hi < m:
            steps += 1
            if padded[hi] > x:
                break
            hi <<= 1
        i, more = self._bin_search(x, hi >> 1, min(hi, m) - 1)
        steps += more
        if stats is not None:
            stats.search_steps += steps
        return self._depths[i], self._firsts[i], steps

    def _bin_search(self, x: int, lo: int, top: int) -> Tuple[int, int]:
        # padded[lo] <= x holds on entry
        steps = 0
        while lo < top:
            mid = (lo + top + 1) >> 1
            steps += 1
            if self._padded[mid] <= x:
                lo = mid
            else:
                top = mid - 1
        return lo, steps

    def decode_treewalk(self, cursor: BitCursor, stats: Optional[ProbeStats] = None) -> int:
        node = 0
        while node >= 0:
            bit = cursor.read_bits(1)
            if stats is not None:
                stats.reads += 1
            node = self._children[node][bit]
            if node is None:
                raise CorruptStreamError(f"bit {bit} at offset {cursor.bit_offset - 1} leaves the code tree")
        return self.code.symbols_in_canonical_order[~node]

    def decode_symbol(self, cursor: BitCursor, stats: Optional[ProbeStats] = None) -> int:
        if self.strategy is DecoderStrategy.TREE:
            return self.decode_treewalk(cursor, stats)

        x = cursor.peek_bits(self.max_len)
        if self.strategy is DecoderStrategy.PART:
            length, first = self.cb.lookup_depth(x, stats)
        elif self.strategy is DecoderStrategy.EXP:
            length, first, _ = self.decode_expsearch_depth(x, stats)
        else:
            length, first = self.decode_binsearch_depth(x, stats)
        value = cursor.read_bits(length)
        if stats is not None:
            stats.peeks += 1
            stats.reads += 1
        r = value - first + 1
        if not 1 <= r <= self.code.count_per_len[length - 1]:
            raise _not_in_code(value, length)
        if self.strategy is DecoderStrategy.PART:
            return self._symbols[self.wt.select(length, r, stats) - 1]
        return self.code.symbols_in_canonical_order[self._offsets[length] + r - 1]

    def decode_all(self, payload: bytes, n: int) -> List[int]:
        """
        The first n symbols of a payload, decoded in one loop without counters.
        Same symbols and errors as n calls to decode_symbol; each distinct peek
        and each distinct (length, rank) pair is resolved only once.
        """
        if self.strategy is DecoderStrategy.TREE:
            return self._walk_all(payload, n)
        max_len = self.max_len
        window = low_mask(max_len)
        masks = [low_mask(length) for length in range(max_len + 1)]
        counts = (0,) + self.code.count_per_len
        if self.strategy is DecoderStrategy.PART:
            depth_of = lru_cache(maxsize=LOOKUP_CACHE_SIZE)(self.cb.lookup_depth)
            select = lru_cache(maxsize=None)(self.wt.select)
            symbols = self._symbols

            def symbol_of(length: int, r: int) -> int:
                return symbols[select(length, r) - 1]
        else:
            galloping = self.strategy is DecoderStrategy.EXP

            def search(x: int) -> Tuple[int, int]:
                if galloping:
                    return self.decode_expsearch_depth(x)[:2]
                return self.decode_binsearch_depth(x)

            depth_of = lru_cache(maxsize=LOOKUP_CACHE_SIZE)(search)
            order, offsets = self.code.symbols_in_canonical_order, self._offsets

            def symbol_of(length: int, r: int) -> int:
                return order[offsets[length] + r - 1]

        out: List[int] = []
        append = out.append
        acc = nbits = pos = 0
        for _ in range(n):
            if nbits < max_len:
                acc, nbits, pos = _refill(payload, acc, nbits, pos)
            if nbits >= max_len:
                x = (acc >> (nbits - max_len)) & window
            else:
                # past the end every bit reads as zero
                x = (acc << (max_len - nbits)) & window
            length, first = depth_of(x)
            if length > nbits:
                raise EndOfStreamError(f"payload ends after {len(out)} of {n} symbols")
            nbits -= length
            value = (acc >> nbits) & masks[length]
            r = value - first + 1
            if not 1 <= r <= counts[length]:
                raise _not_in_code(value, length)
            append(symbol_of(length, r))
        return out

    def _walk_all(self, payload: bytes, n: int) -> List[int]:
        children = self._children
        order = self.code.symbols_in_canonical_order
        out: List[int] = []
        acc = nbits = pos = 0
        for _ in range(n):
            node = 0
            while node >= 0:
                if not nbits:
                    acc, nbits, pos = _refill(payload, acc, nbits, pos)
                    if not nbits:
                        raise EndOfStreamError(f"payload ends after {len(out)} of {n} symbols")
                nbits -= 1
                bit = (acc >> nbits) & 1
                node = children[node][bit]
                if node is None:
                    raise CorruptStreamError(f"bit {bit} at offset {8 * pos - nbits - 1} leaves the code tree")
            out.append(order[~node])
        return out


def _refill(payload: bytes, acc: int, nbits: int, pos: int) -> Tuple[int, int, int]:
    """Append up to REFILL_BYTES payload bytes to the nbits live bits of acc."""
    chunk = payload[pos:pos + REFILL_BYTES]
    acc = ((acc & low_mask(nbits)) << (8 * len(chunk))) | int.from_bytes(chunk, "big")
    return acc, nbits + 8 * len(chunk), pos + len(chunk)


def _not_in_code(value: int, length: int) -> CorruptStreamError:
    bits = bit_string(value, length)
    return CorruptStreamError(f"codeword {bits} is not in the code", codeword=bits)


def header_of(code: CanonicalCode, n: int) -> FileHeader:
    return FileHeader(
        n=n,
        sigma_present=code.sigma,
        max_len=code.max_len,
        count_per_len=list(code.count_per_len),
        symbols_in_canonical_order=list(code.symbols_in_canonical_order),
    )


def pack_header(header: FileHeader) -> bytes:
    return b"".join((
        _FIXED.pack(MAGIC, VERSION, header.n, header.sigma_present, header.max_len),
        struct.pack(f"<{len(header.count_per_len)}I", *header.count_per_len),
        struct.pack(f"<{len(header.symbols_in_canonical_order)}I", *header.symbols_in_canonical_order),
    ))


def parse_header(data: bytes) -> Tuple[FileHeader, int]:
    """Header and the byte offset where the payload starts."""
    if len(data) >= len(MAGIC) and data[:len(MAGIC)] != MAGIC:
        raise BadMagicError(f"bad magic {data[:len(MAGIC)]!r}, expected {MAGIC!r}")
    if len(data) < _FIXED.size:
        raise TruncatedPayloadError(f"header needs {_FIXED.size} bytes, got {len(data)}")
    _, version, n, sigma, max_len = _FIXED.unpack_from(data)
    if version != VERSION:
        raise UnsupportedVersionError(f"unsupported version {version}, expected {VERSION}")
    end = _FIXED.size + 4 * (max_len + sigma)
    if len(data) < end:
        raise TruncatedPayloadError(f"header tables need {end} bytes, got {len(data)}")
    counts = list(struct.unpack_from(f"<{max_len}I", data, _FIXED.size))
    symbols = list(struct.unpack_from(f"<{sigma}I", data, _FIXED.size + 4 * max_len))
    if sum(counts) != sigma:
        raise KraftViolationError(f"counts per length sum to {sum(counts)}, header says sigma={sigma}")
    if max_len and not counts[-1]:
        raise KraftViolationError(f"no codeword has the stated max length {max_len}")
    header = FileHeader(
        n=n, sigma_present=sigma, max_len=max_len,
        count_per_len=counts, symbols_in_canonical_order=symbols,
    )
    return header, end


def encode_stream(code: CanonicalCode, symbols: Sequence[int]) -> bytes:
    header = pack_header(header_of(code, len(symbols)))
    if not symbols:
        return header
    table = Encoder(code).table
    writer = BitWriter()
    for c in symbols:
        entry = table.get(c)
        if entry is None:
            raise UnknownSymbolError(f"symbol {c} is not in the code")
        writer.write_bits(*entry)
    logger.debug("encoded %d symbols into %d payload bits", len(symbols), writer.bit_pos)
    return header + writer.flush()


def encode_symbols(symbols: Sequence[int]) -> bytes:
    """Build the code from the symbols' own frequencies and encode them."""
    symbols = list(symbols)
    return encode_stream(build_code(FrequencyTable.from_symbols(symbols)), symbols)


def read_code(data: bytes) -> Tuple[FileHeader, Optional[CanonicalCode], int]:
    header, offset = parse_header(data)
    if header.sigma_present == 0:
        if header.n:
            raise CorruptStreamError(f"header announces {header.n} symbols but no code")
        return header, None, offset
    code = code_from_header(header.count_per_len, header.symbols_in_canonical_order)
    return header, code, offset


def decode_stream(
    data: bytes,
    strategy: DecoderStrategy = DecoderStrategy.PART,
    stats: Optional[DecodeStats] = None,
) -> List[int]:
    header, code, offset = read_code(data)
    if code is None:
        return []
    decoder = Decoder(code, strategy)
    if stats is None:
        try:
            return decoder.decode_all(data[offset:], header.n)
        except EndOfStreamError as exc:
            raise TruncatedPayloadError(str(exc)) from exc
    cursor = BitCursor(data[offset:])
    out = []
    try:
        for _ in range(header.n):
            per_symbol = ProbeStats()
            out.append(decoder.decode_symbol(cursor, per_symbol))
            stats.record(per_symbol)
    except EndOfStreamError as exc:
        raise TruncatedPayloadError(f"payload ends after {len(out)} of {header.n} symbols") from exc
    return out


def inspect_stream(data: bytes) -> InspectResponse:
    header, code, offset = read_code(data)
    if code is None:
        return InspectResponse(header=header, payload_bytes=len(data) - offset)
    return InspectResponse(
        header=header,
        payload_bytes=len(data) - offset,
        space=PartitionedCodebook.build(code).space_report(),
        validation=validate(code, header.n) if header.n else None,
    )
