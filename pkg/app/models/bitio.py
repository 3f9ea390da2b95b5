"""
MSB-first bit I/O. The writer packs bits most-significant-first and zero pads
the last byte; the cursor reads them back and can peek past the logical end,
where every bit reads as zero.
"""
from app.exceptions import ContractViolationError, EndOfStreamError

MAX_WIDTH = 64


def _check_width(width: int) -> None:
    if width < 0 or width > MAX_WIDTH:
        raise ContractViolationError(f"bit width must be in 0..{MAX_WIDTH}, got {width}")


class BitWriter:
    __slots__ = ("_buf", "_acc", "_acc_bits", "_bit_pos")

    def __init__(self) -> None:
        self._buf = bytearray()
        self._acc = 0
        self._acc_bits = 0
        self._bit_pos = 0

    @property
    def bit_pos(self) -> int:
        return self._bit_pos

    def write_bits(self, value: int, width: int) -> "BitWriter":
        _check_width(width)
        if value < 0 or value >> width:
            raise ContractViolationError(f"value {value} does not fit in {width} bits")
        if width == 0:
            return self
        self._acc = (self._acc << width) | value
        self._acc_bits += width
        self._bit_pos += width
        while self._acc_bits >= 8:
            self._acc_bits -= 8
            self._buf.append((self._acc >> self._acc_bits) & 0xFF)
        self._acc &= (1 << self._acc_bits) - 1
        return self

    def flush(self) -> bytes:
        """Payload so far, last byte zero padded. The writer stays usable."""
        out = bytearray(self._buf)
        if self._acc_bits:
            out.append((self._acc << (8 - self._acc_bits)) & 0xFF)
        return bytes(out)


class BitCursor:
    __slots__ = ("_source", "_bit_offset", "_logical_len")

    def __init__(self, source: bytes, logical_len: int | None = None, bit_offset: int = 0):
        self._source = bytes(source)
        self._logical_len = len(self._source) * 8 if logical_len is None else logical_len
        if not 0 <= self._logical_len <= len(self._source) * 8:
            raise ContractViolationError("logical length exceeds the byte source")
        if not 0 <= bit_offset <= self._logical_len:
            raise ContractViolationError("bit offset outside the payload")
        self._bit_offset = bit_offset

    @property
    def bit_offset(self) -> int:
        return self._bit_offset

    @property
    def logical_len(self) -> int:
        return self._logical_len

    @property
    def remaining(self) -> int:
        return self._logical_len - self._bit_offset

    def fork(self) -> "BitCursor":
        return BitCursor(self._source, self._logical_len, self._bit_offset)

    def peek_bits(self, width: int) -> int:
        _check_width(width)
        if width == 0:
            return 0
        offset = self._bit_offset
        start = offset >> 3
        skip = offset & 7
        nbytes = (skip + width + 7) >> 3
        chunk = self._source[start:start + nbytes]
        value = int.from_bytes(chunk, "big") << (8 * (nbytes - len(chunk)))
        value = (value >> (nbytes * 8 - skip - width)) & ((1 << width) - 1)
        overflow = offset + width - self._logical_len
        if overflow > 0:
            # phantom zeros past the logical end
            value = (value >> overflow) << overflow
        return value

    def read_bits(self, width: int) -> int:
        _check_width(width)
        if self._bit_offset + width > self._logical_len:
            raise EndOfStreamError(
                f"read of {width} bits at offset {self._bit_offset} passes the end ({self._logical_len} bits)"
            )
        value = self.peek_bits(width)
        self._bit_offset += width
        return value
