"""
Rank/select bit vector.

Two-level rank directory: an absolute 64-bit counter per 2^16-bit superblock
and a 16-bit counter per 512-bit block, relative to its superblock. Vectors of
at most one block keep no directory and count in place. select is a binary
search over block ranks followed by one counting pass inside the block.
"""
from typing import Iterable

import numpy as np
from bitarray import bitarray
from bitarray.util import count_n

from app.exceptions import ContractViolationError

BLOCK_BITS = 512
SUPERBLOCK_BITS = 1 << 16
BLOCKS_PER_SUPERBLOCK = SUPERBLOCK_BITS // BLOCK_BITS


class RsBitVector:
    __slots__ = ("_bits", "_superblocks", "_blocks", "_ones")

    def __init__(self, bits: Iterable[int] | bitarray):
        if isinstance(bits, bitarray):
            self._bits = bitarray(bits, endian="big")
        else:
            self._bits = bitarray([1 if b else 0 for b in bits], endian="big")
        self._build_directory()

    def _build_directory(self) -> None:
        m = len(self._bits)
        if m <= BLOCK_BITS:
            self._superblocks = np.zeros(0, dtype=np.uint64)
            self._blocks = np.zeros(0, dtype=np.uint16)
            self._ones = self._bits.count(1)
            return
        n_blocks = (m + BLOCK_BITS - 1) // BLOCK_BITS
        n_super = (m + SUPERBLOCK_BITS - 1) // SUPERBLOCK_BITS
        superblocks = np.zeros(n_super, dtype=np.uint64)
        blocks = np.zeros(n_blocks, dtype=np.uint16)
        total = 0
        for blk in range(n_blocks):
            sb = blk // BLOCKS_PER_SUPERBLOCK
            if blk % BLOCKS_PER_SUPERBLOCK == 0:
                superblocks[sb] = total
            blocks[blk] = total - int(superblocks[sb])
            start = blk * BLOCK_BITS
            total += self._bits.count(1, start, min(start + BLOCK_BITS, m))
        self._superblocks = superblocks
        self._blocks = blocks
        self._ones = total

    def __len__(self) -> int:
        return len(self._bits)

    def get(self, i: int) -> int:
        """Bit at 0-based position i."""
        return self._bits[i]

    @property
    def ones(self) -> int:
        return self._ones

    @property
    def zeros(self) -> int:
        return len(self._bits) - self._ones

    @property
    def payload_bits(self) -> int:
        return len(self._bits)

    @property
    def directory_bits(self) -> int:
        return self._superblocks.size * 64 + self._blocks.size * 16

    def _block_rank1(self, blk: int) -> int:
        """Ones strictly before block blk."""
        return int(self._superblocks[blk // BLOCKS_PER_SUPERBLOCK]) + int(self._blocks[blk])

    def rank1(self, i: int) -> int:
        """Number of ones in bits[1..i] (1-based), i.e. the first i bits."""
        if i < 0 or i > len(self._bits):
            raise ContractViolationError(f"rank position {i} outside 0..{len(self._bits)}")
        if self._blocks.size == 0:
            return self._bits.count(1, 0, i)
        blk = i // BLOCK_BITS
        if blk >= self._blocks.size:
            return self._ones
        start = blk * BLOCK_BITS
        return self._block_rank1(blk) + self._bits.count(1, start, i)

    def rank0(self, i: int) -> int:
        return i - self.rank1(i)

    def select1(self, j: int) -> int:
        """1-based position of the j-th one; select1(0) = 0."""
        return self._select(1, j)

    def select0(self, j: int) -> int:
        return self._select(0, j)

    def _select(self, bit: int, j: int) -> int:
        total = self._ones if bit else self.zeros
        if j < 0 or j > total:
            raise ContractViolationError(f"select rank {j} outside 0..{total}")
        if j == 0:
            return 0
        if self._blocks.size == 0:
            return count_n(self._bits, j, bit)
        lo, hi = 0, self._blocks.size - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self._block_count(bit, mid) < j:
                lo = mid
            else:
                hi = mid - 1
        start = lo * BLOCK_BITS
        block = self._bits[start:min(start + BLOCK_BITS, len(self._bits))]
        # count_n gives the smallest i with block[:i] holding j - before matching bits
        return start + count_n(block, j - self._block_count(bit, lo), bit)

    def _block_count(self, bit: int, blk: int) -> int:
        ones = self._block_rank1(blk)
        return ones if bit else blk * BLOCK_BITS - ones
