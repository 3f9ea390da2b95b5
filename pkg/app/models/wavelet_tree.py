"""
Level-wise binary wavelet tree (wavelet-matrix layout) over a sequence with
values in 1..alphabet_size. Each of the ceil(lg alphabet_size) levels is one
RsBitVector as long as the sequence; every operation visits each level once.
"""
from collections import Counter
from typing import Dict, List, Optional, Sequence

from app.exceptions import ContractViolationError
from app.models.bitvector import RsBitVector
from app.models.probes import ProbeStats
from app.utils import ceil_log2


class WaveletTree:

    def __init__(self, values: Sequence[int], alphabet_size: Optional[int] = None):
        alphabet_size = alphabet_size if alphabet_size is not None else max(values, default=1)
        if alphabet_size < 1:
            raise ContractViolationError("alphabet size must be positive")
        for v in values:
            if not 1 <= v <= alphabet_size:
                raise ContractViolationError(f"value {v} outside 1..{alphabet_size}")
        self._length = len(values)
        self._alphabet_size = alphabet_size
        self._depth = ceil_log2(alphabet_size)
        self._counts: Counter = Counter(values)

        levels: List[RsBitVector] = []
        current = [v - 1 for v in values]
        for level in range(self._depth):
            shift = self._depth - 1 - level
            levels.append(RsBitVector((v >> shift) & 1 for v in current))
            current = [v for v in current if not (v >> shift) & 1] + [v for v in current if (v >> shift) & 1]
        self._levels = levels
        self._zeros = [bv.zeros for bv in levels]
        self._bottom_start: Dict[int, int] = {
            value: self._descend(value - 1, 0) for value in range(1, alphabet_size + 1)
        }

    @property
    def depth(self) -> int:
        return self._depth

    @property
    def alphabet_size(self) -> int:
        return self._alphabet_size

    def __len__(self) -> int:
        return self._length

    def count(self, value: int) -> int:
        return self._counts.get(value, 0)

    def _bit(self, c: int, level: int) -> int:
        return (c >> (self._depth - 1 - level)) & 1

    def _step(self, level: int, bit: int, pos: int) -> int:
        bv = self._levels[level]
        if bit:
            return self._zeros[level] + bv.rank1(pos)
        return bv.rank0(pos)

    def _descend(self, c: int, pos: int) -> int:
        for level in range(self._depth):
            pos = self._step(level, self._bit(c, level), pos)
        return pos

    def _check_value(self, value: int) -> None:
        if not 1 <= value <= self._alphabet_size:
            raise ContractViolationError(f"value {value} outside 1..{self._alphabet_size}")

    def access(self, i: int, stats: Optional[ProbeStats] = None) -> int:
        """L[i] for 1-based i."""
        if not 1 <= i <= self._length:
            raise ContractViolationError(f"index {i} outside 1..{self._length}")
        pos, value = i - 1, 0
        for level in range(self._depth):
            bit = self._levels[level].get(pos)
            value = (value << 1) | bit
            pos = self._step(level, bit, pos)
        if stats is not None:
            stats.wt_level_probes += self._depth
        return value + 1

    def rank(self, value: int, i: int, stats: Optional[ProbeStats] = None) -> int:
        """Occurrences of value in L[1..i]."""
        self._check_value(value)
        if not 0 <= i <= self._length:
            raise ContractViolationError(f"rank position {i} outside 0..{self._length}")
        c, start, end = value - 1, 0, i
        for level in range(self._depth):
            bit = self._bit(c, level)
            start = self._step(level, bit, start)
            end = self._step(level, bit, end)
        if stats is not None:
            stats.wt_level_probes += self._depth
        return end - start

    def select(self, value: int, r: int, stats: Optional[ProbeStats] = None) -> int:
        """1-based position of the r-th occurrence of value."""
        self._check_value(value)
        if not 1 <= r <= self.count(value):
            raise ContractViolationError(f"occurrence {r} of {value} outside 1..{self.count(value)}")
        c = value - 1
        pos = self._bottom_start[value] + r - 1
        for level in reversed(range(self._depth)):
            bv = self._levels[level]
            if self._bit(c, level):
                pos = bv.select1(pos - self._zeros[level] + 1) - 1
            else:
                pos = bv.select0(pos + 1) - 1
        if stats is not None:
            stats.wt_level_probes += self._depth
        return pos + 1

    @property
    def payload_bits(self) -> int:
        return sum(bv.payload_bits for bv in self._levels)

    @property
    def directory_bits(self) -> int:
        return sum(bv.directory_bits for bv in self._levels)

    def total_bits(self) -> int:
        return self.payload_bits + self.directory_bits
