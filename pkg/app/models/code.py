from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Tuple


@dataclass(frozen=True)
class FrequencyTable:
    """Present symbols with their occurrence counts, sorted by symbol id."""
    counts: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        previous = None
        for symbol, count in self.counts:
            if count <= 0:
                raise ValueError(f"symbol {symbol} has non-positive count {count}")
            if previous is not None and symbol <= previous:
                raise ValueError("frequency table must be sorted by symbol id without duplicates")
            previous = symbol

    @classmethod
    def from_counts(cls, counts: Dict[int, int]) -> "FrequencyTable":
        # zero-frequency symbols never enter the code
        return cls(tuple(sorted((s, c) for s, c in counts.items() if c > 0)))

    @classmethod
    def from_symbols(cls, symbols: Iterable[int]) -> "FrequencyTable":
        return cls.from_counts(Counter(symbols))

    @property
    def n(self) -> int:
        return sum(c for _, c in self.counts)

    @property
    def sigma(self) -> int:
        return len(self.counts)

    @property
    def symbols(self) -> Tuple[int, ...]:
        return tuple(s for s, _ in self.counts)


@dataclass(frozen=True)
class CodeLengths:
    """L[1..sigma]: lengths[i] belongs to symbols[i]; symbols ascending."""
    symbols: Tuple[int, ...]
    lengths: Tuple[int, ...]

    def __post_init__(self):
        if len(self.symbols) != len(self.lengths):
            raise ValueError("symbols and lengths differ in size")

    @property
    def sigma(self) -> int:
        return len(self.symbols)

    @property
    def max_len(self) -> int:
        return max(self.lengths, default=0)

    def as_dict(self) -> Dict[int, int]:
        return dict(zip(self.symbols, self.lengths))


@dataclass(frozen=True)
class TailSplit:
    ones_run: int
    tail: str

    @property
    def tail_len(self) -> int:
        return len(self.tail)


@dataclass(frozen=True)
class CanonicalCode:
    sigma: int
    max_len: int
    count_per_len: Tuple[int, ...]
    symbols_in_canonical_order: Tuple[int, ...]
    # First[l] at index l - 1, None where depth l holds no leaf
    first: Tuple[Optional[int], ...]
    lengths: CodeLengths = field(repr=False)

    def occupied_depths(self) -> List[int]:
        return [depth for depth, count in enumerate(self.count_per_len, start=1) if count]

    def first_of(self, depth: int) -> Optional[int]:
        return self.first[depth - 1]

    def padded(self, value: int, length: int) -> int:
        return value << (self.max_len - length)

    def padded_first(self) -> List[Tuple[int, int, int]]:
        """(First[l] right-padded to max_len bits, l, First[l]) for occupied depths, ascending."""
        return [
            (self.padded(self.first[d - 1], d), d, self.first[d - 1])
            for d in self.occupied_depths()
        ]

    def codewords(self) -> Iterator[Tuple[int, int, int]]:
        """(symbol, codeword value, length) in canonical order."""
        position = 0
        for depth, count in enumerate(self.count_per_len, start=1):
            for offset in range(count):
                yield self.symbols_in_canonical_order[position], self.first[depth - 1] + offset, depth
                position += 1


def bit_string(value: int, length: int) -> str:
    return format(value, f"0{length}b") if length else ""
