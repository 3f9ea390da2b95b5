"""
Partitioned code dictionary.

Only the leftmost codeword of every occupied depth (First[l]) is stored. Each
one is classified by its tail, the bits after its leading run of ones:
long-tailed when the tail has at least W' bits, short-tailed otherwise. Long
ones are grouped by length into classes of W = ceil(lg sigma) depths, short
ones into classes of W' = 2 ceil(lg lg sigma) depths. Within a class every
stored codeword starts with `shared_ones` ones, so a key only keeps the bits
after that prefix, left aligned, followed by the depth relative to the class.

A lookup reads the run of ones u at the front of the peeked word. The answer's
depth lies in (u, u + W], and in (u, u + W'] when its First is short-tailed,
so at most two long and two short classes can hold it. Each consulted class
answers a predecessor query on its own keys; the largest padded result wins.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from app.enums import TailKind
from app.exceptions import CodeTooDeepError, ContractViolationError, CorruptStreamError
from app.models.bitvector import RsBitVector
from app.models.code import CanonicalCode
from app.models.pred_set import MAX_KEY_WIDTH, PredSet
from app.models.probes import ProbeStats
from app.schemas.report import SpaceReport
from app.utils import ceil_log2, long_class_width, low_mask, short_class_width

logger = logging.getLogger(__name__)


def unary_prefix_len(x: int, width: int) -> int:
    """Length of the leading run of ones of x read as a width-bit word."""
    negated = ~x & low_mask(width)
    if negated == 0:
        return width
    return width - negated.bit_length()


def ones_run(value: int, length: int) -> int:
    return unary_prefix_len(value, length)


@dataclass(frozen=True)
class PackedKey:
    tail: int
    local_depth: int

    def as_int(self, depth_bits: int) -> int:
        return (self.tail << depth_bits) | self.local_depth


class ClassTree:
    """The First codewords of one length class of one tail kind."""

    def __init__(self, kind: TailKind, k: int, lo: int, hi: int, shared_ones: int,
                 entries: List[Tuple[int, int]]):
        self.kind = kind
        self.k = k
        self.lo = lo
        self.hi = hi
        self.shared_ones = shared_ones
        self.tail_width = hi - shared_ones
        self.depth_bits = (hi - lo).bit_length()
        if self.key_width > MAX_KEY_WIDTH:
            raise CodeTooDeepError(
                f"{kind.value} class {k} needs {self.key_width}-bit keys, limit is {MAX_KEY_WIDTH}"
            )
        keys = []
        for value, length in entries:
            if not lo < length <= hi:
                raise ContractViolationError(f"depth {length} outside class range ({lo}, {hi}]")
            if ones_run(value, length) < shared_ones:
                raise ContractViolationError(
                    f"codeword of depth {length} lacks the {shared_ones} leading ones of its class"
                )
            keys.append(self.pack(value, length).as_int(self.depth_bits))
        self.tree = PredSet(keys, self.key_width)
        self.local_depths = PredSet([length - lo for _, length in entries], self.depth_bits)

    @property
    def key_width(self) -> int:
        return self.tail_width + self.depth_bits

    def __len__(self) -> int:
        return len(self.tree)

    def pack(self, value: int, length: int) -> PackedKey:
        rest_len = length - self.shared_ones
        rest = value & low_mask(rest_len)
        return PackedKey(rest << (self.tail_width - rest_len), length - self.lo)

    def unpack(self, key: int) -> Tuple[int, int]:
        """(codeword value, length) of a stored key."""
        length = self.lo + (key & low_mask(self.depth_bits))
        rest_len = length - self.shared_ones
        rest = (key >> self.depth_bits) >> (self.tail_width - rest_len)
        return (low_mask(self.shared_ones) << rest_len) | rest, length

    def query(self, x: int, max_len: int, stats: Optional[ProbeStats] = None) -> Optional[Tuple[int, int]]:
        """Stored (codeword, length) with the largest padded value <= x, or None."""
        if stats is not None:
            stats.class_tree_consults += 1
        s = self.shared_ones
        if s and (x >> (max_len - s)) != low_mask(s):
            # x leaves the shared ones prefix early: every key exceeds it
            return None
        x_tail = (x >> (max_len - self.hi)) & low_mask(self.tail_width)
        hit = self.tree.pred((x_tail << self.depth_bits) | low_mask(self.depth_bits), stats)
        return None if hit is None else self.unpack(hit[0])

    def first_of_local_depth(self, local_depth: int, stats: Optional[ProbeStats] = None) -> int:
        i = self.local_depths.rank(local_depth, stats)
        return self.unpack(self.tree.select(i, stats))[0]


class PartitionedCodebook:

    def __init__(self, code: CanonicalCode):
        if code.sigma < 1:
            raise ContractViolationError("cannot build a codebook for an empty code")
        max_len = code.max_len
        if max_len + ceil_log2(max_len) > MAX_KEY_WIDTH:
            raise CodeTooDeepError(f"max codeword length {max_len} too deep for {MAX_KEY_WIDTH}-bit keys")
        self.sigma = code.sigma
        self.max_len = max_len
        self.W = long_class_width(code.sigma)
        self.Wp = short_class_width(code.sigma)
        self.deepest_len = max_len
        self._deepest_first = code.first_of(max_len)

        groups: Dict[Tuple[TailKind, int], List[Tuple[int, int]]] = {}
        kinds = []
        for depth in code.occupied_depths():
            value = code.first_of(depth)
            tail_len = depth - ones_run(value, depth)
            kind = TailKind.LONG if tail_len >= self.Wp else TailKind.SHORT
            kinds.append(1 if kind is TailKind.LONG else 0)
            k = self.class_index(kind, depth)
            groups.setdefault((kind, k), []).append((value, depth))

        self._trees: Dict[TailKind, Dict[int, ClassTree]] = {TailKind.LONG: {}, TailKind.SHORT: {}}
        for (kind, k), entries in sorted(groups.items(), key=lambda item: (item[0][0].value, item[0][1])):
            width = self.class_width(kind)
            lo = (k - 1) * width
            hi = min(k * width, max_len)
            # tails of long codewords have at most W bits,
            # short ones at most W' - 1, hence at least lo + 1 - budget leading ones
            budget = self.W if kind is TailKind.LONG else self.Wp - 1
            shared = max(0, lo - budget + 1)
            self._trees[kind][k] = ClassTree(kind, k, lo, hi, shared, entries)

        self.D = RsBitVector(1 if count else 0 for count in code.count_per_len)
        self.tail_kind = RsBitVector(kinds)
        logger.debug(
            "codebook built: sigma=%d lmax=%d W=%d W'=%d long=%d short=%d",
            self.sigma, max_len, self.W, self.Wp,
            len(self._trees[TailKind.LONG]), len(self._trees[TailKind.SHORT]),
        )

    @classmethod
    def build(cls, code: CanonicalCode) -> "PartitionedCodebook":
        return cls(code)

    def class_width(self, kind: TailKind) -> int:
        return self.W if kind is TailKind.LONG else self.Wp

    def class_index(self, kind: TailKind, depth: int) -> int:
        width = self.class_width(kind)
        return (depth + width - 1) // width

    @property
    def long_trees(self) -> Tuple[ClassTree, ...]:
        return tuple(self._trees[TailKind.LONG].values())

    @property
    def short_trees(self) -> Tuple[ClassTree, ...]:
        return tuple(self._trees[TailKind.SHORT].values())

    def trees(self) -> Tuple[ClassTree, ...]:
        return self.long_trees + self.short_trees

    def candidate_trees(self, u: int) -> List[ClassTree]:
        """Class trees that can hold the depth of a codeword starting with exactly u ones."""
        found = []
        for kind in (TailKind.LONG, TailKind.SHORT):
            width = self.class_width(kind)
            top = min(u + width, self.max_len)
            for k in range(u // width + 1, (top + width - 1) // width + 1):
                tree = self._trees[kind].get(k)
                if tree is not None:
                    found.append(tree)
        return found

    def lookup_depth(self, x: int, stats: Optional[ProbeStats] = None) -> Tuple[int, int]:
        """(length l of the codeword prefixing x, First[l]) for a max_len-bit peek x."""
        u = unary_prefix_len(x, self.max_len)
        if u == self.max_len:
            return self.deepest_len, self._deepest_first
        best: Optional[Tuple[int, int]] = None
        best_padded = -1
        for tree in self.candidate_trees(u):
            hit = tree.query(x, self.max_len, stats)
            if hit is None:
                continue
            padded = hit[0] << (self.max_len - hit[1])
            if padded > best_padded:
                best, best_padded = hit, padded
        if best is None:
            raise CorruptStreamError(f"no codeword prefixes {x:0{self.max_len}b}")
        return best[1], best[0]

    def first_of_depth(self, depth: int, stats: Optional[ProbeStats] = None) -> Optional[int]:
        """First[depth] through the occupied-depth vector, or None for an empty depth."""
        if not 1 <= depth <= self.max_len:
            raise ContractViolationError(f"depth {depth} outside 1..{self.max_len}")
        if not self.D.get(depth - 1):
            return None
        kind = TailKind.LONG if self.tail_kind.get(self.D.rank1(depth) - 1) else TailKind.SHORT
        tree = self._trees[kind][self.class_index(kind, depth)]
        return tree.first_of_local_depth(depth - tree.lo, stats)

    def space_report(self) -> SpaceReport:
        trees = self.trees()
        pointer_bits = self.W
        stored_key_bits = sum(len(t) * t.key_width for t in trees)
        local_depth_bits = sum(len(t.local_depths) * t.depth_bits for t in trees)
        tree_overhead_bits = sum(
            pointer_bits + len(t).bit_length() + t.tree.overhead_bits() + t.local_depths.overhead_bits()
            for t in trees
        )
        occupancy_bits = self.D.payload_bits + self.D.directory_bits
        tail_kind_bits = self.tail_kind.payload_bits + self.tail_kind.directory_bits
        occupied = self.D.ones
        plain_first_bits = self.max_len * self.max_len
        pair_key_bits = occupied * (self.max_len + max(1, ceil_log2(self.max_len)))
        partitioned = stored_key_bits + local_depth_bits + tree_overhead_bits + occupancy_bits + tail_kind_bits
        return SpaceReport(
            sigma=self.sigma,
            max_len=self.max_len,
            long_width=self.W,
            short_width=self.Wp,
            long_trees=len(self.long_trees),
            short_trees=len(self.short_trees),
            stored_keys=sum(len(t) for t in trees),
            stored_key_bits=stored_key_bits,
            local_depth_bits=local_depth_bits,
            tree_overhead_bits=tree_overhead_bits,
            occupancy_bits=occupancy_bits,
            tail_kind_bits=tail_kind_bits,
            partitioned_bits=partitioned,
            plain_first_bits=plain_first_bits,
            pair_key_bits=pair_key_bits,
            plain_bits=plain_first_bits + pair_key_bits,
        )
