"""
Static predecessor set over bounded-width integer keys.

Keys live in a B-way tree (B = NODE_FANOUT). Leaves hold up to B sorted keys;
an internal node holds the minimum key of each child plus P_v, the prefix sums
of its children's subtree sizes, which give rank and select in one top-down
pass. Inside a node, "how many entries are <= x" is answered by one packed
comparison: all entries sit in a single integer, one (width + 1)-bit field
each, and a broadcast copy of x is subtracted so that each field's top bit
records entry <= x. Nodes whose entries would not fit 128 bits fall back to a
binary search.
"""
from bisect import bisect_right
from typing import Iterator, List, Optional, Sequence, Tuple

from app.exceptions import ContractViolationError
from app.models.probes import ProbeStats

NODE_FANOUT = 16
PACKED_LIMIT_BITS = 128
MAX_KEY_WIDTH = 64


class PackedRow:
    """A sorted row of small integers answering count(entries <= x)."""
    __slots__ = ("values", "_width", "_packed", "_ones", "_sentinels")

    def __init__(self, values: Sequence[int], width: int):
        self.values = tuple(values)
        self._width = width
        if width and len(self.values) * width <= PACKED_LIMIT_BITS:
            field = width + 1
            packed = ones = 0
            for i, value in enumerate(self.values):
                packed |= value << (i * field)
                ones |= 1 << (i * field)
            self._packed = packed
            self._ones = ones
            self._sentinels = ones << width
        else:
            self._packed = None
            self._ones = self._sentinels = 0

    def count_le(self, x: int) -> int:
        if self._packed is None:
            return bisect_right(self.values, x)
        x = min(x, (1 << self._width) - 1)
        # field i becomes 2^w + x - v_i; its top bit is set iff v_i <= x
        diff = ((x | (1 << self._width)) * self._ones) - self._packed
        return (diff & self._sentinels).bit_count()


class _Node:
    __slots__ = ("row", "children", "prefix", "prefix_row", "size")

    def __init__(self, row: PackedRow, children: Optional[List["_Node"]] = None,
                 prefix: Tuple[int, ...] = (), prefix_row: Optional[PackedRow] = None):
        self.row = row
        self.children = children
        self.prefix = prefix
        self.prefix_row = prefix_row
        self.size = len(row.values) if children is None else sum(c.size for c in children)

    @property
    def is_leaf(self) -> bool:
        return self.children is None


class PredSet:

    def __init__(self, keys: Sequence[int], key_width: int):
        if not 0 <= key_width <= MAX_KEY_WIDTH:
            raise ContractViolationError(f"key width {key_width} outside 0..{MAX_KEY_WIDTH}")
        keys = tuple(keys)
        for i, key in enumerate(keys):
            if key < 0 or key >> key_width:
                raise ContractViolationError(f"key {key} does not fit in {key_width} bits")
            if i and key <= keys[i - 1]:
                raise ContractViolationError("keys must be strictly increasing")
        self._keys = keys
        self._key_width = key_width
        self._root = self._build(keys, key_width)
        self._height = self._measure_height()

    @staticmethod
    def _build(keys: Tuple[int, ...], width: int) -> Optional[_Node]:
        if not keys:
            return None
        level = [
            _Node(PackedRow(keys[i:i + NODE_FANOUT], width))
            for i in range(0, len(keys), NODE_FANOUT)
        ]
        while len(level) > 1:
            parents = []
            for i in range(0, len(level), NODE_FANOUT):
                children = level[i:i + NODE_FANOUT]
                prefix, running = [], 0
                for child in children:
                    prefix.append(running)
                    running += child.size
                prefix_width = running.bit_length()
                parents.append(_Node(
                    PackedRow([child.row.values[0] for child in children], width),
                    children=children,
                    prefix=tuple(prefix),
                    prefix_row=PackedRow(prefix, prefix_width),
                ))
            level = parents
        return level[0]

    def _measure_height(self) -> int:
        height, node = 0, self._root
        while node is not None:
            height += 1
            node = None if node.is_leaf else node.children[0]
        return height

    def __len__(self) -> int:
        return len(self._keys)

    @property
    def key_width(self) -> int:
        return self._key_width

    @property
    def height(self) -> int:
        return self._height

    @property
    def keys(self) -> Tuple[int, ...]:
        return self._keys

    def _descend(self, x: int, stats: Optional[ProbeStats]) -> Tuple[int, Optional[int]]:
        """(rank(x), pred(x) or None) in one root-to-leaf pass."""
        node, rank = self._root, 0
        while node is not None:
            if stats is not None:
                stats.pred_node_probes += 1
            c = node.row.count_le(x)
            if c == 0:
                return rank, None
            if node.is_leaf:
                return rank + c, node.row.values[c - 1]
            rank += node.prefix[c - 1]
            node = node.children[c - 1]
        return 0, None

    def pred(self, x: int, stats: Optional[ProbeStats] = None) -> Optional[Tuple[int, int]]:
        """(largest key <= x, its 1-based index), or None."""
        rank, key = self._descend(x, stats)
        return None if key is None else (key, rank)

    def rank(self, x: int, stats: Optional[ProbeStats] = None) -> int:
        return self._descend(x, stats)[0]

    def select(self, i: int, stats: Optional[ProbeStats] = None) -> int:
        """The i-th smallest key, 1-based."""
        if not 1 <= i <= len(self._keys):
            raise ContractViolationError(f"select index {i} outside 1..{len(self._keys)}")
        node = self._root
        while True:
            if stats is not None:
                stats.pred_node_probes += 1
            if node.is_leaf:
                return node.row.values[i - 1]
            # children whose preceding prefix sum is < i, i.e. <= i - 1
            j = node.prefix_row.count_le(i - 1)
            i -= node.prefix[j - 1]
            node = node.children[j - 1]

    def internal_nodes(self) -> Iterator[_Node]:
        stack = [self._root] if self._root is not None else []
        while stack:
            node = stack.pop()
            if not node.is_leaf:
                yield node
                stack.extend(node.children)

    def overhead_bits(self) -> int:
        """Separator keys and prefix sums kept by internal nodes."""
        total = 0
        for node in self.internal_nodes():
            total += len(node.row.values) * self._key_width
            total += len(node.prefix) * max(1, node.size.bit_length())
        return total
