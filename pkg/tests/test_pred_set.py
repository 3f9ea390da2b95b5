import bisect
import math

import pytest

from app.exceptions import ContractViolationError
from app.models.pred_set import NODE_FANOUT, PackedRow, PredSet
from app.models.probes import ProbeStats


def test_pred_small():
    ps = PredSet([3, 7, 12], key_width=4)
    assert ps.pred(8) == (7, 2)
    assert ps.pred(2) is None
    assert ps.pred(15) == (12, 3)
    assert ps.pred(3) == (3, 1)


def test_rank_select_small():
    ps = PredSet([3, 7, 12], key_width=4)
    assert ps.rank(7) == 2
    assert ps.select(3) == 12
    assert ps.rank(0) == 0


def test_build_rejects_bad_keys():
    with pytest.raises(ContractViolationError):
        PredSet([5, 5], key_width=4)
    with pytest.raises(ContractViolationError):
        PredSet([16], key_width=4)
    with pytest.raises(ContractViolationError):
        PredSet([1], key_width=65)


def test_empty_set():
    ps = PredSet([], key_width=8)
    assert ps.pred(200) is None
    assert ps.rank(200) == 0
    assert ps.height == 0


def test_packed_row_matches_bisect(rng):
    for width in (1, 3, 7, 8, 16, 20, 24, 40, 48):
        for _ in range(50):
            count = rng.randint(1, 16)
            values = sorted(rng.sample(range(2 ** width), min(count, 2 ** width)))
            row = PackedRow(values, width)
            for _ in range(20):
                x = rng.randint(0, 2 ** width - 1)
                assert row.count_le(x) == bisect.bisect_right(values, x)


@pytest.mark.parametrize("width", [3, 8, 16, 24, 40, 48, 64])
@pytest.mark.parametrize("size", [1, NODE_FANOUT, NODE_FANOUT + 1, 300, 5000])
def test_pred_rank_select_against_sorted_list(rng, width, size):
    size = min(size, 2 ** width)
    keys = sorted(rng.sample(range(2 ** width), size))
    ps = PredSet(keys, width)
    for _ in range(500):
        x = rng.randint(0, 2 ** width - 1)
        i = bisect.bisect_right(keys, x)
        assert ps.rank(x) == i
        assert ps.pred(x) == (None if i == 0 else (keys[i - 1], i))
    for _ in range(200):
        i = rng.randint(1, size)
        assert ps.select(i) == keys[i - 1]
        assert ps.rank(ps.select(i)) == i
        assert ps.select(ps.rank(keys[i - 1])) == keys[i - 1]


def test_height_and_probe_bound(rng):
    size = 4000
    keys = sorted(rng.sample(range(2 ** 32), size))
    ps = PredSet(keys, 32)
    assert ps.height == math.ceil(math.log(size, NODE_FANOUT))
    for _ in range(200):
        stats = ProbeStats()
        ps.pred(rng.randint(0, 2 ** 32 - 1), stats)
        assert stats.pred_node_probes <= ps.height


def test_full_width_keys():
    keys = [0, 1, 2 ** 63, 2 ** 64 - 1]
    ps = PredSet(keys, 64)
    assert ps.pred(2 ** 64 - 2) == (2 ** 63, 3)
    assert ps.pred(2 ** 64 - 1) == (2 ** 64 - 1, 4)


@pytest.mark.parametrize("size", [NODE_FANOUT + 1, 300, 5000])
def test_internal_prefix_sums_match_child_sizes(rng, size):
    keys = sorted(rng.sample(range(2 ** 24), size))
    ps = PredSet(keys, 24)
    nodes = list(ps.internal_nodes())
    assert nodes
    for node in nodes:
        sizes = [child.size for child in node.children]
        assert list(node.prefix) == [sum(sizes[:i]) for i in range(len(sizes))]
        assert [node.prefix_row.count_le(p) for p in node.prefix] == list(range(1, len(sizes) + 1))
        assert list(node.row.values) == [child.row.values[0] for child in node.children]
    assert max(node.size for node in nodes) == size


def test_probe_count_stays_within_height_plus_one(rng):
    for size in (1, 2, NODE_FANOUT, NODE_FANOUT + 1, 257, 4097):
        keys = sorted(rng.sample(range(2 ** 20), size))
        ps = PredSet(keys, 20)
        bound = (math.ceil(math.log2(size)) + 3) // 4 + 1
        for _ in range(100):
            stats = ProbeStats()
            ps.pred(rng.randint(0, 2 ** 20 - 1), stats)
            assert stats.pred_node_probes <= bound
