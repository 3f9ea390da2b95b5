import logging
from typing import Iterable, List, Optional, Sequence, Tuple

from app.exceptions import (
    CodeTooDeepError,
    ContractViolationError,
    EmptyFrequencyTableError,
    KraftViolationError,
)
from app.models.code import CanonicalCode, CodeLengths, FrequencyTable, TailSplit, bit_string
from app.schemas.report import CheckResult, ValidationReport
from app.utils import ceil_log2, long_class_width, max_len_bound

logger = logging.getLogger(__name__)

MAX_PACKED_WIDTH = 64
CENSUS_CAP = 8


def compute_lengths(freqs: FrequencyTable) -> CodeLengths:
    """
    Huffman code lengths by the two-queue method. Leaves enter sorted by
    (count, symbol); at equal weight a leaf is merged before an internal node,
    and internal nodes leave their queue in creation order.
    """
    sigma = freqs.sigma
    if sigma == 0:
        raise EmptyFrequencyTableError("cannot build a code from an empty frequency table")
    symbols = freqs.symbols
    if sigma == 1:
        return CodeLengths(symbols, (1,))

    weight = [count for _, count in freqs.counts]
    parent = [0] * (2 * sigma - 1)
    leaves = sorted(range(sigma), key=lambda i: (weight[i], symbols[i]))
    internal: List[int] = []
    next_leaf = next_internal = 0

    def pop_min() -> int:
        nonlocal next_leaf, next_internal
        if next_leaf < sigma and (
            next_internal >= len(internal) or weight[leaves[next_leaf]] <= weight[internal[next_internal]]
        ):
            next_leaf += 1
            return leaves[next_leaf - 1]
        next_internal += 1
        return internal[next_internal - 1]

    for _ in range(sigma - 1):
        a, b = pop_min(), pop_min()
        node = len(weight)
        weight.append(weight[a] + weight[b])
        parent[a] = parent[b] = node
        internal.append(node)

    root = len(weight) - 1
    depth = [0] * len(weight)
    # parents are created after their children, so walk ids downwards
    for node in range(root - 1, -1, -1):
        depth[node] = depth[parent[node]] + 1
    lengths = CodeLengths(symbols, tuple(depth[:sigma]))
    check_width(lengths.max_len)
    logger.debug("huffman lengths: sigma=%d lmax=%d", sigma, lengths.max_len)
    return lengths


def check_width(max_len: int) -> None:
    if max_len and max_len + ceil_log2(max_len) > MAX_PACKED_WIDTH:
        raise CodeTooDeepError(
            f"max codeword length {max_len} plus its length field exceeds {MAX_PACKED_WIDTH} bits"
        )


def kraft_holds(lengths: Sequence[int]) -> bool:
    """Kraft equality in integer arithmetic; a lone symbol of length 1 is accepted."""
    if not lengths:
        return True
    if len(lengths) == 1:
        return lengths[0] == 1
    top = max(lengths)
    return sum(1 << (top - length) for length in lengths) == 1 << top


def canonicalize(lengths: CodeLengths) -> CanonicalCode:
    if lengths.sigma == 0:
        return CanonicalCode(0, 0, (), (), (), lengths)
    if min(lengths.lengths) < 1:
        raise ContractViolationError("codeword lengths must be positive")
    if not kraft_holds(lengths.lengths):
        raise KraftViolationError("code lengths do not describe a full binary code tree")
    check_width(lengths.max_len)

    max_len = lengths.max_len
    order = sorted(zip(lengths.lengths, lengths.symbols))
    count_per_len = [0] * max_len
    for length, _ in order:
        count_per_len[length - 1] += 1

    first: List[Optional[int]] = []
    code = 0
    for count in count_per_len:
        first.append(code if count else None)
        code = (code + count) << 1

    return CanonicalCode(
        sigma=lengths.sigma,
        max_len=max_len,
        count_per_len=tuple(count_per_len),
        symbols_in_canonical_order=tuple(symbol for _, symbol in order),
        first=tuple(first),
        lengths=lengths,
    )


def build_code(freqs: FrequencyTable) -> CanonicalCode:
    if freqs.sigma == 0:
        return canonicalize(CodeLengths((), ()))
    return canonicalize(compute_lengths(freqs))


def code_from_header(count_per_len: Sequence[int], symbols_in_canonical_order: Sequence[int]) -> CanonicalCode:
    """Rebuild the canonical code from its stored description."""
    lengths = {}
    position = 0
    for depth, count in enumerate(count_per_len, start=1):
        for symbol in symbols_in_canonical_order[position:position + count]:
            lengths[symbol] = depth
        position += count
    if position != len(symbols_in_canonical_order) or len(lengths) != position:
        raise KraftViolationError("per-length counts do not match the symbol list")
    symbols = tuple(sorted(lengths))
    return canonicalize(CodeLengths(symbols, tuple(lengths[s] for s in symbols)))


def tail_split(codeword: str) -> TailSplit:
    """Split a codeword into its leading run of ones and the rest."""
    if not codeword:
        raise ContractViolationError("tail_split needs a non-empty codeword")
    ones = len(codeword) - len(codeword.lstrip("1"))
    return TailSplit(ones_run=ones, tail=codeword[ones:])


def tail_census(codewords: Iterable[str], sigma: int) -> Tuple[dict, float]:
    """count(tail_len >= s) for s = 1..max(W, longest tail), and the largest count * 2^s / sigma."""
    tails = [tail_split(cw).tail_len for cw in codewords]
    top = max([long_class_width(sigma)] + tails)
    census = {s: sum(1 for t in tails if t >= s) for s in range(1, top + 1)}
    ratio = max((count * (1 << s) / sigma for s, count in census.items()), default=0.0) if sigma else 0.0
    return census, ratio


def validate_assignment(codewords: Sequence[Tuple[int, int, int]], n: int) -> ValidationReport:
    """
    Structural checks on (symbol, value, length) triples given in codeword
    order. Never raises for a bad code; failures are reported per check.
    """
    sigma = len(codewords)
    max_len = max((length for _, _, length in codewords), default=0)
    bits = [bit_string(value, length) for _, value, length in codewords]
    checks: List[CheckResult] = []

    if sigma == 1:
        checks.append(CheckResult(name="kraft", passed=codewords[0][2] == 1, detail="single-symbol code"))
    else:
        total = sum(1 << (max_len - length) for _, _, length in codewords)
        checks.append(CheckResult(
            name="kraft", passed=total == 1 << max_len,
            detail=f"sum of 2^(lmax-l) = {total}, expected {1 << max_len}",
        ))

    offender = next(
        (bits[i] for i in range(1, sigma)
         if codewords[i][1] << (max_len - codewords[i][2]) <= codewords[i - 1][1] << (max_len - codewords[i - 1][2])),
        None,
    )
    checks.append(CheckResult(name="strictly_increasing", passed=offender is None, codeword=offender))

    offender = next((bits[i] for i in range(1, sigma) if codewords[i][2] < codewords[i - 1][2]), None)
    checks.append(CheckResult(name="nondecreasing_lengths", passed=offender is None, codeword=offender))

    offender = next(
        (bits[i] for i in range(1, sigma)
         if codewords[i][2] == codewords[i - 1][2] and codewords[i][0] < codewords[i - 1][0]),
        None,
    )
    checks.append(CheckResult(name="symbol_order", passed=offender is None, codeword=offender))

    bound = None
    if sigma >= 2 and n >= 1:
        bound = max_len_bound(sigma, n)
        checks.append(CheckResult(
            name="max_len_bound", passed=max_len <= bound,
            detail=f"lmax={max_len}, min(sigma-1, floor(log_phi n))={bound}",
        ))

    limit = long_class_width(sigma)
    offender = None
    for cw in bits:
        split = tail_split(cw)
        if split.tail and (split.tail[0] != "0" or split.tail_len > limit):
            offender = cw
            break
    checks.append(CheckResult(name="tail_bound", passed=offender is None, detail=f"tail <= {limit} bits", codeword=offender))

    # the census runs over the stored dictionary: the leftmost codeword of each depth
    firsts = [bits[i] for i in range(sigma) if i == 0 or codewords[i][2] != codewords[i - 1][2]]
    census, ratio = tail_census(firsts, sigma) if sigma else ({}, 0.0)
    checks.append(CheckResult(
        name="tail_census",
        passed=all(count * (1 << s) <= CENSUS_CAP * sigma for s, count in census.items()),
        detail=f"max count*2^s/sigma = {ratio:.3f}",
    ))

    if sigma >= 2:
        deepest, shallowest = bits[-1], bits[0]
        passed = set(deepest) == {"1"} and set(shallowest) == {"0"}
        checks.append(CheckResult(
            name="extremes", passed=passed,
            codeword=None if passed else (deepest if set(deepest) != {"1"} else shallowest),
        ))

    return ValidationReport(
        sigma=sigma, n=n, max_len=max_len, max_len_bound=bound,
        checks=checks, tail_census=census, census_max_ratio=ratio,
    )


def validate(code: CanonicalCode, n: int) -> ValidationReport:
    report = validate_assignment(list(code.codewords()), n)
    offender = None
    previous = None
    for depth, count in enumerate(code.count_per_len, start=1):
        if not count:
            continue
        if previous is not None:
            prev_depth, prev_first, prev_count = previous
            expected = (prev_first + prev_count) << (depth - prev_depth)
            if code.first_of(depth) != expected:
                offender = bit_string(code.first_of(depth), depth)
                break
        previous = (depth, code.first_of(depth), count)
    report.checks.append(CheckResult(name="first_recurrence", passed=offender is None, codeword=offender))
    return report
