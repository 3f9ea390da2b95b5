from typing import Iterator


def ceil_log2(x: int) -> int:
    """Smallest k with 2^k >= x, for x >= 1."""
    if x < 1:
        raise ValueError("ceil_log2 needs a positive argument")
    return (x - 1).bit_length()


def low_mask(width: int) -> int:
    return (1 << width) - 1


def long_class_width(sigma: int) -> int:
    """W = ceil(lg sigma), at least 1 so class ranges are never empty."""
    return max(1, ceil_log2(max(sigma, 1)))


def lglg(sigma: int) -> int:
    """ceil(lg lg sigma) with sigma clamped to >= 4."""
    return ceil_log2(ceil_log2(max(sigma, 4)))


def short_class_width(sigma: int) -> int:
    """W' = 2 * ceil(lg lg sigma), at least 2."""
    return max(2, 2 * lglg(sigma))


def lucas_numbers() -> Iterator[int]:
    a, b = 2, 1
    while True:
        yield a
        a, b = b, a + b


def floor_log_phi(n: int) -> int:
    """
    Exact floor(log_phi n) for n >= 1.

    phi^k = L_k - psi^k with |psi| < 1, so phi^k lies just below the Lucas
    number L_k for even k and just above it for odd k.
    """
    if n < 1:
        raise ValueError("floor_log_phi needs n >= 1")
    k = 0
    lucas = lucas_numbers()
    next(lucas)
    for candidate, value in enumerate(lucas, start=1):
        bound = value if candidate % 2 == 0 else value + 1
        if n < bound:
            return k
        k = candidate
    return k  # pragma: no cover


def max_len_bound(sigma: int, n: int) -> int:
    """min(sigma - 1, floor(log_phi n)), the depth limit every Huffman code obeys."""
    return min(sigma - 1, floor_log_phi(n))
