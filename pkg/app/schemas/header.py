from typing import List

from pydantic import BaseModel

MAGIC = b"CHC1"
VERSION = 1


class FileHeader(BaseModel):
    """CHC1 header; the payload follows it directly"""
    n: int
    sigma_present: int
    max_len: int
    count_per_len: List[int]
    symbols_in_canonical_order: List[int]

    @property
    def size_bytes(self) -> int:
        return 4 + 1 + 8 + 4 + 1 + 4 * len(self.count_per_len) + 4 * len(self.symbols_in_canonical_order)
