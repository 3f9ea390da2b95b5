from typing import Dict, List, Optional

from pydantic import BaseModel


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""
    codeword: Optional[str] = None  # first offending codeword, as a bit string


class ValidationReport(BaseModel):
    """Outcome of the structural checks on a canonical code"""
    sigma: int
    n: int
    max_len: int
    max_len_bound: Optional[int] = None
    checks: List[CheckResult]
    # s -> number of stored First codewords whose tail has at least s bits
    tail_census: Dict[int, int]
    census_max_ratio: float

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks)

    def failed(self) -> List[str]:
        return [check.name for check in self.checks if not check.passed]

    def check(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)


class SpaceReport(BaseModel):
    """Bit accounting of the partitioned dictionary against the plain First + pair-key layout"""
    sigma: int
    max_len: int
    long_width: int
    short_width: int
    long_trees: int
    short_trees: int
    stored_keys: int
    stored_key_bits: int
    local_depth_bits: int
    tree_overhead_bits: int
    occupancy_bits: int
    tail_kind_bits: int
    partitioned_bits: int
    plain_first_bits: int
    pair_key_bits: int
    plain_bits: int


class BenchRow(BaseModel):
    """One sweep point; field order is the CSV column order"""
    sigma: int
    alpha: float
    n: int
    lmax: int
    dict_bits_plain: int
    dict_bits_partitioned: int
    wt_bits: int
    avg_probes_part: float
    avg_steps_exp: float
    avg_steps_bin: float
    rare_ratio: float
    census_s_max: float


class BenchPointDetail(BaseModel):
    """Measurements that stay out of the CSV: wall-clock and worst cases"""
    sigma: int
    present_sigma: int
    seconds: float
    max_consults: int
    max_node_probes: int
    max_steps_exp: int
    wt_payload_bits: int
    space_ratio: float


class BenchReport(BaseModel):
    rows: List[BenchRow]
    details: List[BenchPointDetail]
