from dataclasses import dataclass, field, fields


@dataclass
class ProbeStats:
    """
    Caller-owned operation counters. Structures stay immutable; a query that
    wants accounting passes one of these in.
    """
    peeks: int = 0
    reads: int = 0
    class_tree_consults: int = 0
    pred_node_probes: int = 0
    wt_level_probes: int = 0
    search_steps: int = 0

    def absorb(self, other: "ProbeStats", times: int = 1) -> None:
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + times * getattr(other, f.name))


@dataclass
class DecodeStats:
    """Totals over a decoded stream plus the worst single symbol."""
    symbols: int = 0
    totals: ProbeStats = field(default_factory=ProbeStats)
    max_consults: int = 0
    max_node_probes: int = 0
    max_search_steps: int = 0

    def record(self, per_symbol: ProbeStats, times: int = 1) -> None:
        """Count per_symbol for `times` decoded symbols."""
        self.symbols += times
        self.totals.absorb(per_symbol, times)
        self.max_consults = max(self.max_consults, per_symbol.class_tree_consults)
        self.max_node_probes = max(self.max_node_probes, per_symbol.pred_node_probes)
        self.max_search_steps = max(self.max_search_steps, per_symbol.search_steps)

    def average(self, name: str) -> float:
        return getattr(self.totals, name) / self.symbols if self.symbols else 0.0
