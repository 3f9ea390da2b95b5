from .bitio import BitWriter, BitCursor
from .code import FrequencyTable, CodeLengths, CanonicalCode, TailSplit
from .bitvector import RsBitVector
from .wavelet_tree import WaveletTree
from .probes import ProbeStats, DecodeStats
from .pred_set import PredSet
from .codebook import ClassTree, PackedKey, PartitionedCodebook, unary_prefix_len

__all__ = [
    "BitWriter",
    "BitCursor",
    "FrequencyTable",
    "CodeLengths",
    "CanonicalCode",
    "TailSplit",
    "RsBitVector",
    "WaveletTree",
    "ProbeStats",
    "DecodeStats",
    "PredSet",
    "ClassTree",
    "PackedKey",
    "PartitionedCodebook",
    "unary_prefix_len",
]
