from .code_service import build_code, canonicalize, compute_lengths, tail_split, validate
from .codec_service import Decoder, Encoder, decode_stream, encode_stream, encode_symbols, inspect_stream


__all__ = [
    "build_code",
    "canonicalize",
    "compute_lengths",
    "tail_split",
    "validate",
    "Decoder",
    "Encoder",
    "decode_stream",
    "encode_stream",
    "encode_symbols",
    "inspect_stream",
]
