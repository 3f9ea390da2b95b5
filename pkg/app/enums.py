from enum import Enum


class DecoderStrategy(str, Enum):
    TREE = "tree"
    BIN = "bin"
    EXP = "exp"
    PART = "part"


class TailKind(str, Enum):
    LONG = "LONG"
    SHORT = "SHORT"


class PayloadFormat(str, Enum):
    BYTES = "bytes"
    U32 = "u32"


class ErrorCode(str, Enum):
    CONTRACT_VIOLATION = "CONTRACT_VIOLATION"
    END_OF_STREAM = "END_OF_STREAM"
    EMPTY_INPUT = "EMPTY_INPUT"
    KRAFT_VIOLATION = "KRAFT_VIOLATION"
    CODE_TOO_DEEP = "CODE_TOO_DEEP"

    BAD_MAGIC = "BAD_MAGIC"
    BAD_VERSION = "BAD_VERSION"
    TRUNCATED = "TRUNCATED"
    CORRUPT_STREAM = "CORRUPT_STREAM"
    UNKNOWN_SYMBOL = "UNKNOWN_SYMBOL"

    INVALID_PARAMETER = "INVALID_PARAMETER"
