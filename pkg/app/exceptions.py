"""
Codec error hierarchy. Every error is a ValueError so callers that only care
about "bad input" can keep catching ValueError; the ErrorCode tells them apart.
"""
from typing import Optional

from app.enums import ErrorCode


class CodecError(ValueError):
    code: ErrorCode = ErrorCode.CONTRACT_VIOLATION

    def __init__(self, message: str, *, codeword: Optional[str] = None):
        super().__init__(message)
        self.codeword = codeword


class ContractViolationError(CodecError):
    code = ErrorCode.CONTRACT_VIOLATION


class EndOfStreamError(CodecError):
    code = ErrorCode.END_OF_STREAM


class EmptyFrequencyTableError(CodecError):
    code = ErrorCode.EMPTY_INPUT


class KraftViolationError(CodecError):
    code = ErrorCode.KRAFT_VIOLATION


class CodeTooDeepError(CodecError):
    code = ErrorCode.CODE_TOO_DEEP


class BadMagicError(CodecError):
    code = ErrorCode.BAD_MAGIC


class UnsupportedVersionError(CodecError):
    code = ErrorCode.BAD_VERSION


class TruncatedPayloadError(CodecError):
    code = ErrorCode.TRUNCATED


class CorruptStreamError(CodecError):
    code = ErrorCode.CORRUPT_STREAM


class UnknownSymbolError(CodecError):
    code = ErrorCode.UNKNOWN_SYMBOL


class InvalidParameterError(CodecError):
    code = ErrorCode.INVALID_PARAMETER
