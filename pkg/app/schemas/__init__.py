from .report import CheckResult, ValidationReport, SpaceReport, BenchRow, BenchPointDetail, BenchReport
from .header import FileHeader, MAGIC, VERSION
from .corpus import ZipfSpec
from .codec import InspectResponse

__all__ = [
    "CheckResult", "ValidationReport", "SpaceReport",
    "BenchRow", "BenchPointDetail", "BenchReport",
    "FileHeader", "MAGIC", "VERSION",
    "ZipfSpec",
    "InspectResponse",
]
