import logging
from typing import List

from pydantic_settings import BaseSettings

from app.enums import DecoderStrategy


class Settings(BaseSettings):

    # Codec
    default_decoder: DecoderStrategy = DecoderStrategy.PART

    # HTTP surface
    max_upload_bytes: int = 64 * 1024 * 1024

    # Bench sweep defaults, overridable from the command line
    bench_sigma_list: str = "1024,4096,16384,65536,262144,1048576"
    bench_alpha: float = 1.0
    bench_n: int = 1_000_000
    bench_seed: int = 42
    bench_jobs: int = 1

    # Environment
    environment: str = "development"
    debug: bool = False
    log_level: str = "INFO"

    class Config:
        env_prefix = "CHC_"
        env_file = ".env"
        case_sensitive = False

    def get_sigma_list(self) -> List[int]:
        return parse_sigma_list(self.bench_sigma_list)


def parse_sigma_list(raw: str) -> List[int]:
    values = [int(part) for part in raw.split(",") if part.strip()]
    if not values:
        raise ValueError("sigma list is empty")
    return values


def configure_logging(level: str | int | None = None) -> None:
    """Single stream handler for the CLI and the service."""
    logging.basicConfig(
        level=level if level is not None else settings.log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


settings = Settings()
