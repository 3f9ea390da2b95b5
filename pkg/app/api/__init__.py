from . import codec

__all__ = ["codec"]
