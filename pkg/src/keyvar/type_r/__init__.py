"""Type R equations, group data and verification checks."""

from .data import TypeRData, build
from . import checks

__all__ = ["TypeRData", "build", "checks"]
