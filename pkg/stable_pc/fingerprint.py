from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Callable, Dict

import numpy as np

from .core import DataMatrix


@dataclass(frozen=True)
class Fingerprint:
    n: int
    m: int
    checksum: str

    def to_dict(self) -> Dict[str, object]:
        return {"n": self.n, "m": self.m, "checksum": self.checksum}


class Fingerprinter:
    """
    Builds input checksums in format:
    <prefix>:<sha256(shape, little-endian float64 values)>
    """

    def __init__(
        self,
        *,
        prefix: str = "sha256",
        hash_factory: Callable[[], "hashlib._Hash"] = hashlib.sha256,
    ) -> None:
        self.prefix = prefix.rstrip(":")
        self.hash_factory = hash_factory

    @staticmethod
    def _payload(data: DataMatrix) -> bytes:
        values = np.ascontiguousarray(data.values, dtype="<f8")
        return f"{data.m}x{data.n}:".encode("utf-8") + values.tobytes()

    def build(self, data: DataMatrix) -> Fingerprint:
        h = self.hash_factory()
        h.update(self._payload(data))
        return Fingerprint(n=data.n, m=data.m, checksum=f"{self.prefix}:{h.hexdigest()}")
