"""Line-oriented result cache for m_k(b).

Each line is one JSON object.  Loading re-verifies every certificate and
drops records that fail; storing writes a temporary file and renames it.
"""

from __future__ import annotations

import json
import os
import tempfile
import warnings
from dataclasses import dataclass
from pathlib import Path

from .realizability import MultiplicityVector, feasible

VERSION = "0.1.0"  # bump with __version__


@dataclass(frozen=True)
class CacheRecord:
    k: int
    b: int
    lo: int
    hi: int
    exact: bool
    certificate: MultiplicityVector | None
    provenance: tuple[str, ...] = ()
    version: str = VERSION

    def check(self) -> None:
        if self.lo > self.hi:
            raise ValueError("lo exceeds hi")
        if self.exact and self.lo != self.hi:
            raise ValueError("exact record with lo != hi")
        cert = self.certificate
        if cert is not None:
            if cert.dim != self.k or cert.total != self.lo:
                raise ValueError("certificate does not sum to lo")
            if not feasible(cert, self.b):
                raise ValueError("certificate is infeasible")

    def to_json(self) -> str:
        cert = None
        if self.certificate is not None:
            # sparse: index of vector v is v - 1
            cert = {str(j + 1): c for j, c in enumerate(self.certificate.counts) if c}
        return json.dumps(
            {
                "k": self.k,
                "b": self.b,
                "lo": self.lo,
                "hi": self.hi,
                "exact": self.exact,
                "certificate": cert,
                "provenance": list(self.provenance),
                "version": self.version,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, line: str) -> "CacheRecord":
        d = json.loads(line)
        cert = d.get("certificate")
        mv = None
        if cert is not None:
            mv = MultiplicityVector.from_mapping(int(d["k"]), {int(v): int(c) for v, c in cert.items()})
        return cls(
            int(d["k"]), int(d["b"]), int(d["lo"]), int(d["hi"]), bool(d["exact"]), mv,
            tuple(d.get("provenance", ())), str(d.get("version", "")),
        )


class ResultCache:
    """In-memory map (k, b) -> CacheRecord backed by a JSON-lines file."""

    def __init__(self, path: str | os.PathLike | None = None) -> None:
        self.path = Path(path) if path is not None else None
        self.records: dict[tuple[int, int], CacheRecord] = {}
        self.dropped = 0
        if self.path is not None and self.path.exists():
            self.load()

    def load(self) -> None:
        assert self.path is not None
        for lineno, line in enumerate(self.path.read_text().splitlines(), start=1):
            if not line.strip():
                continue
            try:
                rec = CacheRecord.from_json(line)
                rec.check()
            except (ValueError, KeyError, TypeError) as exc:
                self.dropped += 1
                warnings.warn(f"{self.path}:{lineno}: dropping invalid cache record ({exc})", stacklevel=2)
                continue
            self.records[(rec.k, rec.b)] = rec

    def store(self) -> None:
        if self.path is None:
            return
        lines = [self.records[key].to_json() for key in sorted(self.records)]
        fd, tmp = tempfile.mkstemp(dir=self.path.parent or ".", prefix=self.path.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write("\n".join(lines) + ("\n" if lines else ""))
            os.replace(tmp, self.path)
        except BaseException:
            os.unlink(tmp)
            raise

    def get(self, k: int, b: int) -> CacheRecord | None:
        return self.records.get((k, b))

    def put(self, rec: CacheRecord) -> None:
        rec.check()
        self.records[(rec.k, rec.b)] = rec

    def put_result(self, k: int, b: int, res) -> None:
        """Record an exact solver result."""
        self.put(CacheRecord(k, b, res.value, res.value, True, res.certificate, tuple(res.provenance)))

    def __len__(self) -> int:
        return len(self.records)
