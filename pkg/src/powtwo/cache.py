"""Line-oriented persistent store of computed beta records.

File layout::

    # powtwo beta cache v1
    f d l rho N_l
    ...
    # sha256 <hex digest of every preceding line>

Writes go to a temporary file that is then renamed over the old one, so
readers only ever see complete files.
"""
from __future__ import annotations

import hashlib
import os
import tempfile
from pathlib import Path

from .beta import BetaRecord
from .errors import CacheCorruptionError

HEADER = "# powtwo beta cache v1"
FILENAME = "beta-cache.txt"
ENV_VAR = "POWTWO_CACHE_DIR"


def default_cache_dir() -> Path | None:
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else None


def _digest(lines: list[str]) -> str:
    h = hashlib.sha256()
    for line in lines:
        h.update(line.encode("ascii"))
        h.update(b"\n")
    return h.hexdigest()


class BetaCache:
    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)
        self.path = self.directory / FILENAME
        self._records: dict[tuple[int, int, int], BetaRecord] = {}
        self._load()

    def _load(self) -> None:
        if not self.path.exists():
            return
        lines = self.path.read_text(encoding="ascii").splitlines()
        if not lines or lines[0] != HEADER:
            raise CacheCorruptionError(f"{self.path}: missing or unknown header")
        if len(lines) < 2 or not lines[-1].startswith("# sha256 "):
            raise CacheCorruptionError(f"{self.path}: missing checksum line")
        body = lines[:-1]
        if lines[-1].split()[-1] != _digest(body):
            raise CacheCorruptionError(f"{self.path}: checksum mismatch")
        for line in body[1:]:
            try:
                f, d, l, rho, n = (int(tok) for tok in line.split())
            except ValueError as exc:
                raise CacheCorruptionError(f"{self.path}: bad record {line!r}") from exc
            self._records[(f, d, l)] = BetaRecord(f, d, l, rho, n)

    def __len__(self):
        return len(self._records)

    def __contains__(self, key) -> bool:
        return tuple(key) in self._records

    def get(self, f: int, d: int, l: int) -> BetaRecord | None:
        """Cached record or None when absent."""
        return self._records.get((f, d, l))

    def put(self, record: BetaRecord) -> None:
        self.put_many([record])

    def put_many(self, records) -> None:
        changed = False
        for r in records:
            old = self._records.get(r.key())
            if old is not None and old != r:
                raise CacheCorruptionError(f"conflicting records for {r.key()}: {old} vs {r}")
            if old is None:
                self._records[r.key()] = r
                changed = True
        if changed:
            self._write()

    def _write(self) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        body = [HEADER] + [f"{r.f} {r.d} {r.l} {r.rho} {r.n_count}"
                           for _, r in sorted(self._records.items())]
        text = "\n".join(body + [f"# sha256 {_digest(body)}"]) + "\n"
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".beta-cache-")
        try:
            with os.fdopen(fd, "w", encoding="ascii") as fh:
                fh.write(text)
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
