"""Input parsing and reproducible output writers."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .rng import GENERATOR_VERSION

SCHEMA_VERSION = 1


class DataFileError(ValueError):
    """Malformed input file; ``line`` is 1-based."""

    def __init__(self, path, line, message):
        super().__init__(f"{path}:{line}: {message}")
        self.path = str(path)
        self.line = line


def read_sample_file(path) -> np.ndarray:
    """One decimal value per line, UTF-8, no header; all values in (0, 1).

    Blank lines are skipped.
    """
    values = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            text = raw.strip()
            if not text:
                continue
            try:
                v = float(text)
            except ValueError:
                raise DataFileError(path, lineno, f"not a number: {text!r}") from None
            if not 0.0 < v < 1.0:
                raise DataFileError(path, lineno, f"value {text} outside (0, 1)")
            values.append(v)
    return np.array(values, dtype=float)


def read_tabulated_cdf(path) -> tuple[np.ndarray, np.ndarray]:
    """Two-column CSV ``x,F(x)``; an optional non-numeric header row is skipped."""
    xs, ps = [], []
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), 1):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 2:
                raise DataFileError(path, lineno, f"expected 2 columns, got {len(row)}")
            try:
                x, p = float(row[0]), float(row[1])
            except ValueError:
                if lineno == 1:
                    continue
                raise DataFileError(path, lineno, f"non-numeric row {row!r}") from None
            if xs and x <= xs[-1]:
                raise DataFileError(path, lineno, "x column must be strictly increasing")
            xs.append(x)
            ps.append(p)
    return np.array(xs), np.array(ps)


def fmt(x: float) -> str:
    """17 significant digits: enough to round-trip any double."""
    return format(float(x), ".17g")


def _encode(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, (str, Path)):
        return json.dumps(str(obj))
    if isinstance(obj, dict):
        items = (f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items())
        return "{" + ", ".join(items) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj) -> str:
    """JSON text with floats written at 17 significant digits."""
    return _encode(obj) + "\n"


def atomic_write(path, text: str):
    """Write ``text`` to ``path`` via a temp file in the same directory and rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


@dataclass
class RunManifest:
    command: str
    parameters: dict
    seed: int | None
    generator_version: str = GENERATOR_VERSION
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())
    outputs: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        return dumps({"schema": SCHEMA_VERSION, **asdict(self)})

    @classmethod
    def load(cls, path) -> "RunManifest":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        data.pop("schema", None)
        return cls(**data)


def manifest_path(out) -> Path:
    return Path(f"{out}.manifest.json")
