"""Persistent record tables for the search harness.

Three files hang off one ``--records path.jsonl`` stem:

  path.jsonl           accepted records, one JSON object per line in the
                       wire schema {s_key, degree, coeffs, height,
                       error_radius}; coefficients and numbers are decimal
                       strings, constant term first; lines are appended in
                       degree order when a degree finishes, so the file is
                       append-only AND byte-deterministic.
  path.snapshot.json   compacted snapshot (canonical JSON, sorted keys, no
                       timestamps): per-degree bests, counters, envelope.
                       Two runs with the same config produce identical
                       bytes.
  path.journal.jsonl   operational journal: run headers, per-chunk
                       completions, timestamps.  This is where wall-clock
                       noise lives; resume reads it, nothing diffs it.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field
from typing import Optional

SNAPSHOT_SCHEMA_VERSION = 1


class RecordFileError(RuntimeError):
    pass


def records_paths(records_path: str) -> tuple[str, str, str]:
    base = records_path[:-6] if records_path.endswith(".jsonl") else records_path
    return records_path, base + ".snapshot.json", base + ".journal.jsonl"


def _float_str(x: float) -> str:
    return format(x, ".17g")


@dataclass(frozen=True)
class RecordEntry:
    s_key: str
    degree: int
    coeffs: tuple[int, ...]  # ascending, constant first
    height: float
    error_radius: float

    def sort_key(self):
        return (self.height, self.coeffs)

    def to_json(self) -> dict:
        return {
            "s_key": self.s_key,
            "degree": self.degree,
            "coeffs": [str(c) for c in self.coeffs],
            "height": _float_str(self.height),
            "error_radius": _float_str(self.error_radius),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RecordEntry":
        return cls(
            s_key=obj["s_key"],
            degree=int(obj["degree"]),
            coeffs=tuple(int(c) for c in obj["coeffs"]),
            height=float(obj["height"]),
            error_radius=float(obj["error_radius"]),
        )


def better(a: Optional[RecordEntry], b: Optional[RecordEntry]) -> Optional[RecordEntry]:
    """Deterministic merge: smaller height wins, ties to the
    lexicographically smaller coefficient tuple."""
    if a is None:
        return b
    if b is None:
        return a
    return a if a.sort_key() <= b.sort_key() else b


@dataclass
class RecordTable:
    s_key: str
    config: dict
    records: dict[int, Optional[RecordEntry]] = field(default_factory=dict)
    counters: dict[str, int] = field(default_factory=dict)

    def update(self, entry: RecordEntry) -> None:
        self.records[entry.degree] = better(self.records.get(entry.degree), entry)

    def add_counters(self, other: dict[str, int]) -> None:
        for k, v in other.items():
            self.counters[k] = self.counters.get(k, 0) + v

    def envelope(self) -> dict[int, Optional[float]]:
        """min height among degrees >= d, per degree d in the table."""
        degrees = sorted(self.records)
        out: dict[int, Optional[float]] = {}
        best: Optional[float] = None
        for d in reversed(degrees):
            e = self.records[d]
            if e is not None and (best is None or e.height < best):
                best = e.height
            out[d] = best
        return {d: out[d] for d in degrees}

    def minimum(self) -> Optional[RecordEntry]:
        entries = [e for e in self.records.values() if e is not None]
        return min(entries, key=RecordEntry.sort_key) if entries else None

    def to_snapshot_dict(self) -> dict:
        env = self.envelope()
        return {
            "schema_version": SNAPSHOT_SCHEMA_VERSION,
            "s_key": self.s_key,
            "config": self.config,
            "records": {
                str(d): (e.to_json() if e is not None else None)
                for d, e in sorted(self.records.items())
            },
            "envelope": {
                str(d): (_float_str(v) if v is not None else None)
                for d, v in env.items()
            },
            "counters": {k: self.counters[k] for k in sorted(self.counters)},
        }

    def snapshot_bytes(self) -> bytes:
        return (
            json.dumps(self.to_snapshot_dict(), sort_keys=True, indent=1) + "\n"
        ).encode("utf-8")

    @classmethod
    def from_snapshot_dict(cls, obj: dict) -> "RecordTable":
        if obj.get("schema_version") != SNAPSHOT_SCHEMA_VERSION:
            raise RecordFileError(
                f"snapshot schema version {obj.get('schema_version')} "
                f"!= supported {SNAPSHOT_SCHEMA_VERSION}"
            )
        table = cls(s_key=obj["s_key"], config=obj["config"])
        for d, e in obj["records"].items():
            table.records[int(d)] = None if e is None else RecordEntry.from_json(e)
        table.counters = dict(obj.get("counters", {}))
        return table


def write_snapshot_atomic(path: str, table: RecordTable) -> None:
    tmp = path + ".tmp"
    with open(tmp, "wb") as fh:
        fh.write(table.snapshot_bytes())
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def load_snapshot(path: str) -> RecordTable:
    with open(path, "r", encoding="utf-8") as fh:
        return RecordTable.from_snapshot_dict(json.load(fh))


def load_record_lines(path: str) -> list[RecordEntry]:
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(RecordEntry.from_json(json.loads(line)))
    return out


def sync_record_lines(path: str, expected: list[RecordEntry]) -> None:
    """Bring the append-only records file up to the expected line list.

    Existing lines must be a prefix of the expected ones (the file is only
    ever appended to); missing lines are appended, anything else is a
    corruption error.  Fails closed: on any error the file is untouched.
    """
    existing: list[str] = []
    if os.path.exists(path):
        with open(path, "r", encoding="utf-8") as fh:
            existing = [ln.rstrip("\n") for ln in fh if ln.strip()]
    want = [json.dumps(e.to_json(), sort_keys=True) for e in expected]
    if existing != want[: len(existing)]:
        raise RecordFileError(
            f"records file {path} does not match this run's history; "
            "refusing to append"
        )
    if len(existing) < len(want):
        with open(path, "a", encoding="utf-8") as fh:
            for ln in want[len(existing) :]:
                fh.write(ln + "\n")
            fh.flush()
            os.fsync(fh.fileno())


class OpsJournal:
    """Append-only operational journal with timestamps."""

    def __init__(self, path: str):
        self.path = path

    def read(self) -> list[dict]:
        if not os.path.exists(self.path):
            return []
        out = []
        with open(self.path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    out.append(json.loads(line))
        return out

    def append(self, obj: dict) -> None:
        obj = dict(obj)
        obj["ts"] = time.time()
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(obj, sort_keys=True) + "\n")
            fh.flush()
            os.fsync(fh.fileno())
