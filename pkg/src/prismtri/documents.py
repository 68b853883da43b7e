"""JSON documents for triangulations and run reports.

A triangulation document looks like::

    {
      "meta": {"generator": "construct", "size": 6, "timestamp": "..."},
      "schemaVersion": 1,
      "shape": {"kind": "prism", "n": 4},
      "tets": [["T0", "T1", "T2", "B0"], ...]
    }

Serialisation is canonical (sorted keys, sorted tets), so save -> load ->
save reproduces the same bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .errors import DomainError
from .kernel import Triangulation3D, canonical_tet
from .shapes import PointId, ShapeSpec

SCHEMA_VERSION = 1


class DocumentError(DomainError):
    """Malformed document."""


@dataclass
class TriangulationDocument:
    triangulation: Triangulation3D
    generator: str = "prismtri"
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))

    def to_dict(self) -> dict:
        tri = self.triangulation
        return {
            "schemaVersion": SCHEMA_VERSION,
            "shape": {"kind": tri.shape.kind.value, "n": tri.shape.n},
            "tets": [[str(p) for p in t] for t in tri.tets],
            "meta": {"size": tri.size, "generator": self.generator, "timestamp": self.timestamp},
        }

    def dumps(self) -> str:
        return dumps(self.to_dict())

    def save(self, path) -> None:
        Path(path).write_text(self.dumps())

    @classmethod
    def from_dict(cls, doc) -> TriangulationDocument:
        if not isinstance(doc, dict):
            raise DocumentError("document must be a JSON object")
        if doc.get("schemaVersion") != SCHEMA_VERSION:
            raise DocumentError(f"unsupported schemaVersion {doc.get('schemaVersion')!r}")
        shape_d = doc.get("shape")
        if not isinstance(shape_d, dict):
            raise DocumentError("missing shape")
        try:
            shape = ShapeSpec(shape_d["kind"], shape_d["n"])
        except (KeyError, ValueError, TypeError) as exc:
            raise DocumentError(f"bad shape: {exc}") from exc
        tets = doc.get("tets")
        if not isinstance(tets, list):
            raise DocumentError("tets must be a list")
        parsed = []
        for t in tets:
            if not isinstance(t, list) or len(t) != 4:
                raise DocumentError(f"tet {t!r} must list four point codes")
            try:
                parsed.append(canonical_tet([PointId.parse(c, shape.n) for c in t]))
            except DomainError as exc:
                raise DocumentError(str(exc)) from exc
        meta = doc.get("meta")
        if not isinstance(meta, dict):
            raise DocumentError("missing meta")
        if meta.get("size") != len(parsed):
            raise DocumentError(f"meta.size {meta.get('size')!r} != {len(parsed)} tets")
        return cls(
            Triangulation3D(shape, tuple(parsed)),
            generator=str(meta.get("generator", "")),
            timestamp=str(meta.get("timestamp", "")),
        )

    @classmethod
    def loads(cls, text: str) -> TriangulationDocument:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(doc)

    @classmethod
    def load(cls, path) -> TriangulationDocument:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise DocumentError(str(exc)) from exc
        return cls.loads(text)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def report_document(command: str, inputs: dict, results: dict, checks: dict[str, bool], elapsed: float) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "results": results,
        "checks": checks,
        "passed": all(checks.values()),
        "elapsed": round(elapsed, 6),
    }
