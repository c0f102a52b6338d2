"""JSON documents describing fans.

A document lists integer ray vectors and cones as ray-index lists (maximal
cones suffice; faces are recomputed)::

    {"schema_version": 1, "ambient_dim": 2, "name": "square",
     "rays": [[1, 0], [0, 1], [-1, 0], [0, -1]],
     "cones": [[0, 1], [1, 2], [2, 3], [3, 0]]}
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any

from .fan import Fan, FanError, build_fan

SCHEMA_VERSION = 1

__all__ = ["SCHEMA_VERSION", "SchemaError", "FanDocument", "parse_document", "parse_fan",
           "document_from_fan", "emit_fan", "load_fan"]


class SchemaError(ValueError):
    """Invalid fan document; ``where`` names the offending field or position."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where
        self.message = message


@dataclass
class FanDocument:
    ambient_dim: int
    rays: list[list[int]]
    cones: list[list[int]]
    name: str | None = None
    metadata: dict[str, Any] = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"schema_version": self.schema_version,
                               "ambient_dim": self.ambient_dim}
        if self.name is not None:
            out["name"] = self.name
        out["rays"] = self.rays
        out["cones"] = self.cones
        if self.metadata:
            out["metadata"] = self.metadata
        return out

    def to_json(self, indent: int | None = 2) -> str:
        if indent is None:
            return json.dumps(self.to_dict())
        # one ray / cone per line keeps golden files diffable
        d = self.to_dict()
        lines = ["{"]
        items = list(d.items())
        for i, (k, v) in enumerate(items):
            comma = "," if i < len(items) - 1 else ""
            if k in ("rays", "cones"):
                inner = ",\n".join(f"    {json.dumps(x)}" for x in v)
                lines.append(f'  "{k}": [\n{inner}\n  ]{comma}' if v else f'  "{k}": []{comma}')
            else:
                lines.append(f"  {json.dumps(k)}: {json.dumps(v)}{comma}")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_fan(self) -> Fan:
        try:
            return build_fan(self.rays, self.cones, self.ambient_dim, name=self.name)
        except FanError as exc:
            msg = str(exc)
            m = re.match(r"cones? (\d+)", msg)
            where = f"cones[{m.group(1)}]" if m else "cones"
            m = re.match(r"ray (\d+)", msg)
            if m:
                where = f"rays[{m.group(1)}]"
            raise SchemaError(where, f"{type(exc).__name__}: {msg}") from exc


def _int_list(x, where: str, length: int | None = None) -> list[int]:
    if not isinstance(x, list):
        raise SchemaError(where, "expected a list")
    for i, a in enumerate(x):
        if isinstance(a, bool) or not isinstance(a, int):
            raise SchemaError(f"{where}[{i}]", f"expected an integer, got {a!r}")
    if length is not None and len(x) != length:
        raise SchemaError(where, f"expected {length} entries, got {len(x)}")
    return list(x)


def parse_document(text: str) -> FanDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    if not isinstance(data, dict):
        raise SchemaError("document", "expected a JSON object")
    version = data.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise SchemaError("schema_version", f"unsupported version {version!r}")
    for key in ("ambient_dim", "rays", "cones"):
        if key not in data:
            raise SchemaError(key, "missing required field")
    unknown = set(data) - {"schema_version", "ambient_dim", "rays", "cones", "name", "metadata"}
    if unknown:
        raise SchemaError(sorted(unknown)[0], "unknown field")
    n = data["ambient_dim"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise SchemaError("ambient_dim", "expected a nonnegative integer")
    if not isinstance(data["rays"], list):
        raise SchemaError("rays", "expected a list")
    if not isinstance(data["cones"], list):
        raise SchemaError("cones", "expected a list")
    rays = [_int_list(r, f"rays[{i}]", n) for i, r in enumerate(data["rays"])]
    cones = [_int_list(c, f"cones[{i}]") for i, c in enumerate(data["cones"])]
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise SchemaError("name", "expected a string")
    meta = data.get("metadata", {})
    if not isinstance(meta, dict):
        raise SchemaError("metadata", "expected an object")
    return FanDocument(n, rays, cones, name, meta, version)


def parse_fan(text: str) -> Fan:
    return parse_document(text).to_fan()


def load_fan(path: str) -> Fan:
    with open(path) as fh:
        return parse_fan(fh.read())


def document_from_fan(F: Fan, metadata: dict | None = None) -> FanDocument:
    return FanDocument(F.ambient_dim, [list(r) for r in F.rays],
                       [list(c) for c in F.maximal_cone_rays()], F.name, dict(metadata or {}))


def emit_fan(F: Fan, indent: int | None = 2) -> str:
    return document_from_fan(F).to_json(indent)
