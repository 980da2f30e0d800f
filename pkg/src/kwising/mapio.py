"""JSON map documents.

A document has the fields ``darts``, ``reversal``, ``rotation``, ``theta``
(one ``{"num", "den"}`` pair per edge, edges ordered by smaller dart id,
value in units of pi) and optionally ``weights`` (decimal strings, one per
edge) and ``name``.  Angles are never stored as floats.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from typing import Any

from .angles import AnglePi
from .errors import ParseError
from .ribbon import IsoradialMap, build_isoradial_map


@dataclass(frozen=True)
class MapDocument:
    darts: int
    reversal: tuple[int, ...]
    rotation: tuple[int, ...]
    theta: tuple[tuple[int, int], ...]
    weights: tuple[str, ...] | None = None
    name: str | None = None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {}
        if self.name is not None:
            out["name"] = self.name
        out["darts"] = self.darts
        out["reversal"] = list(self.reversal)
        out["rotation"] = list(self.rotation)
        out["theta"] = [{"num": p, "den": q} for p, q in self.theta]
        if self.weights is not None:
            out["weights"] = list(self.weights)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":")) + "\n"

    def sha256(self) -> str:
        return hashlib.sha256(self.dumps().encode()).hexdigest()

    @classmethod
    def from_dict(cls, data: Any) -> MapDocument:
        if not isinstance(data, dict):
            raise ParseError("map document must be a JSON object")
        unknown = set(data) - {"darts", "reversal", "rotation", "theta", "weights", "name"}
        if unknown:
            raise ParseError(f"unknown fields {sorted(unknown)}")
        try:
            darts = data["darts"]
            reversal = data["reversal"]
            rotation = data["rotation"]
            theta_raw = data["theta"]
        except KeyError as exc:
            raise ParseError(f"missing field {exc.args[0]!r}") from None
        if not isinstance(darts, int) or isinstance(darts, bool) or darts <= 0 or darts % 2:
            raise ParseError(f"'darts' must be a positive even integer, got {darts!r}")
        for key, arr in (("reversal", reversal), ("rotation", rotation)):
            if not isinstance(arr, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in arr):
                raise ParseError(f"{key!r} must be an array of integers")
        if not isinstance(theta_raw, list):
            raise ParseError("'theta' must be an array")
        theta = []
        for t in theta_raw:
            if not isinstance(t, dict) or set(t) != {"num", "den"}:
                raise ParseError(f"bad theta entry {t!r}")
            p, q = t["num"], t["den"]
            if not (isinstance(p, int) and isinstance(q, int)) or q <= 0:
                raise ParseError(f"bad theta entry {t!r}")
            a = AnglePi(p, q)
            theta.append((a.numerator, a.denominator))
        weights = data.get("weights")
        if weights is not None:
            if not isinstance(weights, list) or len(weights) != darts // 2:
                raise ParseError("'weights' must hold one decimal string per edge")
            for w in weights:
                try:
                    Decimal(w)
                except (InvalidOperation, TypeError):
                    raise ParseError(f"bad weight {w!r}") from None
            weights = tuple(weights)
        name = data.get("name")
        if name is not None and not isinstance(name, str):
            raise ParseError("'name' must be a string")
        return cls(darts, tuple(reversal), tuple(rotation), tuple(theta), weights, name)

    @classmethod
    def loads(cls, text: str) -> MapDocument:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        return cls.from_dict(data)


def write_map(m: IsoradialMap, weights=None, name: str | None = None) -> MapDocument:
    w = None
    if weights is not None:
        w = tuple(repr(float(x)) if not isinstance(x, str) else x for x in weights)
    return MapDocument(
        darts=m.dart_count,
        reversal=m.reversal,
        rotation=m.rotation,
        theta=tuple((t.numerator, t.denominator) for t in m.theta),
        weights=w,
        name=name,
    )


def read_map(doc: MapDocument | str | dict) -> IsoradialMap:
    if isinstance(doc, str):
        doc = MapDocument.loads(doc)
    elif isinstance(doc, dict):
        doc = MapDocument.from_dict(doc)
    if len(doc.theta) != doc.darts // 2:
        raise ParseError(f"'theta' has {len(doc.theta)} entries for {doc.darts // 2} edges")
    return build_isoradial_map(doc.darts, doc.reversal, doc.rotation, [AnglePi(p, q) for p, q in doc.theta])


def load(path) -> MapDocument:
    with open(path) as fh:
        return MapDocument.loads(fh.read())


def save(doc: MapDocument, path) -> None:
    with open(path, "w") as fh:
        fh.write(doc.dumps())
