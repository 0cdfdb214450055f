"""Parsing of frame, CM-type, pair and descriptor documents (JSON or TOML)."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .cmtypes import CMType, make_cm_type
from .groups import FrameError, GaloisFrame, cyclic_frame, product_frame, product_index
from .verdict import LowDimDescriptor
from .witness import HodgeWitness

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

DEFAULT_MAX_ORDER = 64


class InputError(ValueError):
    """Malformed or inconsistent input document."""


def max_order() -> int:
    raw = os.environ.get("CMTK_MAX_ORDER")
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"CMTK_MAX_ORDER must be an integer, got {raw!r}") from None
    if value < 2:
        raise InputError("CMTK_MAX_ORDER must be at least 2")
    return value


def load_document(path: str | Path) -> dict[str, Any]:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        if path.suffix.lower() == ".toml":
            doc = tomllib.loads(raw.decode("utf-8"))
        else:
            doc = json.loads(raw)
    except (ValueError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot parse {path}: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top level must be an object")
    return doc


def _int_list(value: Any, what: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise InputError(f"{what} must be a list of integers")
    return list(value)


def frame_from_spec(spec: Any) -> GaloisFrame:
    """``{"cyclic": n}`` or ``{"product": [n1, ...], "conj": [e1, ...]}``."""
    if not isinstance(spec, dict):
        raise InputError("frame spec must be an object")
    cap = max_order()
    try:
        if "cyclic" in spec:
            n = spec["cyclic"]
            if not isinstance(n, int) or isinstance(n, bool):
                raise InputError("cyclic order must be an integer")
            if n > cap:
                raise InputError(f"frame order {n} exceeds CMTK_MAX_ORDER={cap}")
            return cyclic_frame(n)
        if "product" in spec:
            sizes = _int_list(spec["product"], "product")
            conj = _int_list(spec.get("conj"), "conj")
            order = 1
            for s in sizes:
                if s < 1:
                    raise InputError("product factors must be positive")
                order *= s
            if order > cap:
                raise InputError(f"frame order {order} exceeds CMTK_MAX_ORDER={cap}")
            return product_frame(*sizes, conj=conj)
    except FrameError as exc:
        raise InputError(str(exc)) from None
    raise InputError('frame spec needs a "cyclic" or "product" key')


def frame_to_spec(frame: GaloisFrame) -> dict[str, Any]:
    if frame.spec is None:
        raise InputError("frame was built from a table and has no serializable spec")
    return dict(frame.spec)


def _element_indices(frame: GaloisFrame, phi: Any, what: str) -> list[int]:
    if not isinstance(phi, list):
        raise InputError(f"{what} must be a list")
    out = []
    sizes = (frame.spec or {}).get("product")
    for x in phi:
        if isinstance(x, list) and sizes:
            try:
                out.append(product_index(sizes, _int_list(x, what)))
            except FrameError as exc:
                raise InputError(str(exc)) from None
        elif isinstance(x, int) and not isinstance(x, bool):
            out.append(x)
        else:
            raise InputError(f"{what}: bad element {x!r}")
    return out


def cm_type_from_spec(frame: GaloisFrame, phi: Any, what: str = "phi") -> CMType:
    try:
        return make_cm_type(frame, _element_indices(frame, phi, what))
    except ValueError as exc:
        raise InputError(f"{what}: {exc}") from None


def cm_type_to_spec(cm: CMType) -> dict[str, Any]:
    return {"frame": frame_to_spec(cm.frame), "phi": list(cm.phi)}


@dataclass(frozen=True)
class PairSpec:
    frame: GaloisFrame
    cm1: CMType
    cm2: CMType
    names: tuple[str, str] = ("A1", "A2")
    max_r: int | None = None
    max_t: int | None = None
    witness: HodgeWitness | None = None
    raw: dict[str, Any] = field(default_factory=dict, compare=False)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "frame": frame_to_spec(self.frame),
            "phi1": list(self.cm1.phi),
            "phi2": list(self.cm2.phi),
            "names": list(self.names),
        }
        bounds = {k: v for k, v in (("max_r", self.max_r), ("max_t", self.max_t)) if v is not None}
        if bounds:
            out["bounds"] = bounds
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def _positive_or_none(value: Any, what: str) -> int | None:
    if value is None:
        return None
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise InputError(f"{what} must be a positive integer")
    return value


def parse_pair(doc: dict[str, Any]) -> PairSpec:
    if "frame" not in doc:
        raise InputError('pair spec needs a "frame"')
    frame = frame_from_spec(doc["frame"])
    for key in ("phi1", "phi2"):
        if key not in doc:
            raise InputError(f'pair spec needs "{key}"')
    cm1 = cm_type_from_spec(frame, doc["phi1"], "phi1")
    cm2 = cm_type_from_spec(frame, doc["phi2"], "phi2")
    names = doc.get("names", ["A1", "A2"])
    if not (isinstance(names, list) and len(names) == 2 and all(isinstance(n, str) for n in names)):
        raise InputError("names must be a list of two strings")
    bounds = doc.get("bounds") or {}
    if not isinstance(bounds, dict):
        raise InputError("bounds must be an object")
    witness = None
    if "witness" in doc:
        try:
            witness = HodgeWitness.from_json(frame, doc["witness"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed witness: {exc}") from None
    return PairSpec(
        frame,
        cm1,
        cm2,
        (names[0], names[1]),
        _positive_or_none(bounds.get("max_r"), "bounds.max_r"),
        _positive_or_none(bounds.get("max_t"), "bounds.max_t"),
        witness,
        raw=doc,
    )


def parse_descriptor(data: Any, frame: GaloisFrame | None, what: str) -> LowDimDescriptor:
    if not isinstance(data, dict):
        raise InputError(f"{what} must be an object")
    try:
        dim = data["dim"]
        albert = data["albert_type"]
    except KeyError as exc:
        raise InputError(f"{what} needs {exc}") from None
    if not isinstance(dim, int) or not isinstance(albert, str):
        raise InputError(f"{what}: dim must be an integer and albert_type a string")
    cm = None
    if "phi" in data:
        if frame is None:
            raise InputError(f"{what}: phi given without a common frame")
        cm = cm_type_from_spec(frame, data["phi"], f"{what}.phi")
    flag = data.get("endo_embedding_flag")
    if flag is not None and not isinstance(flag, bool):
        raise InputError(f"{what}: endo_embedding_flag must be a boolean")
    try:
        return LowDimDescriptor(dim, albert, cm, flag, data.get("name"))
    except ValueError as exc:
        raise InputError(f"{what}: {exc}") from None


def parse_lowdim(doc: dict[str, Any]) -> tuple[LowDimDescriptor, LowDimDescriptor]:
    frame = frame_from_spec(doc["frame"]) if "frame" in doc else None
    if "a" not in doc or "b" not in doc:
        raise InputError('descriptor file needs "a" and "b"')
    return parse_descriptor(doc["a"], frame, "a"), parse_descriptor(doc["b"], frame, "b")
