"""Structured output codec.

`to_primitive` turns any value the package produces into JSON primitives.
Integers of any size become decimal strings, so hundred-digit primes
survive intact; the only bare integers are table cell exponents.  The
``*_from_*`` helpers parse the documents back.
"""

from __future__ import annotations

import dataclasses
import enum
from typing import Any

from .decompose import Decomposition
from .eisenstein import CubeRoot, EisensteinInt, Zero, ZERO
from .errors import InvalidInputError
from .ratchar import FactoredInteger, RuleDecision
from .slopes import INFINITY, Slope, SlopeSet
from .tables import ResidueTable, TableReport, from_structured, to_structured

_CHAR_TOKENS = {"1": CubeRoot(0), "w": CubeRoot(1), "w2": CubeRoot(2), "0": ZERO}


def to_primitive(obj: Any, _seen: set | None = None) -> Any:
    if _seen is None:
        _seen = set()
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, (CubeRoot, Zero, Slope)):
        return str(obj)
    if isinstance(obj, enum.Enum):
        return obj.value

    oid = id(obj)
    if oid in _seen:
        return "<recursion>"
    _seen.add(oid)
    try:
        if isinstance(obj, EisensteinInt):
            return {"a": str(obj.a), "b": str(obj.b)}
        if isinstance(obj, Decomposition):
            return {
                "p": str(obj.p),
                "L": str(obj.L),
                "M": str(obj.M),
                "pi": to_primitive(obj.pi, _seen),
                "omega_image": str(obj.omega_image),
            }
        if isinstance(obj, SlopeSet):
            return {
                "q": str(obj.q),
                "values": [[str(t), str(s)] for t, s in obj.mapping],
                "census": [{"slope": str(s), "count": str(n)} for s, n in obj.census()],
            }
        if isinstance(obj, ResidueTable):
            return to_structured(obj)
        if isinstance(obj, TableReport):
            return {
                "q": str(obj.q),
                "ok": obj.ok,
                "violations": [{"kind": v.kind, "cells": [[str(l), str(m)] for l, m in v.cells], "detail": v.detail}
                               for v in obj.violations],
            }
        if isinstance(obj, FactoredInteger):
            return {"sign": str(obj.sign), "factors": [[str(q), str(e)] for q, e in obj.factors]}
        if isinstance(obj, RuleDecision):
            return {"rule": obj.rule, "value": str(obj.value)}
        if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
            return {f.name: to_primitive(getattr(obj, f.name), _seen) for f in dataclasses.fields(obj)}
        if isinstance(obj, dict):
            return {str(to_primitive(k, _seen)): to_primitive(v, _seen) for k, v in obj.items()}
        if isinstance(obj, (set, frozenset)):
            items = [to_primitive(i, _seen) for i in obj]
            return sorted(items, key=str)
        if isinstance(obj, (list, tuple)):
            return [to_primitive(i, _seen) for i in obj]
        return str(obj)
    finally:
        _seen.discard(oid)


def char_value_from_text(text: str) -> CubeRoot | Zero:
    try:
        return _CHAR_TOKENS[text.strip()]
    except KeyError:
        raise InvalidInputError(f"not a character value: {text!r}") from None


def slope_from_text(text: str) -> Slope:
    text = text.strip()
    if text == "inf":
        return INFINITY
    try:
        return Slope(int(text))
    except ValueError:
        raise InvalidInputError(f"not a slope: {text!r}") from None


def eisenstein_from_primitive(doc: dict) -> EisensteinInt:
    return EisensteinInt(int(doc["a"]), int(doc["b"]))


def decomposition_from_primitive(doc: dict) -> Decomposition:
    return Decomposition(
        p=int(doc["p"]),
        pi=eisenstein_from_primitive(doc["pi"]),
        L=int(doc["L"]),
        M=int(doc["M"]),
        omega_image=int(doc["omega_image"]),
    )


def slope_set_from_primitive(doc: dict) -> SlopeSet:
    mapping = tuple((slope_from_text(t), slope_from_text(s)) for t, s in doc["values"])
    return SlopeSet(int(doc["q"]), mapping)


def factored_from_primitive(doc: dict) -> FactoredInteger:
    return FactoredInteger(int(doc["sign"]), tuple((int(q), int(e)) for q, e in doc["factors"]))


def table_from_primitive(doc: dict) -> ResidueTable:
    return from_structured(doc)
