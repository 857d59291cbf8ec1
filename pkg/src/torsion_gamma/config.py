"""Variety configuration files (YAML, hence also JSON).

Schema::

    factors:                 # nonempty list
      - {type: I, e: 1, h: 1, multiplicity: 1}
    profiles:                # optional, one list of [e_lambda, f_lambda] per factor
      - [[1, 1]]
    toric_place: [false]     # optional, one boolean per factor

Errors name the offending field and its line in the document.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import yaml

from .errors import InvariantViolation, ParseError
from .gamma import IsotypicFactor, SplittingProfile, VarietyData


@dataclass(frozen=True)
class VarietyConfig:
    data: VarietyData
    profile: SplittingProfile
    toric_place: tuple
    profiles_given: bool


def _where(node) -> str:
    return f"line {node.start_mark.line + 1}"


def _fail(node, path: str, msg: str):
    raise ParseError(f"{_where(node)}, field {path}: {msg}")


def _scalar(node, path: str):
    if not isinstance(node, yaml.ScalarNode):
        _fail(node, path, "expected a scalar")
    return yaml.SafeLoader("").construct_object(node)


def _int(node, path: str, minimum: int = 1) -> int:
    v = _scalar(node, path)
    if isinstance(v, bool) or not isinstance(v, int):
        _fail(node, path, f"expected an integer, got {node.value!r}")
    if v < minimum:
        _fail(node, path, f"must be >= {minimum}, got {v}")
    return v


def _mapping(node, path: str) -> dict:
    if not isinstance(node, yaml.MappingNode):
        _fail(node, path, "expected a mapping")
    out = {}
    for k, v in node.value:
        key = _scalar(k, path)
        if key in out:
            _fail(k, f"{path}.{key}", "duplicate key")
        out[key] = (k, v)
    return out


def _sequence(node, path: str) -> list:
    if not isinstance(node, yaml.SequenceNode):
        _fail(node, path, "expected a list")
    return node.value


def parse_config(text: str) -> VarietyConfig:
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        line = f"line {mark.line + 1}" if mark is not None else "unknown line"
        raise ParseError(f"{line}: malformed document ({getattr(exc, 'problem', exc)})") from None
    if root is None:
        raise ParseError("line 1: empty document")
    top = _mapping(root, "<root>")
    for key in top:
        if key not in ("factors", "profiles", "toric_place"):
            _fail(top[key][0], str(key), "unknown field")
    if "factors" not in top:
        _fail(root, "factors", "missing required field")
    fnodes = _sequence(top["factors"][1], "factors")
    if not fnodes:
        _fail(top["factors"][1], "factors", "must list at least one factor")
    factors = []
    for i, fn in enumerate(fnodes):
        path = f"factors[{i}]"
        m = _mapping(fn, path)
        for key in m:
            if key not in ("type", "e", "h", "multiplicity"):
                _fail(m[key][0], f"{path}.{key}", "unknown field")
        for key in ("type", "e", "h"):
            if key not in m:
                _fail(fn, f"{path}.{key}", "missing required field")
        tnode = m["type"][1]
        t = _scalar(tnode, f"{path}.type")
        if t not in ("I", "II"):
            _fail(tnode, f"{path}.type", f"expected 'I' or 'II', got {t!r}")
        e = _int(m["e"][1], f"{path}.e")
        h = _int(m["h"][1], f"{path}.h")
        mult = _int(m["multiplicity"][1], f"{path}.multiplicity") if "multiplicity" in m else 1
        factors.append(IsotypicFactor(t, e, h, mult))
    data = VarietyData(tuple(factors))

    given = "profiles" in top
    if given:
        pnode = top["profiles"][1]
        plist = _sequence(pnode, "profiles")
        if len(plist) != len(factors):
            _fail(pnode, "profiles", f"expected {len(factors)} entries, got {len(plist)}")
        places = []
        for i, pn in enumerate(plist):
            row = []
            for k, pair in enumerate(_sequence(pn, f"profiles[{i}]")):
                items = _sequence(pair, f"profiles[{i}][{k}]")
                if len(items) != 2:
                    _fail(pair, f"profiles[{i}][{k}]", "expected [e_lambda, f_lambda]")
                row.append((_int(items[0], f"profiles[{i}][{k}][0]"), _int(items[1], f"profiles[{i}][{k}][1]")))
            if sum(a * b for a, b in row) != factors[i].e:
                raise InvariantViolation(
                    f"{_where(pn)}, field profiles[{i}]: sum of e*f is "
                    f"{sum(a * b for a, b in row)}, expected e = {factors[i].e}"
                )
            places.append(tuple(row))
        profile = SplittingProfile(tuple(places))
    else:
        profile = SplittingProfile.split(data)

    if "toric_place" in top:
        tnode = top["toric_place"][1]
        tl = _sequence(tnode, "toric_place")
        if len(tl) != len(factors):
            _fail(tnode, "toric_place", f"expected {len(factors)} entries, got {len(tl)}")
        toric = []
        for i, bn in enumerate(tl):
            b = _scalar(bn, f"toric_place[{i}]")
            if not isinstance(b, bool):
                _fail(bn, f"toric_place[{i}]", f"expected true or false, got {bn.value!r}")
            toric.append(b)
        toric = tuple(toric)
    else:
        toric = tuple(False for _ in factors)
    return VarietyConfig(data, profile, toric, given)


def load_config(path: str | Path) -> VarietyConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_config(text)
