"""JSON input parsing and serialization helpers.

Matroid input documents look like

    {"name": "k4", "type": "graphic", "vertices": 4, "edges": [[0,1], ...]}

with one payload shape per type; see ``load_matroid``.  All malformed
input is reported as InputError so the command line can exit with the
dedicated input-error status instead of a traceback.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from . import linalg
from .fan import MinkowskiWeight
from .intersect import PairingTerm
from .matroid import (
    BasesMatroid,
    FreeMatroid,
    GraphicMatroid,
    LinearMatroid,
    Matroid,
    RankTableMatroid,
    UniformMatroid,
    validate_rank_table,
)

MATROID_TYPES = ("uniform", "free", "graphic", "linear", "bases", "rank_table")

_GF_RE = re.compile(r"^GF\((\d+)\)$")


class InputError(Exception):
    """Malformed or invalid input document."""


def _require(data: dict, key: str, kind) -> Any:
    if key not in data:
        raise InputError(f"missing required field {key!r}")
    value = data[key]
    if kind is int:
        # bool is an int subclass; a true/false rank would be nonsense
        if not isinstance(value, int) or isinstance(value, bool):
            raise InputError(f"field {key!r} must be an integer")
    elif not isinstance(value, kind):
        raise InputError(f"field {key!r} must be {kind.__name__}")
    return value


def _int_list(data: dict, key: str) -> list[int]:
    raw = _require(data, key, list)
    out = []
    for x in raw:
        if not isinstance(x, int) or isinstance(x, bool):
            raise InputError(f"field {key!r} must contain only integers")
        out.append(x)
    return out


def _parse_entry(value, field: int | None):
    if isinstance(value, bool):
        raise InputError("matrix entries must be numbers")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and field is None:
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational entry {value!r}: {exc}") from None
    raise InputError(f"bad matrix entry {value!r}")


def load_matroid(data: Any) -> Matroid:
    """Build a matroid from a parsed JSON document.

    Rank-table inputs are checked against the rank axioms before use and
    rejected with the witnessing subset(s) on failure.
    """
    if not isinstance(data, dict):
        raise InputError("matroid document must be a JSON object")
    kind = _require(data, "type", str)
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise InputError("field 'name' must be a string")
    try:
        if kind == "uniform":
            return UniformMatroid(_require(data, "rank", int),
                                  _require(data, "size", int), name)
        if kind == "free":
            return FreeMatroid(_require(data, "size", int), name)
        if kind == "graphic":
            vertices = _require(data, "vertices", int)
            raw_edges = _require(data, "edges", list)
            edges = []
            for e in raw_edges:
                if not isinstance(e, list) or len(e) != 2:
                    raise InputError(f"edge {e!r} is not a pair")
                edges.append((e[0], e[1]))
            return GraphicMatroid(vertices, edges, name)
        if kind == "linear":
            label = _require(data, "field", str)
            if label == "Q":
                field = None
            else:
                m = _GF_RE.match(label)
                if not m:
                    raise InputError(f"unknown field {label!r}; use \"Q\" or \"GF(p)\"")
                field = int(m.group(1))
                if not linalg.is_prime(field):
                    raise InputError(f"GF({field}) needs a prime modulus")
            matrix = _require(data, "matrix", list)
            if not all(isinstance(row, list) for row in matrix):
                raise InputError("field 'matrix' must be a list of rows")
            parsed = [[_parse_entry(x, field) for x in row] for row in matrix]
            return LinearMatroid(parsed, field, name)
        if kind == "bases":
            return BasesMatroid(_require(data, "n", int),
                                _int_list(data, "bases"), name)
        if kind == "rank_table":
            size = _require(data, "n", int)
            ranks = _int_list(data, "ranks")
            witness = validate_rank_table(size, ranks)
            if witness is not None:
                raise InputError(f"rank table violates the rank axioms: {witness}")
            return RankTableMatroid(size, ranks, name)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    raise InputError(f"unknown matroid type {kind!r}; expected one of {MATROID_TYPES}")


def load_matroid_file(path: str) -> Matroid:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    return load_matroid(data)


# -- serialization --------------------------------------------------------


def fan_to_json(weight: MinkowskiWeight) -> dict:
    """Weight as a stable JSON document; cones sorted by flag."""
    return {
        "n": weight.n,
        "codim": weight.codim,
        "cones": [
            {"flag": list(flag), "weight": value}
            for flag, value in sorted(weight.items())
        ],
    }


def fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def pairing_term_to_json(term: PairingTerm) -> dict:
    return {
        "sigma": list(term.sigma),
        "tau": list(term.tau),
        "point": [fraction_str(c) for c in term.point],
        "index": term.index,
    }


def dump_json(data: Any) -> str:
    """Stable human-readable rendering; key order is insertion order."""
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
