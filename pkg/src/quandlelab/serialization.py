"""JSON round-trips and the text specifiers accepted by the command line.

Object schemas (all indices 0-based):

* quandle   ``{"n": 3, "table": [[0,0,0],[2,1,1],[1,2,2]]}``
* group     ``{"n": 2, "mul": [[0,1],[1,0]], "identity": 0}``
* topology  ``{"n": 3, "opens": [[], [0], [0,1,2]]}``
* pair      ``{"quandle": ..., "topology": ...}``
* certificate ``{"case": "RationalBetween", "t1": "1/3", "t2": "1/2",
                 "m": 1, "n": 2, "surface": "line"}``

Specifiers are either a path to a JSON file in the matching schema or a
builtin name: quandles ``trivial:N``, ``dihedral:N``, ``alexander:N:T``;
topologies ``chain:N``, ``discrete:N``, ``indiscrete:N``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional, Union

from .affine import NonIsoCertificate
from .coloring import BraidWord, braid_text, parse_braid
from .errors import InputError
from .groups import GroupTable
from .quandles import (FiniteQuandle, alexander_mod, dihedral_quandle,
                       trivial_quandle)
from .topology import (FiniteSpace, TopQuandle, chain_topology,
                       discrete_topology, indiscrete_topology)

__all__ = [
    "quandle_to_obj", "quandle_from_obj", "group_to_obj", "group_from_obj",
    "topology_to_obj", "topology_from_obj", "pair_to_obj", "pair_from_obj",
    "certificate_to_obj", "certificate_from_obj", "fraction_str",
    "parse_fraction", "load_quandle", "load_topology", "load_json",
    "BraidWord", "parse_braid", "braid_text",
]


def load_json(path: Union[str, Path]) -> Any:
    p = Path(path)
    if not p.is_file():
        raise InputError(f"no such file: {p}")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {p}: {exc}") from exc


def _require(obj: Any, keys: set, what: str) -> None:
    if not isinstance(obj, dict) or not keys <= set(obj):
        raise InputError(f"{what} object needs keys {sorted(keys)}")


# ---------------------------------------------------------------------------
# core objects
# ---------------------------------------------------------------------------

def quandle_to_obj(q: FiniteQuandle) -> Dict[str, Any]:
    return {"n": q.n, "table": [list(row) for row in q.table]}


def quandle_from_obj(obj: Any) -> FiniteQuandle:
    _require(obj, {"n", "table"}, "quandle")
    table = obj["table"]
    if not isinstance(table, list) or len(table) != obj["n"]:
        raise InputError("quandle table size does not match n")
    return FiniteQuandle.from_rows(table)


def group_to_obj(g: GroupTable) -> Dict[str, Any]:
    return {"n": g.n, "mul": [list(row) for row in g.mul],
            "identity": g.identity}


def group_from_obj(obj: Any) -> GroupTable:
    _require(obj, {"n", "mul"}, "group")
    mul = obj["mul"]
    if not isinstance(mul, list) or len(mul) != obj["n"]:
        raise InputError("group table size does not match n")
    if "identity" in obj:
        return GroupTable(tuple(tuple(row) for row in mul), obj["identity"])
    return GroupTable.from_mul(mul)


def topology_to_obj(s: FiniteSpace) -> Dict[str, Any]:
    return {"n": s.n, "opens": [list(u) for u in s.open_sets()]}


def topology_from_obj(obj: Any) -> FiniteSpace:
    _require(obj, {"n", "opens"}, "topology")
    if not isinstance(obj["opens"], list):
        raise InputError("topology opens must be a list of member lists")
    return FiniteSpace.from_opens(obj["n"], obj["opens"])


def pair_to_obj(t: TopQuandle) -> Dict[str, Any]:
    return {"quandle": quandle_to_obj(t.quandle),
            "topology": topology_to_obj(t.space)}


def pair_from_obj(obj: Any) -> TopQuandle:
    _require(obj, {"quandle", "topology"}, "quandle-with-topology")
    return TopQuandle(quandle_from_obj(obj["quandle"]),
                      topology_from_obj(obj["topology"]))


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

def fraction_str(q: Fraction) -> str:
    return str(q)


def parse_fraction(text: Any) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse rational {text!r}") from exc


def certificate_to_obj(cert: NonIsoCertificate) -> Dict[str, Any]:
    return {"case": cert.case, "t1": fraction_str(cert.t1),
            "t2": fraction_str(cert.t2), "m": cert.m, "n": cert.n,
            "surface": cert.surface}


def certificate_from_obj(obj: Any) -> NonIsoCertificate:
    _require(obj, {"case", "t1", "t2"}, "certificate")
    m = obj.get("m")
    n = obj.get("n")
    if m is not None and not isinstance(m, int):
        raise InputError("certificate m must be an integer")
    if n is not None and not isinstance(n, int):
        raise InputError("certificate n must be an integer")
    return NonIsoCertificate(str(obj["case"]), parse_fraction(obj["t1"]),
                             parse_fraction(obj["t2"]), m, n,
                             str(obj.get("surface", "line")))


# ---------------------------------------------------------------------------
# specifiers
# ---------------------------------------------------------------------------

_BUILTIN_NAMES = {"trivial", "dihedral", "alexander",
                  "chain", "discrete", "indiscrete"}


def _builtin_parts(spec: str) -> Optional[list[str]]:
    parts = spec.split(":")
    if len(parts) < 2 or parts[0] not in _BUILTIN_NAMES:
        return None
    for p in parts[1:]:
        if not p.lstrip("-").isdigit():
            raise InputError(f"bad builtin parameter {p!r} in {spec!r}")
    return parts


def load_quandle(spec: str) -> FiniteQuandle:
    """A quandle from ``trivial:N`` / ``dihedral:N`` / ``alexander:N:T``
    or from a JSON file path."""
    parts = _builtin_parts(spec)
    if parts:
        name, args = parts[0], [int(p) for p in parts[1:]]
        if name == "trivial" and len(args) == 1:
            return trivial_quandle(args[0])
        if name == "dihedral" and len(args) == 1:
            return dihedral_quandle(args[0])
        if name == "alexander" and len(args) == 2:
            return alexander_mod(args[0], args[1])
        raise InputError(f"unknown builtin quandle {spec!r}")
    return quandle_from_obj(load_json(spec))


def load_topology(spec: str) -> FiniteSpace:
    """A topology from ``chain:N`` / ``discrete:N`` / ``indiscrete:N``
    or from a JSON file path."""
    parts = _builtin_parts(spec)
    if parts:
        name, args = parts[0], [int(p) for p in parts[1:]]
        if name == "chain" and len(args) == 1:
            return chain_topology(args[0])
        if name == "discrete" and len(args) == 1:
            return discrete_topology(args[0])
        if name == "indiscrete" and len(args) == 1:
            return indiscrete_topology(args[0])
        raise InputError(f"unknown builtin topology {spec!r}")
    return topology_from_obj(load_json(spec))
