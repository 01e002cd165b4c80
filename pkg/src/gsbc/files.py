"""Loading codes from JSON files and ``builtin:`` references."""
from __future__ import annotations

import json
from pathlib import Path
from urllib.parse import parse_qs

from .codes import (
    ClassicalCode,
    Code,
    GeneralizedCode,
    broken_map,
    builtin_example1,
    builtin_example2,
    example1_partition_slice,
    identity_code,
)
from .cylinder import ExplicitPartition
from .errors import ParseError
from .monoid import Monoid
from .shift_space import FullShift, space_from_json

BUILTINS = ("example1", "example1-slice", "example2", "identity", "broken")


def resolve_builtin(ref: str, black_box: bool = False) -> Code:
    """``builtin:example1``, ``builtin:example2?blocks=[[0,1],[2]]``,
    ``builtin:example1-slice?max_index=2&max_symbol=2``, ``builtin:identity``
    or ``builtin:broken``.

    With ``black_box`` the self-indexing example is returned as its raw
    formula rather than its prober.
    """
    body = ref[len("builtin:"):] if ref.startswith("builtin:") else ref
    name, _, query = body.partition("?")
    params = {k: v[-1] for k, v in parse_qs(query).items()}
    monoid = Monoid.parse(params.get("monoid", "N"))
    if name == "example1":
        code, formula = builtin_example1(monoid)
        return formula if black_box else code
    if name == "example2":
        try:
            blocks = json.loads(params.get("blocks", "[[0,1]]"))
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad blocks parameter in {ref!r}") from exc
        return builtin_example2(blocks, monoid)
    if name == "example1-slice":
        P = example1_partition_slice(int(params.get("max_index", 2)), int(params.get("max_symbol", 2)))
        return GeneralizedCode(P, name="example1-slice")
    if name == "identity":
        return identity_code(monoid)
    if name == "broken":
        return broken_map(monoid)
    raise ParseError(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}")


def code_from_json(obj, name: str = "code") -> Code:
    if not isinstance(obj, dict):
        raise ParseError("code JSON must be an object")
    kind = obj.get("type")
    if kind == "classical":
        try:
            monoid = Monoid.parse(obj.get("monoid", "N"))
            space = space_from_json(obj["space"]) if "space" in obj else FullShift()
            table = {tuple(e["pattern"]): int(e["output"]) for e in obj["rule"]}
            nb = tuple(obj["neighborhood"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad classical code JSON: {exc}") from exc
        if sorted(nb) != list(nb) or len(set(nb)) != len(nb):
            raise ParseError("neighborhood must be strictly ascending")
        if any(len(k) != len(nb) for k in table):
            raise ParseError("rule patterns must match the neighborhood length")
        return ClassicalCode(nb, table, space, monoid, name=name)
    if kind == "generalized":
        return GeneralizedCode(ExplicitPartition.from_json(obj.get("partition")), name=name)
    if obj.get("version") == 1 and "entries" in obj:
        # a bare partition file
        return GeneralizedCode(ExplicitPartition.from_json(obj), name=name)
    raise ParseError(f"unknown code type {kind!r}")


def code_to_json(code: Code) -> dict:
    if isinstance(code, ClassicalCode) and code.is_table:
        return {
            "type": "classical",
            "monoid": code.monoid.value,
            "space": code.space.to_json(),
            "neighborhood": list(code.neighborhood),
            "rule": [{"pattern": list(k), "output": v} for k, v in sorted(code.rule.items())],
        }
    if isinstance(code, GeneralizedCode) and isinstance(code.partition, ExplicitPartition):
        return {"type": "generalized", "partition": code.partition.to_json()}
    raise ParseError(f"{code.name} has no JSON form")


def load_code(ref: str, black_box: bool = False) -> Code:
    if ref.startswith("builtin:"):
        return resolve_builtin(ref, black_box)
    path = Path(ref)
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot read {ref}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{ref} is not valid JSON: {exc}") from exc
    return code_from_json(obj, name=path.stem)


def load_partition(ref: str) -> ExplicitPartition:
    code = load_code(ref)
    if not isinstance(code, GeneralizedCode) or not isinstance(code.partition, ExplicitPartition):
        raise ParseError(f"{ref} does not describe an explicit partition")
    return code.partition
