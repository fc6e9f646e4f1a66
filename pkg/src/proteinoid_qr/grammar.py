"""Digit-pair language for gate sequences.

A message is written as consecutive two-digit units.  Each unit's alphabet
tells its role: ``{3,5,7}`` digits name a proteinoid, ``{2,4,6}`` digits a
gate, and ``01``/``10``/``11`` a light condition.  Three layouts exist:

``by_light``
    ``P G G ... P G G ...``: proteinoid leaders, each followed by its gates.
``by_proteinoid``
    ``L G G ... L G G ...``: light leaders, each followed by its gates.
``by_gate``
    ``L P L P ...``: (light, proteinoid) pairs that exhibit the gate.

The subject of a message (the light, proteinoid or gate it is grouped by) is
never written into the digits; it travels alongside them as a label.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from .errors import GrammarError
from .signal_model import (
    GATE_DIGITS,
    LIGHT_CODES,
    PROTEINOID_DIGITS,
    GateKind,
    LightCondition,
    Proteinoid,
    proteinoid_from_code,
)

#: Block order for lights, as used when grouping data into messages.
LIGHT_ORDER = (
    LightCondition.WHITE_AND_BLACK,
    LightCondition.BLACK_AND_WHITE,
    LightCondition.BLACK_AND_BLACK_WHITE,
)


class Schema(str, enum.Enum):
    BY_LIGHT = "by_light"
    BY_PROTEINOID = "by_proteinoid"
    BY_GATE = "by_gate"


class UnitKind(enum.Enum):
    LIGHT = "light"
    PROTEINOID = "proteinoid"
    GATE = "gate"


def unit_kind(unit: str) -> UnitKind | None:
    """Alphabet of a two-digit unit, or None when it belongs to none."""
    if unit in LIGHT_CODES:
        return UnitKind.LIGHT
    if len(unit) == 2 and set(unit) <= PROTEINOID_DIGITS:
        return UnitKind.PROTEINOID
    if len(unit) == 2 and set(unit) <= GATE_DIGITS:
        return UnitKind.GATE
    return None


@dataclass(frozen=True)
class ProteinoidBlock:
    proteinoid: Proteinoid
    gates: tuple[GateKind, ...]


@dataclass(frozen=True)
class LightBlock:
    light: LightCondition
    gates: tuple[GateKind, ...]


@dataclass(frozen=True)
class Occurrence:
    light: LightCondition
    proteinoid: Proteinoid


@dataclass(frozen=True)
class ByLight:
    light: LightCondition | None
    blocks: tuple[ProteinoidBlock, ...]
    schema = Schema.BY_LIGHT

    @property
    def subject(self):
        return self.light


@dataclass(frozen=True)
class ByProteinoid:
    proteinoid: Proteinoid | None
    blocks: tuple[LightBlock, ...]
    schema = Schema.BY_PROTEINOID

    @property
    def subject(self):
        return self.proteinoid


@dataclass(frozen=True)
class ByGate:
    gate: GateKind | None
    blocks: tuple[Occurrence, ...]
    schema = Schema.BY_GATE

    @property
    def subject(self):
        return self.gate


Message = Union[ByLight, ByProteinoid, ByGate]


def serialize(message: Message) -> str:
    if not message.blocks:
        raise GrammarError("empty message")
    parts: list[str] = []
    if isinstance(message, ByGate):
        for occ in message.blocks:
            parts += [occ.light.code, occ.proteinoid.code]
        return "".join(parts)
    for block in message.blocks:
        if not block.gates:
            raise GrammarError("empty gates in block")
        leader = block.proteinoid if isinstance(message, ByLight) else block.light
        parts.append(leader.code)
        parts.extend(g.code for g in block.gates)
    return "".join(parts)


_WS = re.compile(r"\s+")


def _units(digits: str) -> list[tuple[int, str, UnitKind]]:
    if not digits:
        raise GrammarError("empty input")
    if not digits.isascii() or not digits.isdigit():
        raise GrammarError("non-digit character")
    if len(digits) % 2:
        raise GrammarError("odd digit count")
    out = []
    for pos in range(0, len(digits), 2):
        unit = digits[pos : pos + 2]
        kind = unit_kind(unit)
        if kind is None:
            raise GrammarError(f"illegal unit at position {pos}: {unit!r}")
        out.append((pos, unit, kind))
    return out


def _gate(pos: int, unit: str) -> GateKind:
    try:
        return GateKind(unit)
    except ValueError:
        raise GrammarError(f"unknown gate code at position {pos}: {unit!r}") from None


def infer_schema(digits: str) -> Schema:
    units = _units(_WS.sub("", digits))
    first = units[0][2]
    if first is UnitKind.PROTEINOID:
        return Schema.BY_LIGHT
    if first is UnitKind.LIGHT and len(units) > 1:
        second = units[1][2]
        if second is UnitKind.GATE:
            return Schema.BY_PROTEINOID
        if second is UnitKind.PROTEINOID:
            return Schema.BY_GATE
    raise GrammarError("cannot infer schema")


def parse(digits: str, schema: Schema | str | None = None, subject=None) -> Message:
    """Parse a digit string; whitespace (line wrapping) is ignored.

    ``subject`` labels the result and is not checked against the digits.
    """
    digits = _WS.sub("", digits)
    units = _units(digits)
    schema = infer_schema(digits) if schema is None else Schema(schema)

    if schema is Schema.BY_GATE:
        if len(units) % 2:
            raise GrammarError("unpaired light at end of by_gate string")
        pairs = []
        for (p1, u1, k1), (p2, u2, k2) in zip(units[::2], units[1::2]):
            if k1 is not UnitKind.LIGHT:
                raise GrammarError(f"schema violation at position {p1}: expected light")
            if k2 is not UnitKind.PROTEINOID:
                raise GrammarError(f"schema violation at position {p2}: expected proteinoid")
            pairs.append(Occurrence(LightCondition(u1), proteinoid_from_code(u2)))
        return ByGate(subject, tuple(pairs))

    leader_kind = UnitKind.PROTEINOID if schema is Schema.BY_LIGHT else UnitKind.LIGHT
    blocks: list[tuple[str, list[GateKind]]] = []
    for pos, unit, kind in units:
        if kind is UnitKind.GATE:
            if not blocks:
                raise GrammarError("dangling gates")
            blocks[-1][1].append(_gate(pos, unit))
        elif kind is leader_kind:
            if blocks and not blocks[-1][1]:
                raise GrammarError("empty gates in block")
            blocks.append((unit, []))
        else:
            raise GrammarError(f"schema violation at position {pos}: unexpected {kind.value} unit")
    if not blocks[-1][1]:
        raise GrammarError("empty gates in block")

    if schema is Schema.BY_LIGHT:
        return ByLight(
            subject, tuple(ProteinoidBlock(proteinoid_from_code(u), tuple(g)) for u, g in blocks)
        )
    return ByProteinoid(subject, tuple(LightBlock(LightCondition(u), tuple(g)) for u, g in blocks))


AnalysisMap = Mapping[tuple[LightCondition, Proteinoid], Sequence[GateKind]]


def _light_rank(light: LightCondition) -> int:
    return LIGHT_ORDER.index(light)


def message_from_analysis(analyses: AnalysisMap, schema: Schema | str, subject) -> Message:
    """Group per-condition gate sequences into one message about ``subject``.

    Proteinoid blocks are ordered by ascending code and light blocks 10, 11, 01,
    so insertion order of ``analyses`` never affects the result.
    """
    schema = Schema(schema)
    if not analyses:
        raise GrammarError("no data")
    if schema is Schema.BY_LIGHT:
        rows = sorted(
            ((p, tuple(g)) for (light, p), g in analyses.items() if light == subject),
            key=lambda r: r[0].code,
        )
        blocks = tuple(ProteinoidBlock(p, g) for p, g in rows)
        msg: Message = ByLight(subject, blocks)
    elif schema is Schema.BY_PROTEINOID:
        rows = sorted(
            ((light, tuple(g)) for (light, p), g in analyses.items() if p == subject),
            key=lambda r: _light_rank(r[0]),
        )
        msg = ByProteinoid(subject, tuple(LightBlock(light, g) for light, g in rows))
    else:
        keys = sorted(
            (key for key, g in analyses.items() if subject in tuple(g)),
            key=lambda k: (_light_rank(k[0]), k[1].code),
        )
        msg = ByGate(subject, tuple(Occurrence(light, p) for light, p in keys))
    if not msg.blocks:
        raise GrammarError("no data for subject")
    if schema is not Schema.BY_GATE and any(not b.gates for b in msg.blocks):
        raise GrammarError("empty gates in block")
    return msg


# -- JSON --------------------------------------------------------------------


def subject_code(message: Message) -> str | None:
    return None if message.subject is None else message.subject.code


def parse_subject(schema: Schema | str, code: str | None):
    """Turn a subject code into the label type the schema expects."""
    if code is None:
        return None
    schema = Schema(schema)
    try:
        if schema is Schema.BY_LIGHT:
            return LightCondition(code)
        if schema is Schema.BY_PROTEINOID:
            if unit_kind(code) is not UnitKind.PROTEINOID:
                raise ValueError(code)
            return proteinoid_from_code(code)
        return GateKind(code)
    except ValueError:
        raise GrammarError(f"invalid subject {code!r} for {schema.value}") from None


def message_to_json(message: Message) -> dict:
    if isinstance(message, ByLight):
        blocks = [{"proteinoid": b.proteinoid.code, "gates": [g.code for g in b.gates]} for b in message.blocks]
    elif isinstance(message, ByProteinoid):
        blocks = [{"light": b.light.code, "gates": [g.code for g in b.gates]} for b in message.blocks]
    else:
        blocks = [{"light": b.light.code, "proteinoid": b.proteinoid.code} for b in message.blocks]
    return {"schema": message.schema.value, "subject": subject_code(message), "blocks": blocks}


def message_from_json(obj: Mapping) -> Message:
    try:
        schema = Schema(obj["schema"])
        subject = parse_subject(schema, obj.get("subject"))
        raw_blocks = obj["blocks"]
        if schema is Schema.BY_LIGHT:
            blocks = tuple(
                ProteinoidBlock(_json_proteinoid(b["proteinoid"]), tuple(GateKind(g) for g in b["gates"]))
                for b in raw_blocks
            )
            return ByLight(subject, blocks)
        if schema is Schema.BY_PROTEINOID:
            blocks = tuple(
                LightBlock(LightCondition(b["light"]), tuple(GateKind(g) for g in b["gates"]))
                for b in raw_blocks
            )
            return ByProteinoid(subject, blocks)
        return ByGate(
            subject,
            tuple(Occurrence(LightCondition(b["light"]), _json_proteinoid(b["proteinoid"])) for b in raw_blocks),
        )
    except GrammarError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise GrammarError(f"malformed message JSON: {exc}") from None


def _json_proteinoid(code: str) -> Proteinoid:
    if unit_kind(code) is not UnitKind.PROTEINOID:
        raise GrammarError(f"not a proteinoid code: {code!r}")
    return proteinoid_from_code(code)
