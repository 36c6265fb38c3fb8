"""Reading matrices and potentials, and building deterministic JSON reports."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import InputError
from .extreal import ExtReal, parse, render, render_fraction
from .profunctor import (
    COPRESHEAF,
    PRESHEAF,
    NucleusPoint,
    Potential,
    Profunctor,
)


class InputFileError(InputError):
    """Malformed input, located by file and line."""

    def __init__(self, path, line: int | None, message: str):
        self.path, self.line = str(path), line
        where = f"{path}:{line}" if line is not None else str(path)
        super().__init__(f"{where}: {message}")


def _line_of(text: str, needle: str) -> int | None:
    for k, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return k
    return None


def _load(path) -> tuple[object, str]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputFileError(path, None, f"cannot read: {exc.strerror}") from exc
    try:
        return json.loads(text), text
    except json.JSONDecodeError as exc:
        raise InputFileError(path, exc.lineno, exc.msg) from exc


def _value(raw, path, text) -> ExtReal:
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        # floats are refused: write decimals as strings
        raise InputFileError(path, _line_of(text, json.dumps(raw)),
                             f"entry {raw!r} must be a string or an integer")
    try:
        return parse(str(raw))
    except (InputError, ValueError) as exc:
        raise InputFileError(path, _line_of(text, json.dumps(raw)), str(exc)) from exc


def profunctor_from_data(data, path="<data>", text="") -> Profunctor:
    if not isinstance(data, dict) or "entries" not in data:
        raise InputFileError(path, 1, "expected an object with 'entries'")
    entries = data["entries"]
    if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
        raise InputFileError(path, _line_of(text, '"entries"'), "'entries' must be a list of lists")
    values = [[_value(x, path, text) for x in row] for row in entries]
    try:
        return Profunctor.from_rows(values, data.get("rows"), data.get("cols"))
    except InputError as exc:
        raise InputFileError(path, _line_of(text, '"entries"'), str(exc)) from exc


def read_profunctor(path) -> Profunctor:
    data, text = _load(path)
    return profunctor_from_data(data, path, text)


def _potential(M: Profunctor, data, side: str | None, path, text) -> Potential:
    if not isinstance(data, dict):
        raise InputFileError(path, 1, "expected an object")
    side = data.get("side", side)
    if side not in (PRESHEAF, COPRESHEAF):
        raise InputFileError(path, _line_of(text, '"side"'),
                             f"side must be {PRESHEAF!r} or {COPRESHEAF!r}")
    values = data.get("values")
    labels = M.labels(side)
    if isinstance(values, list):
        if len(values) != len(labels):
            raise InputFileError(path, _line_of(text, '"values"'),
                                 f"expected {len(labels)} values, got {len(values)}")
        values = dict(zip(labels, values))
    if not isinstance(values, dict):
        raise InputFileError(path, _line_of(text, '"values"'), "'values' must be an object")
    missing = [x for x in labels if x not in values]
    extra = [x for x in values if x not in labels]
    if missing or extra:
        line = _line_of(text, f'"{extra[0]}"') if extra else _line_of(text, '"values"')
        raise InputFileError(path, line, f"labels do not match {side}: missing {missing}, unknown {extra}")
    return Potential.on(M, side, [_value(values[x], path, text) for x in labels])


def read_potential(M: Profunctor, path) -> Potential:
    data, text = _load(path)
    return _potential(M, data, None, path, text)


def read_point(M: Profunctor, path) -> NucleusPoint:
    data, text = _load(path)
    if not isinstance(data, dict) or "f" not in data or "g" not in data:
        raise InputFileError(path, 1, "expected an object with 'f' and 'g'")
    f = _potential(M, {"values": data["f"]}, PRESHEAF, path, text)
    g = _potential(M, {"values": data["g"]}, COPRESHEAF, path, text)
    try:
        return NucleusPoint(M, f, g)
    except InputError as exc:
        raise InputFileError(path, None, str(exc)) from exc


def dump(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# converters to plain JSON values

def ext_str(x) -> str:
    return render(x) if isinstance(x, ExtReal) else render_fraction(x)


def potential_json(p: Potential) -> dict:
    return {"side": p.side, "values": {k: render(v) for k, v in zip(p.labels, p.values)}}


def point_json(p: NucleusPoint) -> dict:
    return {"f": potential_json(p.f)["values"], "g": potential_json(p.g)["values"]}


def profunctor_json(M: Profunctor) -> dict:
    return {"rows": list(M.rows), "cols": list(M.cols),
            "entries": [[render(x) for x in row] for row in M.entries]}


def pairs_json(M: Profunctor, pairs) -> list[list[str]]:
    ri = {c: i for i, c in enumerate(M.rows)}
    ci = {d: j for j, d in enumerate(M.cols)}
    return [list(p) for p in sorted(pairs, key=lambda p: (ri[p[0]], ci[p[1]]))]
