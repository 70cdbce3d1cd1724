"""Flat-file formats: gamble/measure JSON and CSV, acceptance-set JSON,
and the trajectory CSV stream.

Gamble JSON is {"states": [...], "rewards": {state: number}}; the CSV twin
has header ``state,reward`` and one row per state.  Measures swap
``rewards`` for ``weights`` (``state,weight`` in CSV).  Acceptance sets
are {"states": [...], "generators": [[...], ...]} with generator vectors
in state order.  Emission uses Python's shortest-round-trip float
formatting in both JSON and CSV, so every value representable in double
precision survives a write/read cycle bit for bit.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .core import Gamble, ProbabilityMeasure, StateSpace
from .coherence import AcceptanceSet
from .errors import ParseError
from .utility import UtilitySpec

__all__ = [
    "gamble_from_json",
    "gamble_to_json",
    "gamble_from_csv",
    "gamble_to_csv",
    "measure_from_json",
    "measure_to_json",
    "measure_from_csv",
    "measure_to_csv",
    "gambles_from_batch_csv",
    "acceptance_set_from_json",
    "acceptance_set_to_json",
    "load_gamble",
    "save_gamble",
    "load_measure",
    "load_acceptance_set",
    "paths_to_csv",
]


def _parse_json(text: str, what: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{what}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ParseError(f"{what}: expected a JSON object, got {type(data).__name__}")
    return data


def _parse_states(data: dict, what: str) -> StateSpace:
    states = data.get("states")
    if not isinstance(states, list) or not all(isinstance(s, str) for s in states):
        raise ParseError(f'{what}: "states" must be a list of strings')
    try:
        return StateSpace(tuple(states))
    except ValueError as exc:
        raise ParseError(f"{what}: {exc}") from None


def _parse_vector_object(data: dict, space: StateSpace, key: str, what: str) -> np.ndarray:
    mapping = data.get(key)
    if not isinstance(mapping, dict):
        raise ParseError(f'{what}: "{key}" must be an object mapping state to number')
    missing = [s for s in space.labels if s not in mapping]
    extra = [s for s in mapping if s not in space.labels]
    if missing or extra:
        raise ParseError(f'{what}: "{key}" keys do not match states (missing {missing}, unexpected {extra})')
    values = []
    for label in space.labels:
        v = mapping[label]
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ParseError(f'{what}: "{key}"[{label!r}] must be a number, got {v!r}')
        values.append(float(v))
    return np.asarray(values)


def _check_keys(data: dict, allowed: set[str], what: str) -> None:
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ParseError(f"{what}: unknown keys {unknown}; allowed keys are {sorted(allowed)}")


def gamble_from_json(text: str) -> Gamble:
    data = _parse_json(text, "gamble")
    _check_keys(data, {"states", "rewards"}, "gamble")
    space = _parse_states(data, "gamble")
    try:
        return Gamble(space, _parse_vector_object(data, space, "rewards", "gamble"))
    except ValueError as exc:
        raise ParseError(f"gamble: {exc}") from None


def gamble_to_json(f: Gamble) -> str:
    return json.dumps(
        {"states": list(f.space.labels), "rewards": f.as_mapping()}, indent=2
    )


def measure_from_json(text: str) -> ProbabilityMeasure:
    data = _parse_json(text, "measure")
    _check_keys(data, {"states", "weights"}, "measure")
    space = _parse_states(data, "measure")
    try:
        return ProbabilityMeasure(space, _parse_vector_object(data, space, "weights", "measure"))
    except ValueError as exc:
        raise ParseError(f"measure: {exc}") from None


def measure_to_json(p: ProbabilityMeasure) -> str:
    return json.dumps(
        {"states": list(p.space.labels), "weights": p.as_mapping()}, indent=2
    )


def _rows_from_csv(text: str, header: tuple[str, str], what: str) -> list[tuple[str, float]]:
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if any(cell.strip() for cell in row)]
    if not rows:
        raise ParseError(f"{what}: file is empty")
    got = tuple(cell.strip().lower() for cell in rows[0])
    if got != header:
        raise ParseError(f"{what}: expected header {','.join(header)!r}, got {','.join(rows[0])!r}")
    out: list[tuple[str, float]] = []
    for row_no, row in enumerate(rows[1:], start=2):
        if len(row) != 2:
            raise ParseError(f"{what}: row {row_no} has {len(row)} cells, expected 2")
        label = row[0].strip()
        try:
            value = float(row[1].strip())
        except ValueError:
            raise ParseError(
                f"{what}: row {row_no}: cannot read {row[1].strip()!r} as a number"
            ) from None
        out.append((label, value))
    if not out:
        raise ParseError(f"{what}: no data rows after the header")
    return out


def gamble_from_csv(text: str) -> Gamble:
    rows = _rows_from_csv(text, ("state", "reward"), "gamble")
    try:
        space = StateSpace(tuple(label for label, _ in rows))
        return Gamble(space, np.asarray([value for _, value in rows]))
    except ValueError as exc:
        raise ParseError(f"gamble: {exc}") from None


def gamble_to_csv(f: Gamble) -> str:
    lines = ["state,reward"]
    lines += [f"{label},{float(x)!r}" for label, x in zip(f.space.labels, f.rewards)]
    return "\n".join(lines) + "\n"


def measure_from_csv(text: str) -> ProbabilityMeasure:
    rows = _rows_from_csv(text, ("state", "weight"), "measure")
    try:
        space = StateSpace(tuple(label for label, _ in rows))
        return ProbabilityMeasure(space, np.asarray([value for _, value in rows]))
    except ValueError as exc:
        raise ParseError(f"measure: {exc}") from None


def measure_to_csv(p: ProbabilityMeasure) -> str:
    lines = ["state,weight"]
    lines += [f"{label},{float(w)!r}" for label, w in zip(p.space.labels, p.weights)]
    return "\n".join(lines) + "\n"


def gambles_from_batch_csv(text: str) -> list[tuple[str, Gamble]]:
    """Parse a batch file with header ``id,<state>,...`` one gamble per row."""
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if any(cell.strip() for cell in row)]
    if not rows:
        raise ParseError("batch: file is empty")
    header = [cell.strip() for cell in rows[0]]
    if len(header) < 2 or header[0].lower() != "id":
        raise ParseError(
            "batch: header must be 'id' followed by one column per state, "
            f"got {','.join(rows[0])!r}"
        )
    try:
        space = StateSpace(tuple(header[1:]))
    except ValueError as exc:
        raise ParseError(f"batch: {exc}") from None
    out: list[tuple[str, Gamble]] = []
    for row_no, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ParseError(
                f"batch: row {row_no} has {len(row)} cells, expected {len(header)}"
            )
        name = row[0].strip() or f"row-{row_no}"
        rewards = []
        for label, cell in zip(header[1:], row[1:]):
            try:
                rewards.append(float(cell.strip()))
            except ValueError:
                raise ParseError(
                    f"batch: row {row_no}, column {label}: cannot read "
                    f"{cell.strip()!r} as a number"
                ) from None
        out.append((name, Gamble(space, np.asarray(rewards))))
    if not out:
        raise ParseError("batch: no data rows after the header")
    return out


def acceptance_set_from_json(text: str, utility: UtilitySpec) -> AcceptanceSet:
    data = _parse_json(text, "acceptance set")
    _check_keys(data, {"states", "generators"}, "acceptance set")
    space = _parse_states(data, "acceptance set")
    raw = data.get("generators")
    if not isinstance(raw, list):
        raise ParseError('acceptance set: "generators" must be a list of reward vectors')
    gambles = []
    for i, vec in enumerate(raw):
        if not isinstance(vec, list) or len(vec) != len(space):
            raise ParseError(
                f"acceptance set: generator {i} must be a list of {len(space)} numbers"
            )
        for v in vec:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ParseError(f"acceptance set: generator {i} has a non-number {v!r}")
        try:
            gambles.append(Gamble(space, np.asarray([float(v) for v in vec])))
        except ValueError as exc:
            raise ParseError(f"acceptance set: generator {i}: {exc}") from None
    return AcceptanceSet(space, tuple(gambles), utility)


def acceptance_set_to_json(d: AcceptanceSet) -> str:
    return json.dumps(
        {
            "states": list(d.space.labels),
            "generators": [[float(x) for x in g.rewards] for g in d.generators],
        },
        indent=2,
    )


def _read(path: str | Path, what: str) -> str:
    p = Path(path)
    try:
        return p.read_text()
    except OSError as exc:
        raise ParseError(f"{what}: cannot read {p}: {exc}") from None


def load_gamble(path: str | Path) -> Gamble:
    """Load a gamble from a .json or .csv file, dispatching on suffix."""
    text = _read(path, "gamble")
    if Path(path).suffix.lower() == ".csv":
        return gamble_from_csv(text)
    return gamble_from_json(text)


def save_gamble(f: Gamble, path: str | Path) -> None:
    text = gamble_to_csv(f) if Path(path).suffix.lower() == ".csv" else gamble_to_json(f)
    Path(path).write_text(text)


def load_measure(path: str | Path) -> ProbabilityMeasure:
    text = _read(path, "measure")
    if Path(path).suffix.lower() == ".csv":
        return measure_from_csv(text)
    return measure_from_json(text)


def load_acceptance_set(path: str | Path, utility: UtilitySpec) -> AcceptanceSet:
    return acceptance_set_from_json(_read(path, "acceptance set"), utility)


def paths_to_csv(wealth_paths: np.ndarray) -> str:
    """Long-format trajectory stream: columns trajectory,period,wealth.

    Wealth values use shortest-round-trip formatting, the same formatting
    the plot embeds, so the two artifacts carry bit-identical numbers.
    """
    out = io.StringIO()
    out.write("trajectory,period,wealth\n")
    for k, row in enumerate(wealth_paths):
        for t, w in enumerate(row):
            out.write(f"{k},{t},{float(w)!r}\n")
    return out.getvalue()
