"""CLI configuration: file schema, defaults, and precedence.

A config file is a JSON object with any of the keys ``utility`` (specifier
string), ``seed`` (integer), ``output`` ("json" or "csv"), and
``tolerances`` (an object overriding named tolerances).  Unknown keys at
either level are errors, not warnings: a typo in a tolerance name must not
silently fall back to a default.  Resolution order everywhere is
command-line flag, then config file, then built-in default.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ParseError
from .utility import parse_utility

__all__ = ["CliConfig", "DEFAULT_TOLERANCES", "load_config", "ENV_CONFIG_VAR"]

ENV_CONFIG_VAR = "GAMBLE_CALC_CONFIG"

DEFAULT_TOLERANCES: dict[str, float] = {
    # Mixture worst-value threshold for the partial-loss verdict, and its
    # dual twin for the functional-search margin.
    "partial_loss": 1e-9,
    # Acceptance threshold on evaluated transformed values and premiums.
    "acceptance": 1e-12,
    # Residual ceiling for operator-law audits.
    "law_residual": 1e-9,
    # Feasibility tolerance handed to the LP solver.
    "solver_feasibility": 1e-8,
}

_OUTPUT_FORMATS = ("json", "csv")


@dataclass(frozen=True)
class CliConfig:
    """Resolved defaults a config file contributes to a CLI run."""

    utility: str | None = None
    seed: int | None = None
    output: str | None = None
    tolerances: dict[str, float] = field(default_factory=dict)

    def tolerance(self, name: str) -> float:
        if name not in DEFAULT_TOLERANCES:
            raise KeyError(f"unknown tolerance {name!r}")
        return self.tolerances.get(name, DEFAULT_TOLERANCES[name])


def _parse_config_text(text: str, origin: str) -> CliConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"config {origin}: invalid JSON: {exc.msg} (line {exc.lineno})") from None
    if not isinstance(data, dict):
        raise ParseError(f"config {origin}: expected a JSON object")
    allowed = {"utility", "seed", "output", "tolerances"}
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ParseError(
            f"config {origin}: unknown keys {unknown}; allowed keys are {sorted(allowed)}"
        )
    utility = data.get("utility")
    if utility is not None:
        if not isinstance(utility, str):
            raise ParseError(f'config {origin}: "utility" must be a string')
        parse_utility(utility)  # validate the specifier now, not at first use
    seed = data.get("seed")
    if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int)):
        raise ParseError(f'config {origin}: "seed" must be an integer')
    output = data.get("output")
    if output is not None and output not in _OUTPUT_FORMATS:
        raise ParseError(f'config {origin}: "output" must be one of {_OUTPUT_FORMATS}')
    tolerances: dict[str, float] = {}
    raw_tol = data.get("tolerances", {})
    if not isinstance(raw_tol, dict):
        raise ParseError(f'config {origin}: "tolerances" must be an object')
    for name, value in raw_tol.items():
        if name not in DEFAULT_TOLERANCES:
            raise ParseError(
                f"config {origin}: unknown tolerance {name!r}; "
                f"known names are {sorted(DEFAULT_TOLERANCES)}"
            )
        if isinstance(value, bool) or not isinstance(value, (int, float)) or value < 0:
            raise ParseError(f"config {origin}: tolerance {name!r} must be a nonnegative number")
        tolerances[name] = float(value)
    return CliConfig(utility=utility, seed=seed, output=output, tolerances=tolerances)


def load_config(explicit_path: str | None) -> CliConfig:
    """Load the config file named by ``--config`` or the environment.

    With neither present, returns the empty config (all defaults).
    """
    path = explicit_path or os.environ.get(ENV_CONFIG_VAR)
    if not path:
        return CliConfig()
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"config: cannot read {p}: {exc}") from None
    return _parse_config_text(text, str(p))
