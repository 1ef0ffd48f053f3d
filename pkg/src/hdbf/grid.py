"""Simulation grids: the JSON schema shared by bundled presets and user configs.

Schema::

    {
      "name": "table1-quick",
      "table": "size" | "power" | "df",
      "description": "free text",
      "defaults": {<SimConfig field>: value, ...},
      "grid": {"model": [1, 2, 3], "p": [...], "n": [[n1, n2], ...], "rho2": [...]},
      "delta": [{"p": 50, "n": [30, 50], "delta": 1.5}, ...],
      "cells": [{<SimConfig field>: value, ...}, ...]
    }

``grid`` is expanded as a Cartesian product in the key order model, p, n,
rho2 (any other SimConfig field may also be listed and is expanded after
those). ``delta`` optionally assigns a shift per (p, n). ``cells`` appends
explicit cells. Each cell receives ``seed = defaults.seed + index`` unless
the cell sets its own seed.
"""
import itertools
import json
from dataclasses import dataclass, fields
from importlib import resources
from pathlib import Path

from .errors import ConfigError, ParseError
from .simulation import SimConfig

__all__ = ["GridSpec", "TABLE_KINDS", "list_presets", "load_preset", "load_grid", "grid_from_dict"]

TABLE_KINDS = ("size", "power", "df")
_FIELDS = {f.name for f in fields(SimConfig)}
_ORDER = ("model", "p", "n", "rho2")


@dataclass(frozen=True)
class GridSpec:
    name: str
    table: str
    cells: tuple
    description: str = ""
    out: str | None = None

    def __post_init__(self):
        if self.table not in TABLE_KINDS:
            raise ConfigError(f"table must be one of {TABLE_KINDS}, got {self.table!r}")
        if not self.cells:
            raise ConfigError(f"grid {self.name!r} has no cells")

    def with_reps(self, n_reps):
        return GridSpec(self.name, self.table, tuple(c.with_(n_reps=n_reps) for c in self.cells),
                        self.description, self.out)

    def with_seed(self, seed):
        return GridSpec(self.name, self.table,
                        tuple(c.with_(seed=seed + i) for i, c in enumerate(self.cells)),
                        self.description, self.out)


def _cell_kwargs(raw, where):
    out = {}
    for key, value in raw.items():
        if key == "n":
            try:
                out["n1"], out["n2"] = (int(v) for v in value)
            except (TypeError, ValueError):
                raise ConfigError(f"{where}: 'n' must be a pair [n1, n2], got {value!r}") from None
        elif key in _FIELDS:
            out[key] = value
        else:
            raise ConfigError(f"{where}: unknown field {key!r}")
    return out


def grid_from_dict(doc, out=None):
    if not isinstance(doc, dict):
        raise ConfigError("grid config must be a JSON object")
    defaults = _cell_kwargs(doc.get("defaults", {}), "defaults")
    base_seed = int(defaults.pop("seed", 0))
    grid = doc.get("grid", {})
    keys = [k for k in _ORDER if k in grid] + [k for k in grid if k not in _ORDER]
    raw_cells = []
    if keys:
        for combo in itertools.product(*(grid[k] for k in keys)):
            raw_cells.append(dict(zip(keys, combo)))
    raw_cells.extend(doc.get("cells", []))

    deltas = {}
    for entry in doc.get("delta", []):
        deltas[(int(entry["p"]), tuple(int(v) for v in entry["n"]))] = float(entry["delta"])

    cells = []
    for i, raw in enumerate(raw_cells):
        kw = dict(defaults)
        kw.update(_cell_kwargs(raw, f"cell {i}"))
        key = (int(kw.get("p", 50)), (int(kw.get("n1", 30)), int(kw.get("n2", 50))))
        if "delta" not in raw and key in deltas:
            kw["delta"] = deltas[key]
        kw.setdefault("seed", base_seed + i)
        cells.append(SimConfig(**kw))
    return GridSpec(name=str(doc.get("name", "custom")), table=str(doc.get("table", "size")),
                    cells=tuple(cells), description=str(doc.get("description", "")), out=out)


def load_grid(path, out=None):
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", line=exc.lineno) from None
    return grid_from_dict(doc, out=out)


def list_presets():
    root = resources.files("hdbf") / "presets"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_preset(name, out=None):
    if name not in list_presets():
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(list_presets())}")
    text = (resources.files("hdbf") / "presets" / f"{name}.json").read_text(encoding="utf-8")
    return grid_from_dict(json.loads(text), out=out)
