"""Bundled example diagrams, presentations and representations."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import List

from .groups import GroupPresentation
from .pd import PDCode, parse_pd


def _root():
    return resources.files("twistnorm") / "data"


def names() -> List[str]:
    return sorted(p.name for p in _root().iterdir() if p.suffix in (".pd", ".json"))


def path(name: str) -> Path:
    p = _root() / name
    if not p.is_file():
        raise FileNotFoundError(f"no fixture named {name!r}")
    return Path(str(p))


def read(name: str) -> str:
    return path(name).read_text()


def load_pd(name: str) -> PDCode:
    if not name.endswith(".pd"):
        name += ".pd"
    return parse_pd(read(name))


def load_presentation(name: str) -> GroupPresentation:
    if not name.endswith(".json"):
        name += ".json"
    return GroupPresentation.from_json(json.loads(read(name)))


def load_json(name: str) -> dict:
    return json.loads(read(name))
