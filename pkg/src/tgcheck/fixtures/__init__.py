"""Golden diagrams shipped with the package."""

from __future__ import annotations

from importlib import resources

from ..diagram import Diagram, parse_diagram


def names() -> list[str]:
    root = resources.files(__name__)
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".skd"))


def path(name: str):
    return resources.files(__name__) / f"{name}.skd"


def load(name: str) -> Diagram:
    return parse_diagram(path(name).read_text())
