"""Small example DAGs and set systems shipped with the package."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from ..documents import load

DAGS = {
    "T3": "T3.txt",
    "S1": "S1.txt",
    "GT": "GT.txt",
    "G1": "G1.txt",
    "B3": "B3.json",
    "H4": "H4.json",
}
SYSTEMS = {
    "C4": "C4.json",
    "Cg": "Cg.json",
    "P3": "P3.json",
}
GOLDEN = {"B3_simplify_dot": "B3_simplify.dot"}


def fixture_path(filename: str) -> Path:
    return Path(str(resources.files(__name__).joinpath(filename)))


def load_fixture(name: str):
    if name in DAGS:
        return load(fixture_path(DAGS[name]), "dag")
    if name in SYSTEMS:
        return load(fixture_path(SYSTEMS[name]), "system")
    raise KeyError(f"no fixture named {name!r}")


def golden(name: str) -> str:
    return fixture_path(GOLDEN[name]).read_text()
