"""The appendix tables, shipped as CSV next to the package."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources
from typing import Optional

GOLD_FILES = {"gamma0": "gamma0.csv", "gamma1": "gamma1.csv",
              "gamma": "gamma.csv", "split": "split.csv"}
GOLD_RANGES = {"gamma0": 120, "gamma1": 100, "gamma": 60, "split": 100}


@dataclass(frozen=True)
class GoldRow:
    family: str
    n: int
    g: int
    pi0: int
    p: Optional[int] = None
    e: Optional[int] = None
    p_plus: Optional[int] = None
    p_minus: Optional[int] = None

    def columns(self) -> dict[str, int]:
        """Tabulated cells other than family and N."""
        out = {"g": self.g, "pi0": self.pi0}
        for name in ("p", "e", "p_plus", "p_minus"):
            v = getattr(self, name)
            if v is not None:
                out[name] = v
        return out


def _opt(v):
    return int(v) if v not in (None, "") else None


def parse_rows(lines) -> list[GoldRow]:
    out = []
    for rec in csv.DictReader(lines):
        out.append(GoldRow(rec["family"], int(rec["N"]), int(rec["g"]), int(rec["pi0"]),
                           _opt(rec.get("p")), _opt(rec.get("e")),
                           _opt(rec.get("p_plus")), _opt(rec.get("p_minus"))))
    return out


def load_gold(family: str, path=None) -> list[GoldRow]:
    if path is not None:
        with open(path, newline="") as fh:
            return parse_rows(fh)
    if family not in GOLD_FILES:
        raise KeyError(f"no gold table for {family!r}")
    text = resources.files(__package__).joinpath("data").joinpath(GOLD_FILES[family]).read_text()
    return parse_rows(text.splitlines())
