"""Label inventories for UCCA categories and SNACS supersenses.

Both inventories are plain data files bundled with the package. Set
``UCCASNACS_CATEGORIES`` or ``UCCASNACS_SUPERSENSES`` to a file path to
load a different version.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Optional

from .errors import InventoryError

CATEGORIES_ENV = "UCCASNACS_CATEGORIES"
SUPERSENSES_ENV = "UCCASNACS_SUPERSENSES"

# Structural label linking an unanalyzable multi-terminal unit to its terminals.
TERMINAL = "Terminal"


def _read_lines(path: Optional[str], default_name: str) -> list[str]:
    if path:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    else:
        text = resources.files("uccasnacs.data").joinpath(default_name).read_text(encoding="utf-8")
    return [line.strip() for line in text.splitlines() if line.strip() and not line.startswith("#")]


@dataclass(frozen=True)
class Inventory:
    categories: dict[str, str]
    supersenses: frozenset[str]

    def check_category(self, code: str) -> str:
        if code != TERMINAL and code not in self.categories:
            raise InventoryError(f"unknown UCCA category {code!r}")
        return code

    def normalize_supersense(self, label: Optional[str]) -> Optional[str]:
        """Strip an optional ``p.`` prefix; ``None`` for labels outside the inventory."""
        if not label or label == "_":
            return None
        if label.startswith("p."):
            label = label[2:]
        return label if label in self.supersenses else None

    def check_supersense(self, label: str) -> str:
        bare = self.normalize_supersense(label)
        if bare is None:
            raise InventoryError(f"unknown supersense {label!r}")
        return bare


def load_inventory(categories_path: Optional[str] = None, supersenses_path: Optional[str] = None) -> Inventory:
    categories = {}
    for line in _read_lines(categories_path, "categories.tsv"):
        code, _, name = line.partition("\t")
        categories[code.strip()] = name.strip() or code.strip()
    supersenses = frozenset(_read_lines(supersenses_path, "supersenses.txt"))
    return Inventory(categories, supersenses)


@lru_cache(maxsize=None)
def _cached(categories_path: Optional[str], supersenses_path: Optional[str]) -> Inventory:
    return load_inventory(categories_path, supersenses_path)


def default_inventory() -> Inventory:
    return _cached(os.environ.get(CATEGORIES_ENV), os.environ.get(SUPERSENSES_ENV))
