"""Dimension and enumeration budgets shared by the exact machinery."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace


class BudgetError(Exception):
    """Raised when a request exceeds the configured exact-computation budget."""


@dataclass
class Caps:
    """Size limits guarding exponential work.

    Truth tables hold 2^n entries, restriction enumeration walks 3^n cells,
    and the ordered-cover searches memoize on subsets of the cube, so every
    exact routine refuses dimensions beyond its cap instead of thrashing.
    """

    dimension: int = 20       # truth-table construction
    enumeration: int = 10     # full 3^n restriction enumeration
    mu: int = 8               # mu-density enumeration
    dt: int = 13              # decision-tree minimization
    dnf: int = 10             # prime implicants / two-level covers
    dl: int = 4               # exact ordered-cover search (DL, ODL, wODL, widths)
    dl_extended: int = 5      # best-effort ordered-cover search
    dl_nodes: int = 400_000   # memo-state budget for the extended search


def caps_from_env(base: Caps | None = None, var: str = "SHRINKLAB_CAPS") -> Caps:
    """Parse overrides like ``dl=5,enumeration=12`` from the environment."""
    caps = replace(base) if base is not None else Caps()
    raw = os.environ.get(var, "")
    for item in filter(None, (s.strip() for s in raw.split(","))):
        key, _, value = item.partition("=")
        if not hasattr(caps, key):
            raise ValueError(f"unknown cap {key!r} in ${var}")
        setattr(caps, key, int(value))
    return caps


CAPS = caps_from_env()
