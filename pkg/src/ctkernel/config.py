"""Run-wide knobs shared by the checkers and the CLI."""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_FUEL = 10000
DEFAULT_DEPTH = 4
DEFAULT_SEARCH_DEPTH = 5
DEFAULT_INSTANCE_DEPTH = 2


@dataclass(frozen=True)
class RunConfig:
    """Budgets for one invocation.

    fuel bounds computation steps (beta, projection, case dispatch);
    depth bounds the constructor nesting of enumerated canonical
    witnesses; search_depth bounds derivation search in the rule lab.
    The two main budgets are independent: fuel limits how long terms may
    compute, depth limits how far witness search may reach.
    """

    fuel: int = DEFAULT_FUEL
    depth: int = DEFAULT_DEPTH
    search_depth: int = DEFAULT_SEARCH_DEPTH
    output_mode: str = "human"

    def __post_init__(self) -> None:
        if self.fuel < 1 or self.depth < 1 or self.search_depth < 1:
            raise ValueError("all budget counts must be >= 1")
        if self.output_mode not in ("human", "machine"):
            raise ValueError(f"unknown output mode: {self.output_mode!r}")
