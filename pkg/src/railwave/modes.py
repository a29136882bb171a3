"""Transmission mode vocabulary shared across the package."""

from __future__ import annotations

import enum


class Mode(enum.Enum):
    """How a flow reaches its destination MR (or does not)."""

    DIRECT = "S"
    LEFT = "L"
    RIGHT = "R"
    UAV = "U"
    ABANDONED = "A"

    def __repr__(self) -> str:  # keeps assignment dumps compact
        return self.value


# canonical ordering used for lexicographic tie-breaks
MODE_ORDER = (Mode.DIRECT, Mode.LEFT, Mode.RIGHT, Mode.UAV, Mode.ABANDONED)
RELAY_MODES = (Mode.LEFT, Mode.RIGHT, Mode.UAV)
MODE_RANK = {m: i for i, m in enumerate(MODE_ORDER)}
