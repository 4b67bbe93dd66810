from __future__ import annotations

from dataclasses import dataclass

from .grid import Coord


@dataclass(frozen=True)
class VictimRecord:
    id: int
    location: Coord
    requirements: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "location", Coord(*self.location))
        object.__setattr__(self, "requirements", tuple(int(x) for x in self.requirements))
        if not any(self.requirements):
            raise ValueError(f"victim {self.id} has no requirements")


@dataclass(frozen=True)
class Robot:
    id: int
    start: Coord
    capabilities: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "start", Coord(*self.start))
        object.__setattr__(self, "capabilities", tuple(int(x) for x in self.capabilities))
