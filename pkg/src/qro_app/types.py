from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, NamedTuple, Union

import numpy as np


class EdgeState(str, Enum):
    FORWARD = "forward"
    REVERSE = "reverse"
    UNORIENTED = "unoriented"


class Edge(NamedTuple):
    """Edge record stored with ``u < v``; FORWARD is the arc u->v, REVERSE is v->u."""

    u: int
    v: int
    state: EdgeState

    @property
    def is_arc(self) -> bool:
        return self.state is not EdgeState.UNORIENTED

    def arc(self) -> tuple[int, int] | None:
        if self.state is EdgeState.FORWARD:
            return self.u, self.v
        if self.state is EdgeState.REVERSE:
            return self.v, self.u
        return None


@dataclass(frozen=True)
class VertexSubsetPair:
    """Membership masks for a pair (A, B) of vertex subsets; A and B may overlap."""

    a: tuple[bool, ...]
    b: tuple[bool, ...]

    def __post_init__(self) -> None:
        if len(self.a) != len(self.b):
            raise ValueError("subset masks must have the same length")

    @classmethod
    def from_sets(cls, n: int, a: Iterable[int], b: Iterable[int]) -> "VertexSubsetPair":
        a_set, b_set = set(a), set(b)
        for x in a_set | b_set:
            if not 0 <= x < n:
                raise ValueError(f"vertex {x} outside 0..{n - 1}")
        return cls(
            a=tuple(x in a_set for x in range(n)),
            b=tuple(x in b_set for x in range(n)),
        )

    @classmethod
    def from_masks(cls, n: int, a_mask: int, b_mask: int) -> "VertexSubsetPair":
        return cls(
            a=tuple(bool(a_mask >> x & 1) for x in range(n)),
            b=tuple(bool(b_mask >> x & 1) for x in range(n)),
        )

    @classmethod
    def from_arrays(cls, a: np.ndarray, b: np.ndarray) -> "VertexSubsetPair":
        return cls(a=tuple(bool(v) for v in a), b=tuple(bool(v) for v in b))

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def A(self) -> tuple[int, ...]:
        return tuple(x for x, inside in enumerate(self.a) if inside)

    @property
    def B(self) -> tuple[int, ...]:
        return tuple(x for x, inside in enumerate(self.b) if inside)

    @property
    def a_mask(self) -> int:
        return sum(1 << x for x in self.A)

    @property
    def b_mask(self) -> int:
        return sum(1 << x for x in self.B)

    def swapped(self) -> "VertexSubsetPair":
        return VertexSubsetPair(a=self.b, b=self.a)

    def sort_key(self) -> tuple[int, int]:
        # canonical witness order: smallest B mask, then smallest A mask
        return self.b_mask, self.a_mask


class VerdictStatus(str, Enum):
    PASSED = "passed"
    FAILED = "failed"
    SKIPPED = "skipped"


Margin = Union[int, Fraction, float, None]


@dataclass(frozen=True)
class Verdict:
    name: str
    status: VerdictStatus
    margin: Margin = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status is VerdictStatus.PASSED

    @classmethod
    def check(cls, name: str, holds: bool, margin: Margin = None, detail: str = "") -> "Verdict":
        status = VerdictStatus.PASSED if holds else VerdictStatus.FAILED
        return cls(name=name, status=status, margin=margin, detail=detail)

    @classmethod
    def skipped(cls, name: str, detail: str) -> "Verdict":
        return cls(name=name, status=VerdictStatus.SKIPPED, margin=None, detail=detail)
