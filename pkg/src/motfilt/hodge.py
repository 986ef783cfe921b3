"""Hodge diamonds ``h[i][j] = dim H^j(X, Omega^i)`` of smooth proper varieties."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

OVER_Q = "generic_fiber_over_Q"
OVER_FQ = "over_Fq"
CONTEXTS = (OVER_Q, OVER_FQ)


@dataclass(frozen=True)
class HodgeDiamond:
    d: int
    h: tuple[tuple[int, ...], ...]
    context: str = OVER_Q
    q: int | None = None
    serre_dual: bool = False

    def __post_init__(self):
        h = tuple(tuple(int(x) for x in row) for row in self.h)
        object.__setattr__(self, "h", h)
        if self.d < 0:
            raise ValueError("dimension must be non-negative")
        if len(h) != self.d + 1 or any(len(row) != self.d + 1 for row in h):
            raise ValueError(f"Hodge matrix must be {self.d + 1}x{self.d + 1}")
        if any(x < 0 for row in h for x in row):
            raise ValueError("Hodge numbers must be non-negative")
        if self.context not in CONTEXTS:
            raise ValueError(f"unknown context {self.context!r}; expected one of {CONTEXTS}")
        if self.serre_dual:
            d = self.d
            for i in range(d + 1):
                for j in range(d + 1):
                    if h[i][j] != h[d - i][d - j]:
                        raise ValueError("diamond flagged Serre-dual but h[i][j] != h[d-i][d-j]")

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if 0 <= i <= self.d and 0 <= j <= self.d:
            return self.h[i][j]
        return 0

    def euler_characteristic(self) -> int:
        """``sum (-1)^(i+j) h^ij``; equals ``2 - 2g`` for a curve of genus ``g``."""
        return sum((-1) ** ((i + j) % 2) * x for i, row in enumerate(self.h) for j, x in enumerate(row))

    def hodge_row_euler(self, i: int) -> int:
        """``sum_j (-1)^j h^ij``, the Euler characteristic of ``Omega^i``."""
        if not 0 <= i <= self.d:
            return 0
        return sum((-1) ** (j % 2) * x for j, x in enumerate(self.h[i]))

    def to_json(self) -> dict:
        out = {"d": self.d, "h": [list(r) for r in self.h], "context": self.context}
        if self.q is not None:
            out["q"] = self.q
        if self.serre_dual:
            out["serre_dual"] = True
        return out

    @classmethod
    def from_json(cls, obj: dict) -> HodgeDiamond:
        if "d" not in obj or "h" not in obj:
            raise ValueError("diamond description needs 'd' and 'h'")
        q = obj.get("q")
        return cls(
            int(obj["d"]),
            tuple(tuple(r) for r in obj["h"]),
            obj.get("context", OVER_Q),
            None if q is None else int(q),
            bool(obj.get("serre_dual", False)),
        )

    @classmethod
    def point(cls, context: str = OVER_Q, q: int | None = None) -> HodgeDiamond:
        return cls(0, ((1,),), context, q, True)

    @classmethod
    def number_ring(cls, degree: int) -> HodgeDiamond:
        """Diamond of the generic fibre of ``Spec O_F``: ``h^00 = [F:Q]``."""
        return cls(0, ((degree,),), OVER_Q)

    @classmethod
    def curve(cls, genus: int, context: str = OVER_FQ, q: int | None = None) -> HodgeDiamond:
        return cls(1, ((1, genus), (genus, 1)), context, q, True)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], context: str = OVER_Q, q: int | None = None) -> HodgeDiamond:
        return cls(len(rows) - 1, tuple(tuple(r) for r in rows), context, q)


def load_diamond(path: str | Path) -> HodgeDiamond:
    return HodgeDiamond.from_json(json.loads(Path(path).read_text()))
