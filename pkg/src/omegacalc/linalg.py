"""Gaussian elimination over F2 with rows packed into Python ints."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class F2Basis:
    """Incrementally built row-echelon basis.

    Each stored row remembers which input rows were combined to produce it
    (``combo``, a bitmask over input indices), so membership answers come with
    an explicit witness.  Pivots are leading bits; insertion order is the only
    source of choice, which keeps results deterministic.
    """

    pivots: dict[int, tuple[int, int]] = field(default_factory=dict)
    count: int = 0

    def reduce(self, row: int, combo: int = 0) -> tuple[int, int]:
        while row:
            top = row.bit_length() - 1
            hit = self.pivots.get(top)
            if hit is None:
                break
            row ^= hit[0]
            combo ^= hit[1]
        return row, combo

    def add(self, row: int) -> bool:
        """Insert the next input row; returns True if it raised the rank."""
        idx = self.count
        self.count += 1
        row, combo = self.reduce(row, 1 << idx)
        if not row:
            return False
        self.pivots[row.bit_length() - 1] = (row, combo)
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def solve(self, target: int) -> tuple[int | None, int]:
        """(combo, 0) if target is in the span, else (None, residue)."""
        residue, combo = self.reduce(target)
        if residue:
            # finish reducing lower bits so the residue is canonical
            return None, _full_reduce(self, residue)
        return combo, 0


def _full_reduce(basis: F2Basis, row: int) -> int:
    out = 0
    while row:
        top = row.bit_length() - 1
        hit = basis.pivots.get(top)
        if hit is None:
            out |= 1 << top
            row ^= 1 << top
        else:
            row ^= hit[0]
    return out


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out
