"""Incremental row echelon forms over GF(2), GF(3) and GF(p).

GF(2) rows are Python ints used as bitsets (bit j = column j).  GF(3) rows
are pairs of bitsets (columns holding +1, columns holding -1).  Other GF(p)
rows are sparse dicts {column: residue}.  Pivots sit on the highest column of a
row, so reduction always removes the leading entry.
"""

from __future__ import annotations

from typing import Iterable, Mapping


class EchelonGF2:
    def __init__(self) -> None:
        self.pivots: dict[int, int] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: int) -> int:
        pivots = self.pivots
        while row:
            lead = row.bit_length() - 1
            piv = pivots.get(lead)
            if piv is None:
                return row
            row ^= piv
        return 0

    def add(self, row: int) -> bool:
        """Insert a row; True if it was independent of the rows so far."""
        row = self.reduce(row)
        if not row:
            return False
        self.pivots[row.bit_length() - 1] = row
        return True

    def copy(self) -> "EchelonGF2":
        other = EchelonGF2()
        other.pivots = dict(self.pivots)
        return other


def _gf3_add(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    xp, xm = x
    yp, ym = y
    xz = ~(xp | xm)
    yz = ~(yp | ym)
    plus = (xp & yz) | (yp & xz) | (xm & ym)
    minus = (xm & yz) | (ym & xz) | (xp & yp)
    return plus, minus


class EchelonGF3:
    """Bit-sliced elimination over GF(3); pivot rows are scaled to lead with +1."""

    def __init__(self) -> None:
        self.pivots: dict[int, tuple[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: tuple[int, int]) -> tuple[int, int]:
        pivots = self.pivots
        xp, xm = row
        while xp | xm:
            lead = (xp | xm).bit_length() - 1
            piv = pivots.get(lead)
            if piv is None:
                break
            # subtract the pivot when the leading entry is +1, add it when -1
            if xp >> lead & 1:
                yp, ym = piv[1], piv[0]
            else:
                yp, ym = piv
            xz = ~(xp | xm)
            yz = ~(yp | ym)
            xp, xm = (xp & yz) | (yp & xz) | (xm & ym), (xm & yz) | (ym & xz) | (xp & yp)
        return xp, xm

    def add(self, row: tuple[int, int]) -> bool:
        plus, minus = self.reduce(row)
        if not (plus | minus):
            return False
        lead = (plus | minus).bit_length() - 1
        if minus >> lead & 1:
            plus, minus = minus, plus
        self.pivots[lead] = (plus, minus)
        return True

    def copy(self) -> "EchelonGF3":
        other = EchelonGF3()
        other.pivots = dict(self.pivots)
        return other


class EchelonGFp:
    def __init__(self, modulus: int) -> None:
        self.modulus = modulus
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping[int, int]) -> dict[int, int]:
        p = self.modulus
        row = {c: v % p for c, v in row.items() if v % p}
        pivots = self.pivots
        while row:
            lead = max(row)
            piv = pivots.get(lead)
            if piv is None:
                return row
            factor = row[lead]
            for c, v in piv.items():
                x = (row.get(c, 0) - factor * v) % p
                if x:
                    row[c] = x
                else:
                    row.pop(c, None)
        return row

    def add(self, row: Mapping[int, int]) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        lead = max(row)
        inv = pow(row[lead], -1, self.modulus)
        self.pivots[lead] = {c: v * inv % self.modulus for c, v in row.items()}
        return True

    def copy(self) -> "EchelonGFp":
        other = EchelonGFp(self.modulus)
        other.pivots = dict(self.pivots)
        return other


def echelon(modulus: int):
    if modulus == 2:
        return EchelonGF2()
    if modulus == 3:
        return EchelonGF3()
    return EchelonGFp(modulus)


def encode_row(modulus: int, entries: Mapping[int, int]):
    """Column -> coefficient map in the representation ``echelon(modulus)`` expects."""
    if modulus == 2:
        row = 0
        for c, v in entries.items():
            if v % 2:
                row ^= 1 << c
        return row
    if modulus == 3:
        plus = minus = 0
        for c, v in entries.items():
            v %= 3
            if v == 1:
                plus |= 1 << c
            elif v == 2:
                minus |= 1 << c
        return plus, minus
    return dict(entries)


def is_zero(row) -> bool:
    if isinstance(row, tuple):
        return not (row[0] | row[1])
    return not row


def rank(modulus: int, rows: Iterable[Mapping[int, int]]) -> int:
    ech = echelon(modulus)
    for r in rows:
        ech.add(encode_row(modulus, r))
    return ech.rank
