"""Partitions, fillings and the HHL statistics ``maj`` and ``inv``.

Conventions used throughout the package:

* Diagrams are drawn in French convention. Row 1 is the bottom row and
  column 1 the leftmost column; a cell is a ``(row, col)`` pair, 1-based.
* ``Filling.rows`` stores rows bottom-up. Anything meant for humans
  (parsing, rendering) is top-down, and the conversion happens only in
  :mod:`macfactor.cli` and :func:`Filling.from_top_down`.
* Two cells attack each other when they sit in the same row, or in
  consecutive rows with the upper cell strictly right of the lower one.
  Attacking pairs are recorded as ``(earlier, later)`` in reading order,
  so the upper cell comes first for the consecutive-row kind.
* An inversion is an attacking pair whose earlier entry is strictly larger.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Cell = tuple[int, int]
CellPair = tuple[Cell, Cell]
Partition = tuple[int, ...]
Composition = tuple[int, ...]


class InvalidCellError(ValueError):
    """A cell that does not belong to the diagram."""


class RowIndexError(IndexError):
    """A row index outside the range an operation accepts."""


def partition(parts: Iterable[int]) -> Partition:
    """Validate ``parts`` and return them as a tuple.

    Raises:
        ValueError: if a part is not a positive integer or parts increase.
    """
    parts = tuple(parts)
    for p in parts:
        if not isinstance(p, int) or isinstance(p, bool):
            raise ValueError(f"partition parts must be integers, got {p!r}")
        if p < 1:
            raise ValueError(f"partition parts must be positive, got {p}")
    for x, y in zip(parts, parts[1:]):
        if y > x:
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
    return parts


def conjugate(shape: Partition) -> Partition:
    if not shape:
        return ()
    return tuple(sum(1 for p in shape if p >= j) for j in range(1, shape[0] + 1))


def cells(shape: Partition) -> Iterator[Cell]:
    """Cells row by row, bottom row first."""
    for i, width in enumerate(shape, start=1):
        for j in range(1, width + 1):
            yield (i, j)


def contains(shape: Partition, c: Cell) -> bool:
    i, j = c
    return 1 <= i <= len(shape) and 1 <= j <= shape[i - 1]


def _check_cell(shape: Partition, c: Cell) -> None:
    if not contains(shape, c):
        raise InvalidCellError(f"cell {c} is not in shape {shape}")


def arm(shape: Partition, c: Cell) -> int:
    """Number of cells strictly to the right of ``c``."""
    _check_cell(shape, c)
    return shape[c[0] - 1] - c[1]


def leg(shape: Partition, c: Cell) -> int:
    """Number of cells strictly above ``c``."""
    _check_cell(shape, c)
    return sum(1 for width in shape[c[0]:] if width >= c[1])


def reading_order(shape: Partition) -> list[Cell]:
    """Rows from top to bottom, left to right inside each row."""
    return [(i, j) for i in range(len(shape), 0, -1) for j in range(1, shape[i - 1] + 1)]


def _check_row(shape: Partition, i: int, lowest: int) -> None:
    if not lowest <= i <= len(shape):
        raise RowIndexError(f"row {i} outside [{lowest}, {len(shape)}] for shape {shape}")


def att_same_row(shape: Partition, i: int) -> set[CellPair]:
    _check_row(shape, i, 1)
    w = shape[i - 1]
    return {((i, j), (i, k)) for j in range(1, w + 1) for k in range(j + 1, w + 1)}


def att_row_below(shape: Partition, i: int) -> set[CellPair]:
    """Attacking pairs between row ``i`` and row ``i - 1``.

    Each pair is ``(upper, lower)`` with the upper cell strictly right of
    the lower cell.
    """
    _check_row(shape, i, 2)
    w = shape[i - 1]
    return {((i, k), (i - 1, j)) for j in range(1, w + 1) for k in range(j + 1, w + 1)}


def attacking_pairs(shape: Partition) -> list[CellPair]:
    pairs: list[CellPair] = []
    for i in range(1, len(shape) + 1):
        pairs.extend(sorted(att_same_row(shape, i)))
        if i >= 2:
            pairs.extend(sorted(att_row_below(shape, i)))
    return pairs


@dataclass(frozen=True)
class Filling:
    """A map from the cells of ``shape`` to positive integers.

    ``rows[0]`` is the bottom row. The shape is derived from the row lengths.
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        partition(len(r) for r in rows)
        for r in rows:
            for x in r:
                if not isinstance(x, int) or x < 1:
                    raise ValueError(f"filling entries must be positive integers, got {x!r}")

    @classmethod
    def from_top_down(cls, rows: Sequence[Sequence[int]]) -> Filling:
        """Build a filling from rows listed as drawn, top row first."""
        return cls(tuple(tuple(r) for r in reversed(rows)))

    @classmethod
    def from_reading_word(cls, shape: Partition, word: Sequence[int]) -> Filling:
        """Inverse of :meth:`reading_word`."""
        if len(word) != sum(shape):
            raise ValueError(f"word of length {len(word)} does not fit shape {shape}")
        rows: list[tuple[int, ...]] = [()] * len(shape)
        pos = 0
        for i in range(len(shape), 0, -1):
            rows[i - 1] = tuple(word[pos:pos + shape[i - 1]])
            pos += shape[i - 1]
        return cls(tuple(rows))

    @property
    def shape(self) -> Partition:
        return tuple(len(r) for r in self.rows)

    def top_down(self) -> list[tuple[int, ...]]:
        return list(reversed(self.rows))

    def reading_word(self) -> tuple[int, ...]:
        return tuple(x for r in reversed(self.rows) for x in r)

    def __getitem__(self, c: Cell) -> int:
        _check_cell(self.shape, c)
        return self.rows[c[0] - 1][c[1] - 1]

    def relabel(self, f) -> Filling:
        return Filling(tuple(tuple(f(x) for x in r) for r in self.rows))

    def __str__(self) -> str:
        return ";".join(",".join(map(str, r)) for r in self.top_down())


def descents(T: Filling) -> set[Cell]:
    rows = T.rows
    return {
        (i + 1, j + 1)
        for i in range(1, len(rows))
        for j, x in enumerate(rows[i])
        if x > rows[i - 1][j]
    }


def des_rows(T: Filling, i: int) -> set[Cell]:
    """Descents lying in row ``i`` (compared with row ``i - 1``)."""
    _check_row(T.shape, i, 2)
    upper, lower = T.rows[i - 1], T.rows[i - 2]
    return {(i, j + 1) for j, x in enumerate(upper) if x > lower[j]}


def maj(T: Filling) -> int:
    shape = T.shape
    return sum(leg(shape, u) + 1 for u in descents(T))


def maj_rows(T: Filling, i: int) -> int:
    shape = T.shape
    return sum(1 + leg(shape, b) for b in des_rows(T, i))


def arm_rows(T: Filling, i: int) -> int:
    shape = T.shape
    return sum(arm(shape, b) for b in des_rows(T, i))


def inv_sets(T: Filling, i: int) -> tuple[set[CellPair], set[CellPair]]:
    """Inversions contributed by row ``i``: same-row ones and row-below ones.

    The second set is empty for ``i == 1``.
    """
    shape = T.shape
    _check_row(shape, i, 1)
    same = {(b, c) for b, c in att_same_row(shape, i) if T[b] > T[c]}
    below: set[CellPair] = set()
    if i >= 2:
        below = {(b, c) for b, c in att_row_below(shape, i) if T[b] > T[c]}
    return same, below


def inv_rows(T: Filling, i: int) -> int:
    _check_row(T.shape, i, 2)
    same, below = inv_sets(T, i)
    return len(same) + len(below) - arm_rows(T, i)


def inversion_count(T: Filling) -> int:
    """Total number of inversions over all attacking pairs."""
    return sum(1 for b, c in attacking_pairs(T.shape) if T[b] > T[c])


def inv(T: Filling, *, check: bool = False) -> int:
    """The HHL ``inv`` statistic.

    Computed from the global inversion count. With ``check=True`` the
    row-by-row decomposition is evaluated as well and must agree.
    """
    shape = T.shape
    value = inversion_count(T) - sum(arm(shape, u) for u in descents(T))
    if check and shape:
        by_rows = len(inv_sets(T, 1)[0]) + sum(inv_rows(T, i) for i in range(2, len(shape) + 1))
        if by_rows != value:
            raise AssertionError(f"inv mismatch on {T}: global {value}, by rows {by_rows}")
    return value


def evaluation(T: Filling, m: int) -> Composition:
    """Occurrence counts of the labels ``1..m``."""
    counts = Counter(x for r in T.rows for x in r)
    if counts and max(counts) > m:
        raise ValueError(f"entry {max(counts)} exceeds alphabet size {m}")
    return tuple(counts.get(v, 0) for v in range(1, m + 1))
