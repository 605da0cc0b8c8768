"""Array kernels for exhaustive enumeration.

A batch of fillings of one shape is an integer array ``V`` with one row per
filling and one column per cell. Which column holds which cell is decided
by a ``columns`` map; by default it is the reading order, so that the rows
of a block come out in odometer order.
"""

from __future__ import annotations

import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Callable, Mapping, Sequence, TypeVar

import numpy as np

from .combinatorics import Cell, Partition, arm, attacking_pairs, cells, leg, reading_order

DEFAULT_MAX_STATES = 20_000_000
BLOCK_ROWS = 1 << 16

T = TypeVar("T")
R = TypeVar("R")


class BudgetExceeded(RuntimeError):
    """Enumeration would visit more states than allowed."""


def check_budget(m: int, ncells: int, max_states: int) -> int:
    count = m**ncells
    if count > max_states:
        raise BudgetExceeded(
            f"{m}^{ncells} = {count} fillings exceeds the budget of {max_states} states"
        )
    return count


def reading_columns(shape: Partition) -> dict[Cell, int]:
    return {c: n for n, c in enumerate(reading_order(shape))}


@dataclass(frozen=True)
class StatTables:
    """Index arrays for computing ``maj`` and ``inv`` on a batch."""

    des_upper: np.ndarray
    des_lower: np.ndarray
    des_legp1: np.ndarray
    des_arm: np.ndarray
    att_first: np.ndarray
    att_second: np.ndarray

    @classmethod
    def build(cls, shape: Partition, columns: Mapping[Cell, int] | None = None) -> StatTables:
        col = reading_columns(shape) if columns is None else columns
        upper, lower, legp1, arms = [], [], [], []
        for (i, j) in cells(shape):
            if i >= 2:
                upper.append(col[(i, j)])
                lower.append(col[(i - 1, j)])
                legp1.append(leg(shape, (i, j)) + 1)
                arms.append(arm(shape, (i, j)))
        pairs = attacking_pairs(shape)
        as_array = lambda xs: np.asarray(xs, dtype=np.int64)
        return cls(
            as_array(upper), as_array(lower), as_array(legp1), as_array(arms),
            as_array([col[b] for b, _ in pairs]), as_array([col[c] for _, c in pairs]),
        )

    def maj_inv(self, V: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        des = V[:, self.des_upper] > V[:, self.des_lower]
        maj = des @ self.des_legp1
        inversions = (V[:, self.att_first] > V[:, self.att_second]).sum(axis=1, dtype=np.int64)
        return maj, inversions - des @ self.des_arm


def odometer_prefixes(m: int, ncells: int, block_rows: int = BLOCK_ROWS) -> list[tuple[int, ...]]:
    """Split the odometer over ``ncells`` digits into blocks by leading digits.

    At least the first two digits are fixed; more are fixed while a block
    would exceed ``block_rows`` rows.
    """
    p = min(2, ncells)
    while p < ncells and m ** (ncells - p) > block_rows:
        p += 1
    return list(product(range(1, m + 1), repeat=p))


def odometer_block(m: int, ncells: int, prefix: Sequence[int]) -> np.ndarray:
    """All words in ``{1..m}^ncells`` starting with ``prefix``, last digit fastest."""
    free = ncells - len(prefix)
    dtype = np.int16 if m < 2**15 else np.int64
    V = np.empty((m**free, ncells), dtype=dtype)
    V[:, : len(prefix)] = prefix
    if free:
        V[:, len(prefix):] = np.indices((m,) * free, dtype=dtype).reshape(free, -1).T + 1
    return V


def ordered_map(fn: Callable[[T], R], jobs: Sequence[T], workers: int = 1) -> list[R]:
    """``[fn(job) for job in jobs]``, optionally spread over processes.

    Results always come back in job order, so any reduction over them is
    independent of the worker count.
    """
    if workers <= 1 or len(jobs) <= 1:
        return [fn(job) for job in jobs]
    ctx = multiprocessing.get_context("fork")
    chunk = max(1, len(jobs) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
        return list(pool.map(fn, jobs, chunksize=chunk))
