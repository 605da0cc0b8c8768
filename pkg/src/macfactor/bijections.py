"""The splitting map ``pi_star``, the involution ``tau``, and their verifiers.

For a shape ``mu = (mu', n^l)`` with ``k = len(mu')`` body rows, the tail
occupies rows ``k+1 .. k+l``. ``pi_star`` cuts a filling into its body and
its tail; ``tau`` rearranges the tail so that ``inv`` agrees with the split
filling exactly and ``maj`` agrees modulo ``l``.

Scalar functions here work on :class:`Filling` objects and follow the
definitions literally. The ``*_batch`` functions do the same job on arrays
of fillings and are what the exhaustive verifiers run; the test-suite
checks the two against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from ._batch import (
    DEFAULT_MAX_STATES,
    StatTables,
    check_budget,
    odometer_block,
    odometer_prefixes,
    ordered_map,
    reading_columns,
)
from .combinatorics import (
    Filling,
    Partition,
    arm_rows,
    att_row_below,
    des_rows,
    descents,
    evaluation,
    inv,
    inv_rows,
    inv_sets,
    maj,
    maj_rows,
    partition,
)
from .report import Verdict, fmt_tuple


@dataclass(frozen=True)
class TailShape:
    """``mu = (mu', n^l)`` with ``n`` in {1, 2}.

    ``l = 0`` is allowed for the maps themselves; the verifiers, whose
    statements are taken modulo ``l``, need ``l >= 1``.
    """

    mu_prime: Partition
    n: int
    l: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "mu_prime", partition(self.mu_prime))
        if self.n not in (1, 2):
            raise ValueError(f"tail width must be 1 or 2, got {self.n}")
        if self.l < 0:
            raise ValueError(f"tail height must be non-negative, got {self.l}")
        if not self.mu_prime:
            raise ValueError("mu' must be non-empty")
        if self.mu_prime[-1] < self.n:
            raise ValueError(f"last part of mu' = {fmt_tuple(self.mu_prime)} is smaller than n = {self.n}")

    @property
    def k(self) -> int:
        return len(self.mu_prime)

    @property
    def tail(self) -> Partition:
        return (self.n,) * self.l

    @property
    def mu(self) -> Partition:
        return self.mu_prime + self.tail

    def params(self) -> dict[str, object]:
        return {"mu": fmt_tuple(self.mu), "mu_prime": fmt_tuple(self.mu_prime), "n": self.n, "l": self.l}


@dataclass(frozen=True)
class SplitFilling:
    body: Filling
    tail: Filling


def _check_shape(T: Filling, ts: TailShape) -> None:
    if T.shape != ts.mu:
        raise ValueError(f"filling has shape {fmt_tuple(T.shape)}, expected {fmt_tuple(ts.mu)}")


def pi_star(T: Filling, ts: TailShape) -> SplitFilling:
    _check_shape(T, ts)
    return SplitFilling(Filling(T.rows[: ts.k]), Filling(T.rows[ts.k:]))


def pi_star_inverse(S: SplitFilling, ts: TailShape) -> Filling:
    T = Filling(S.body.rows + S.tail.rows)
    _check_shape(T, ts)
    return T


def stats_of_split(S: SplitFilling) -> tuple[int, int]:
    """``(maj, inv)`` of a pair of fillings: the sums over both parts."""
    return maj(S.body) + maj(S.tail), inv(S.body) + inv(S.tail)


def cond_xAx(a: int, b: int, A: int) -> bool:
    """Row ``(a, b)`` sitting on a row whose first entry is ``A``."""
    return a <= A < b or b <= A < a


XXXX_CHAINS = (
    lambda a, b, A, B: a <= A < b <= B,
    lambda a, b, A, B: A < b <= B < a,
    lambda a, b, A, B: b <= A < a <= B,
    lambda a, b, A, B: A < a <= B < b,
    lambda a, b, A, B: a <= B < b <= A,
    lambda a, b, A, B: B < b <= A < a,
    lambda a, b, A, B: b <= B < a <= A,
    lambda a, b, A, B: B < a <= A < b,
)


def cond_xXxX(a: int, b: int, A: int, B: int) -> bool:
    """Row ``(a, b)`` sitting on row ``(A, B)``."""
    return any(chain(a, b, A, B) for chain in XXXX_CHAINS)


def tau_trace(T: Filling, ts: TailShape) -> list[Filling]:
    """Intermediate fillings of ``tau``: ``T`` followed by one filling per swap.

    For ``n = 1`` ``tau`` is the identity and the trace is ``[T]``.
    """
    _check_shape(T, ts)
    trace = [T]
    if ts.n == 1 or ts.l == 0:
        return trace
    rows = [list(r) for r in T.rows]
    top = len(rows)

    def swap(row: int) -> None:
        rows[row - 1].reverse()
        trace.append(Filling(tuple(map(tuple, rows))))

    i = ts.k
    a, b = rows[i]
    if not cond_xAx(a, b, rows[i - 1][0]):
        return trace
    swap(i + 1)
    i += 1
    while i + 1 <= top:
        a, b = rows[i]
        A, B = rows[i - 1][:2]
        if not cond_xXxX(a, b, A, B):
            break
        swap(i + 1)
        i += 1
    return trace


def tau(T: Filling, ts: TailShape) -> Filling:
    return tau_trace(T, ts)[-1]


# -- batch versions ---------------------------------------------------------


def xAx_batch(a, b, A):
    return ((a <= A) & (A < b)) | ((b <= A) & (A < a))


def xXxX_batch(a, b, A, B):
    return (
        ((a <= A) & (A < b) & (b <= B))
        | ((A < b) & (b <= B) & (B < a))
        | ((b <= A) & (A < a) & (a <= B))
        | ((A < a) & (a <= B) & (B < b))
        | ((a <= B) & (B < b) & (b <= A))
        | ((B < b) & (b <= A) & (A < a))
        | ((b <= B) & (B < a) & (a <= A))
        | ((B < a) & (a <= A) & (A < b))
    )


@dataclass(frozen=True)
class _Layout:
    """Column positions, in a reading-order batch of ``mu``, used by the verifiers."""

    left: tuple[int, ...]   # column of (i, 1) for rows i = 1..k+l
    right: tuple[int, ...]  # column of (i, 2), or -1 for width-1 rows
    mu: StatTables
    body: StatTables
    tail: StatTables


@lru_cache(maxsize=32)
def _layout(ts: TailShape) -> _Layout:
    col = reading_columns(ts.mu)
    k = ts.k
    body_cols = {c: col[c] for c in col if c[0] <= k}
    tail_cols = {(i - k, j): col[(i, j)] for (i, j) in col if i > k}
    return _Layout(
        tuple(col[(i, 1)] for i in range(1, len(ts.mu) + 1)),
        tuple(col.get((i, 2), -1) for i in range(1, len(ts.mu) + 1)),
        StatTables.build(ts.mu),
        StatTables.build(ts.mu_prime, body_cols),
        StatTables.build(ts.tail, tail_cols),
    )


def tau_batch(V: np.ndarray, ts: TailShape) -> np.ndarray:
    """Apply ``tau`` to every row of a reading-order batch of fillings of ``mu``."""
    if ts.n == 1 or ts.l == 0:
        return V
    lay = _layout(ts)
    W = V.copy()
    k, top = ts.k, len(ts.mu)

    def swap(row: int, mask: np.ndarray) -> None:
        lc, rc = lay.left[row - 1], lay.right[row - 1]
        x = W[mask, lc].copy()
        W[mask, lc] = W[mask, rc]
        W[mask, rc] = x

    active = xAx_batch(W[:, lay.left[k]], W[:, lay.right[k]], W[:, lay.left[k - 1]])
    swap(k + 1, active)
    for i in range(k + 1, top):
        a, b = W[:, lay.left[i]], W[:, lay.right[i]]
        A, B = W[:, lay.left[i - 1]], W[:, lay.right[i - 1]]
        active &= xXxX_batch(a, b, A, B)
        swap(i + 1, active)
    return W


def _split_stats(V: np.ndarray, lay: _Layout) -> tuple[np.ndarray, np.ndarray]:
    bm, bi = lay.body.maj_inv(V)
    tm, ti = lay.tail.maj_inv(V)
    return bm + tm, bi + ti


def _sorted_rows(V: np.ndarray) -> np.ndarray:
    return np.sort(V, axis=1)


# -- verifiers --------------------------------------------------------------


def _blocks(ts: TailShape, m: int, max_states: int) -> list[tuple[TailShape, int, tuple[int, ...]]]:
    if ts.l < 1:
        raise ValueError("verification needs a tail of height l >= 1")
    if m < 1:
        raise ValueError("alphabet size must be positive")
    ncells = sum(ts.mu)
    check_budget(m, ncells, max_states)
    return [(ts, m, p) for p in odometer_prefixes(m, ncells)]


def _first_failure(results) -> tuple[int, list[int] | None]:
    failures, first = 0, None
    for count, word in results:
        failures += count
        if first is None and word is not None:
            first = word
    return failures, first


def _involution_block(job) -> tuple[int, list[int] | None]:
    ts, m, prefix = job
    V = odometer_block(m, sum(ts.mu), prefix)
    W = tau_batch(V, ts)
    bad = np.any(tau_batch(W, ts) != V, axis=1)
    bad |= np.any(_sorted_rows(W) != _sorted_rows(V), axis=1)
    idx = np.flatnonzero(bad)
    return int(idx.size), (V[idx[0]].tolist() if idx.size else None)


def verify_involution(ts: TailShape, m: int, *, workers: int = 1,
                      max_states: int = DEFAULT_MAX_STATES) -> Verdict:
    """``tau(tau(T)) == T`` and ``tau`` keeps the evaluation, for every filling with entries ``<= m``."""
    jobs = _blocks(ts, m, max_states)
    failures, word = _first_failure(ordered_map(_involution_block, jobs, workers))
    verdict = Verdict("verify-involution", {**ts.params(), "vars": m},
                      checked=m ** sum(ts.mu), failures=failures)
    if word is not None:
        T = Filling.from_reading_word(ts.mu, word)
        U = tau(T, ts)
        verdict.counterexample = [
            f"  T = {T}",
            f"  tau(T) = {U}",
            f"  tau(tau(T)) = {tau(U, ts)}",
            f"  evaluation(T) = {fmt_tuple(evaluation(T, m))} evaluation(tau(T)) = {fmt_tuple(evaluation(U, m))}",
        ]
    return verdict


def _theorem_block(job) -> tuple[int, list[int] | None]:
    ts, m, prefix = job
    lay = _layout(ts)
    V = odometer_block(m, sum(ts.mu), prefix)
    tm, ti = lay.mu.maj_inv(tau_batch(V, ts))
    sm, si = _split_stats(V, lay)
    bad = (ti != si) | ((tm - sm) % ts.l != 0)
    idx = np.flatnonzero(bad)
    return int(idx.size), (V[idx[0]].tolist() if idx.size else None)


def statistics_trace(T: Filling, ts: TailShape) -> list[str]:
    """Human-readable statistics of ``tau(T)`` and ``pi_star(T)``."""
    U = tau(T, ts)
    S = pi_star(T, ts)
    sm, si = stats_of_split(S)
    return [
        f"  T = {T}",
        f"  tau(T) = {U}  maj = {maj(U)}  inv = {inv(U)}",
        f"  pi*(T) = ({S.body}) x ({S.tail})  maj = {maj(S.body)} + {maj(S.tail)} = {sm}"
        f"  inv = {inv(S.body)} + {inv(S.tail)} = {si}",
        f"  maj difference = {maj(U) - sm} (mod {ts.l}: {(maj(U) - sm) % ts.l})",
    ]


def verify_theorem(ts: TailShape, m: int, *, workers: int = 1,
                   max_states: int = DEFAULT_MAX_STATES) -> Verdict:
    """Every filling: ``inv(tau(T)) == inv(pi*(T))`` and ``maj(tau(T)) == maj(pi*(T)) (mod l)``."""
    jobs = _blocks(ts, m, max_states)
    failures, word = _first_failure(ordered_map(_theorem_block, jobs, workers))
    verdict = Verdict("verify-bijection", {**ts.params(), "vars": m},
                      checked=m ** sum(ts.mu), failures=failures)
    if word is not None:
        verdict.counterexample = statistics_trace(Filling.from_reading_word(ts.mu, word), ts)
    return verdict


# -- lemma checks on two-row fillings -----------------------------------------


def _two_rows(upper: tuple[int, ...], lower: tuple[int, ...]) -> Filling:
    return Filling((lower, upper))


def _inv2(T: Filling) -> int:
    return len(inv_sets(T, 2)[0])


def _stable_lower_swap(a: int, b: int, A: int, B: int) -> bool:
    """One of the four orderings under which swapping the lower row changes no set."""
    lo, hi = min(A, B), max(A, B)
    return (
        max(a, b) <= lo
        or (a <= lo and hi < b)
        or hi < min(a, b)
        or (b <= lo and hi < a)
    )


def _counting_lower_swap(a: int, b: int, A: int, B: int) -> bool:
    """The two orderings under which swapping the lower row keeps only counts."""
    return (A < min(a, b) and max(a, b) <= B) or (B < min(a, b) and max(a, b) <= A)


def _row_sets(T: Filling) -> tuple[set, set, set]:
    return des_rows(T, 2), inv_sets(T, 2)[1], inv_sets(T, 2)[0]


def verify_lemmas(max_entry: int) -> Verdict:
    """Exhaustively check the two-row lemmas behind ``tau``.

    Families, each counted separately in ``details``:

    L1  xAx holds: ``|Inv_2(T)| == inv_{2,1}(T')`` with the upper row swapped.
    L2  xAx fails: ``|Inv_2(T)| == inv_{2,1}(T)``.
    L3  stable orderings: swapping the lower row keeps ``Des_{2,1}``,
        ``Inv_{2,1}`` and ``Inv_2``.
    L4  counting orderings: swapping the lower row keeps ``|Des_{2,1}|`` and
        ``inv_{2,1}``.
    L5  xXxX holds: swapping both rows keeps ``|Des_{2,1}|`` and ``inv_{2,1}``.
    L6  ``A != B``: xXxX or an L3/L4 ordering holds.

    L1 and L2 run over a lower row of width 2 and of width 3, since the
    entries right of ``A`` play no part in the condition.
    """
    if max_entry < 2:
        raise ValueError("max_entry must be at least 2")
    r = range(1, max_entry + 1)
    counts = {f"L{n}": [0, 0] for n in range(1, 7)}  # [checked, failed]
    first: list[str] | None = None

    def record(name: str, ok: bool, what: str) -> None:
        nonlocal first
        counts[name][0] += 1
        if not ok:
            counts[name][1] += 1
            if first is None:
                first = [f"  {name} fails on {what}"]

    for a, b, A in product(r, repeat=3):
        for rest in [(x,) for x in r] + [(x, y) for x in r for y in r]:
            T = _two_rows((a, b), (A,) + rest)
            what = f"{T}"
            if cond_xAx(a, b, A):
                Tp = _two_rows((b, a), (A,) + rest)
                record("L1", _inv2(T) == inv_rows(Tp, 2), what)
            else:
                record("L2", _inv2(T) == inv_rows(T, 2), what)

    for a, b, A, B in product(r, repeat=4):
        T = _two_rows((a, b), (A, B))
        lower = _two_rows((a, b), (B, A))
        both = _two_rows((b, a), (B, A))
        what = f"{T}"
        if _stable_lower_swap(a, b, A, B):
            record("L3", _row_sets(T) == _row_sets(lower), what)
        if _counting_lower_swap(a, b, A, B):
            record("L4", len(des_rows(T, 2)) == len(des_rows(lower, 2))
                   and inv_rows(T, 2) == inv_rows(lower, 2), what)
        if cond_xXxX(a, b, A, B):
            record("L5", len(des_rows(T, 2)) == len(des_rows(both, 2))
                   and inv_rows(T, 2) == inv_rows(both, 2), what)
        if A != B:
            record("L6", cond_xXxX(a, b, A, B) or _stable_lower_swap(a, b, A, B)
                   or _counting_lower_swap(a, b, A, B), what)

    return Verdict(
        "verify-lemmas",
        {"max_entry": max_entry},
        checked=sum(c for c, _ in counts.values()),
        failures=sum(f for _, f in counts.values()),
        counterexample=first,
        details={name: f"{c - f}/{c}" for name, (c, f) in counts.items()},
    )


# -- the key lemma, replayed step by step -------------------------------------


def _body_tail_column_descents(T: Filling, ts: TailShape) -> int:
    """Body descents in the columns that continue into the tail."""
    return sum(1 for (i, j) in descents(T) if i <= ts.k and j <= ts.n)


def key_lemma_failures(T: Filling, ts: TailShape) -> list[str]:
    """Replay ``tau`` on ``T`` and return every broken step identity.

    Once rows ``i`` and ``i + 1`` have both been swapped because of xXxX,
    ``maj_{i+1,i}`` and ``inv_{i+1,i}`` must equal their values in ``T``; so
    must those of the first row left unswapped, above the last swap. The
    boundary swap must satisfy ``|Inv_{k+1}(T)| == inv_{k+1,k}(tau(T))``
    (and ``inv_{k+1,k}`` is unchanged with no swap). At the end
    ``maj(tau(T))`` must equal ``maj(pi*(T)) + l * (|Des_{k+1,k}(tau(T))| + d)``
    where ``d`` counts body descents in the columns the tail sits on (zero
    for one body row), and ``inv(tau(T)) == inv(pi*(T))``.
    """
    problems: list[str] = []
    trace = tau_trace(T, ts)
    k = ts.k
    top = len(ts.mu)

    def compare(current: Filling, row: int, label: str) -> None:
        for name, stat in (("maj", maj_rows), ("inv", inv_rows)):
            if stat(T, row) != stat(current, row):
                problems.append(
                    f"{label} at row {row}: {name}_{row},{row - 1} is {stat(T, row)} in T, "
                    f"{stat(current, row)} after"
                )

    for step, after in enumerate(trace[1:]):
        row = k + 1 + step
        if step == 0:
            same_row = len(inv_sets(T, row)[0])
            if same_row != inv_rows(after, row):
                problems.append(f"boundary swap: |Inv_{row}| = {same_row} but inv_{row},{k} = {inv_rows(after, row)}")
        else:
            compare(after, row, "swap")
    if len(trace) > 1 and k + len(trace) <= top:
        compare(trace[-1], k + len(trace), "stop")
    U = trace[-1]
    if len(trace) == 1 and k + 1 <= top:
        if ts.n == 1:
            if arm_rows(T, k + 1) or att_row_below(T.shape, k + 1):
                problems.append("width-1 tail: boundary row has attacking pairs or arms")
        elif len(inv_sets(T, k + 1)[0]) != inv_rows(T, k + 1):
            problems.append(f"no swap: |Inv_{k + 1}| != inv_{k + 1},{k}")
    sm, si = stats_of_split(pi_star(T, ts))
    expected = sm + ts.l * (len(des_rows(U, k + 1)) + _body_tail_column_descents(T, ts))
    if maj(U) != expected:
        problems.append(f"maj(tau(T)) = {maj(U)} but maj(pi*(T)) + l*(...) = {expected}")
    if inv(U) != si:
        problems.append(f"inv(tau(T)) = {inv(U)} but inv(pi*(T)) = {si}")
    return problems


def _key_lemma_block(job) -> tuple[int, list[int] | None]:
    ts, m, prefix = job
    free = sum(ts.mu) - len(prefix)
    failures, first = 0, None
    for rest in product(range(1, m + 1), repeat=free):
        word = prefix + rest
        if key_lemma_failures(Filling.from_reading_word(ts.mu, word), ts):
            failures += 1
            if first is None:
                first = list(word)
    return failures, first


def verify_key_lemma(ts: TailShape, m: int, *, workers: int = 1,
                     max_states: int = DEFAULT_MAX_STATES) -> Verdict:
    """Run :func:`key_lemma_failures` on every filling with entries ``<= m``."""
    if ts.n != 2:
        raise ValueError("the key lemma concerns tails of width 2")
    jobs = _blocks(ts, m, max_states)
    failures, word = _first_failure(ordered_map(_key_lemma_block, jobs, workers))
    verdict = Verdict("verify-key-lemma", {**ts.params(), "vars": m},
                      checked=m ** sum(ts.mu), failures=failures)
    if word is not None:
        T = Filling.from_reading_word(ts.mu, word)
        verdict.counterexample = [f"  T = {T}"] + [f"  {p}" for p in key_lemma_failures(T, ts)]
    return verdict
